//! Roots and Mahler measure of an integer polynomial of content 1.
//!
//!     cargo run --example mahler_measure -- "3z^2 - 8z + 6"

use dynbelyi::heights::{cauchy_bounds, default_precision, find_roots, log_mahler_measure};
use dynbelyi::poly::Polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: Polynomial = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("3z^2 - 8z + 6")
        .parse()?;
    let (g, zeros) = f.strip_zero_root();
    let (lo, hi) = cauchy_bounds(&g)?;
    let roots = find_roots(&g, default_precision(&g))?;
    println!("f = {f}  ({zeros} roots at 0, remaining moduli in [{lo:.4}, {hi:.4}])");
    for ((re, im), m) in roots.to_f64().into_iter().zip(roots.moduli()) {
        println!("  {re:+.15} {im:+.15}i   |z| = {m:.15}");
    }
    println!("residual <= {:.3e}", roots.residual_bound());
    let log_m = log_mahler_measure(&f)?;
    println!("M(f) = {:.15}, log M(f) = {log_m:.15}", log_m.exp());
    Ok(())
}
