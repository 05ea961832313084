//! Reduction type of `B_{d,k}` at a prime, with the valuations of the monic
//! 0-fixing conjugate that decide it.
//!
//!     cargo run --example reduction_at_prime -- 6 2 2

use dynbelyi::belyi::generate;
use dynbelyi::poly::format_rational;
use dynbelyi::reduction::potential_good_reduction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: u64| args.get(i).map_or(Ok(default), |s| s.parse::<u64>());
    let (d, k, p) = (arg(0, 6)? as usize, arg(1, 2)? as usize, arg(2, 2)?);

    let b = generate(d, k)?;
    let report = potential_good_reduction(&b, p)?;
    println!("B_{{{d},{k}}} = {b}");
    println!("p = {p}, v(beta) = {}", format_rational(&report.v_beta));
    for e in &report.entries {
        println!("  z^{:<4} {}", e.exponent, format_rational(&e.valuation));
    }
    println!("verdict: {:?}", report.verdict);
    if let Some(w) = report.witness {
        println!("negative entry at z^{}", w.exponent);
    }
    Ok(())
}
