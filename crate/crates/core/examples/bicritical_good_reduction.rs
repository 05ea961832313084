//! Checks, for each prime below a bound, that the bicritical family of
//! degree d has a post-critically finite member with good reduction there.
//!
//!     cargo run --example bicritical_good_reduction -- 10 30

use dynbelyi::exact::primes_below;
use dynbelyi::poly::format_rational;
use dynbelyi::reduction::{bicritical_parameter_polynomial, verify_bicritical_good_reduction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(Ok(10), |s| s.parse())?;
    let bound: u64 = args.get(1).map_or(Ok(30), |s| s.parse())?;

    println!("g(a) = {}", bicritical_parameter_polynomial(d));
    for p in primes_below(bound + 1) {
        let r = verify_bicritical_good_reduction(d, p)?;
        let vertices: Vec<String> = r
            .polygon
            .vertices()
            .iter()
            .map(|v| format!("({},{})", v.index, format_rational(&v.valuation)))
            .collect();
        println!(
            "p = {p:>3}  m = {}  v(a) = {:>6}  v(beta) = {:>6}  ok = {}  vertices {}",
            r.m,
            format_rational(&r.parameter_valuation),
            format_rational(&r.v_beta),
            r.shape_ok,
            vertices.join(" ")
        );
    }
    Ok(())
}
