//! Newton polygon counting diagnostic: compares the largest fixed points of
//! a monic polynomial fixing 0 with its largest critical points.
//!
//!     cargo run --example pcf_diagnostic

use dynbelyi::poly::{format_rational, Polynomial};
use dynbelyi::reduction::pcf_obstruction_diagnostic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("z^2 + (1/3)z", 3),
        ("z^3 - (1/5)z^2", 5),
        ("z^4 - (1/2)z^3 + (1/8)z", 2),
        ("z^5 + 7z^2", 7),
    ];
    for (text, p) in cases {
        let f: Polynomial = text.parse()?;
        let d = pcf_obstruction_diagnostic(&f, p)?;
        println!(
            "{:<28} p = {p}  trivial = {:<5}  r = {:<4}  fixed {}  critical {} (beyond {})  passes = {}",
            f.to_string(),
            d.trivial,
            format_rational(&d.r),
            d.fixed_at_max,
            d.crit_at_max,
            d.crit_beyond_max,
            d.necessary_condition_holds
        );
    }
    Ok(())
}
