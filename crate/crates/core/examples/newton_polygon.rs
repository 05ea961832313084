//! Newton polygon of a polynomial at a prime and the root valuations it
//! certifies.
//!
//!     cargo run --example newton_polygon -- "3z^4 + 12z^3 + 16z^2 + (64/9)z + 1" 3

use dynbelyi::padic::newton_polygon;
use dynbelyi::poly::{format_rational, Polynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let f: Polynomial = args
        .first()
        .map_or("3z^4 + 12z^3 + 16z^2 + (64/9)z + 1", String::as_str)
        .parse()?;
    let p: u64 = args.get(1).map_or(Ok(3), |s| s.parse())?;

    let np = newton_polygon(&f, p)?;
    println!("f = {f}, p = {p}");
    for v in np.vertices() {
        println!("vertex ({}, {})", v.index, format_rational(&v.valuation));
    }
    for (val, mult) in np.root_valuations() {
        println!("{mult} root(s) of valuation {}", format_rational(&val));
    }
    Ok(())
}
