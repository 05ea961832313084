//! Prints every conservative Belyi polynomial of one degree, checks that 0
//! and 1 are fixed critical points, and pairs each with its mirror.
//!
//!     cargo run --example generate_belyi -- 8

use dynbelyi::belyi::{family, mirror, verify_conservative};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    for b in family(d)? {
        let check = verify_conservative(b.poly(), b.k());
        let m = mirror(&b)?;
        println!(
            "B_{{{d},{}}} = {b}\n    e0 = {}, e1 = {}, conservative = {}, mirror k = {}",
            b.k(),
            b.e0(),
            b.e1(),
            check.passed(),
            m.k()
        );
    }
    Ok(())
}
