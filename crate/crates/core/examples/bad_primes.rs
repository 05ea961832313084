//! Primes of persistent bad reduction for each `B_{d,k}` of one degree.
//! They are exactly the prime factors of the leading coefficient `C(d-1,k)`.
//!
//!     cargo run --example bad_primes -- 18

use dynbelyi::belyi::family;
use dynbelyi::reduction::persistent_bad_primes;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map_or(Ok(18), |s| s.parse())?;
    for b in family(d)? {
        let primes = persistent_bad_primes(&b)?;
        println!("k = {:>3}  lead = {:>12}  bad at {:?}", b.k(), b.leading_coefficient(), primes);
    }
    Ok(())
}
