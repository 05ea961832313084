//! For one degree, lists the primes at which some post-critically finite
//! polynomial can have persistent bad reduction, and the Belyi witness.
//!
//!     cargo run --example classify_degree -- 18

use dynbelyi::exact::primes_below;
use dynbelyi::reduction::{classify_persistent_bad, persistent_bad_witness};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map_or(Ok(18), |s| s.parse())?;
    println!("{:>4} {:>3} {:>5} {:>4} {:>4}  witness", "p", "n", "l", "r", "k");
    for p in primes_below(d as u64 + 1) {
        let c = classify_persistent_bad(d, p)?;
        let witness = if c.possible {
            persistent_bad_witness(d, p)?.0.to_string()
        } else {
            "none: every PCF polynomial has potential good reduction".to_string()
        };
        let k = c.witness_k.map_or("-".to_string(), |k| k.to_string());
        println!("{:>4} {:>3} {:>5} {:>4} {:>4}  {witness}", p, c.n, c.l, c.r, k);
    }
    Ok(())
}
