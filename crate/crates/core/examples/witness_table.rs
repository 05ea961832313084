//! Regenerates the degree-18 witness table and compares it against the
//! printed coefficients.
//!
//!     cargo run --example witness_table

use dynbelyi::table::degree18_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (_, errata, text) = degree18_table()?;
    print!("{text}");
    println!("{} printed coefficients disagree with the closed form", errata.len());
    Ok(())
}
