//! Height sweep over several k and degrees, written as CSV to stdout.
//!
//!     cargo run --release --example sweep_heights > sweep.csv

use dynbelyi::heights::{sweep_grid, write_sweep_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ks = [1, 2, 3, 4];
    let ds = [100, 300, 1_000, 3_000, 10_000];
    let rows = sweep_grid(&ks, &ds, None)?;
    write_sweep_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}
