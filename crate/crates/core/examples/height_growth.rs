//! Heights of `B_{d,k}` for fixed k as d grows, against `(log d)/d` and
//! the binomial lower bound.
//!
//!     cargo run --release --example height_growth -- 3

use dynbelyi::heights::height_belyi;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    println!("{:>7} {:>14} {:>12} {:>12} {:>26}", "d", "height", "/binomial", "/(log d)/d", "monic conjugate in");
    for d in [10usize, 30, 100, 300, 1_000, 3_000, 10_000, 100_000] {
        if d < k + 2 {
            continue;
        }
        let r = height_belyi(d, k, None)?;
        println!(
            "{d:>7} {:>14.8e} {:>12.8} {:>12.8}   [{:.4e}, {:.4e}]",
            r.height, r.ratio_binom, r.ratio_logd, r.conjugate_interval.0, r.conjugate_interval.1
        );
    }
    Ok(())
}
