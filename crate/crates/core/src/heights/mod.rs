//! Mahler measures and heights of Belyi polynomials.
//!
//! For an integer polynomial of content 1 the height is `(1/deg) log M(f)`
//! with `M(f) = |c| prod_{|alpha| >= 1} |alpha|`. Since
//! `prod |alpha| = |f(0) / c|` once the zero roots are stripped, the measure is
//! computed as `|f(0)| / prod_{|alpha| < 1} |alpha|`, which is exact whenever
//! no root lies inside the unit disk.
//!
//! Only `h(B_{d,k})` is computed as a number. For the monic conjugate
//! `B^phi_{d,k}` the report carries the interval
//! `h(B_{d,k}) -+ ((k-1)/d) log 2` instead.

pub mod mp;
mod roots;

use std::io::Write;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belyi::generate;
use crate::error::{Error, Result};
use crate::exact::{binomial, bit_length, ln_abs, Rational};
use crate::poly::Polynomial;

pub use roots::{default_precision, find_roots, RootSet};

/// Environment variable overriding the default working precision in bits.
pub const PRECISION_ENV: &str = "DYNBELYI_PRECISION_BITS";

/// Roots this close to the unit circle count as modulus exactly 1.
pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-20;

/// `(lower, upper)` bounds on the moduli of the roots of `f`, `f(0) != 0`.
///
/// `upper = 1 + max_{i<n} |c_i / c_n|` is Cauchy's bound; `lower` is the
/// reciprocal of the same bound for the reversed polynomial.
pub fn cauchy_bounds(f: &Polynomial) -> Result<(f64, f64)> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let c0 = f.coeff(0);
    if c0.is_zero() || n == 0 {
        return Err(Error::Precondition(
            "Cauchy bounds need f(0) != 0 and degree >= 1".into(),
        ));
    }
    let cn = f.coeff(n);
    let max_ratio = |den: &Rational, skip: usize| {
        f.terms()
            .filter(|&(e, _)| e != skip)
            .map(|(_, c)| ratio_f64(&(c / den).abs()))
            .fold(0.0f64, f64::max)
    };
    let upper = 1.0 + max_ratio(&cn, n);
    let lower = 1.0 / (1.0 + max_ratio(&c0, 0));
    Ok((lower, upper))
}

fn ratio_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        (ln_abs(x.numer()) - ln_abs(x.denom())).exp()
    })
}

fn check_mahler_input(f: &Polynomial) -> Result<(Polynomial, usize)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.content()?.is_one() {
        return Err(Error::Precondition(
            "Mahler measure height identity needs content 1".into(),
        ));
    }
    Ok(f.strip_zero_root())
}

/// Splits roots by modulus: those strictly inside the unit disk beyond the
/// tolerance, and the rest.
fn inside_unit_disk(roots: &RootSet) -> Vec<bool> {
    let bits = roots.working_precision_bits();
    let cutoff = mp::from_f64(1.0 - 2.0 * UNIT_CIRCLE_TOLERANCE, bits);
    (0..roots.len())
        .map(|i| roots.modulus_sqr(i) < cutoff)
        .collect()
}

/// `log M(g)` for `g(0) != 0`, as `log|g(0)| - sum_{|alpha|<1} log|alpha|`.
pub fn log_mahler_from_roots(g: &Polynomial, roots: &RootSet) -> f64 {
    let c0 = g.coeff(0);
    let inside = inside_unit_disk(roots);
    let base = ln_abs(c0.numer()) - ln_abs(c0.denom());
    base - inside
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| mp::ln_f64(&roots.modulus_sqr(i)) / 2.0)
        .sum::<f64>()
}

/// `log M(g)` straight from the definition `log|c| + sum_{|alpha|>=1} log|alpha|`.
pub fn log_mahler_direct(g: &Polynomial, roots: &RootSet) -> f64 {
    let lead = g.leading_coefficient().expect("nonzero");
    let inside = inside_unit_disk(roots);
    let base = ln_abs(lead.numer()) - ln_abs(lead.denom());
    base + inside
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(i, _)| mp::ln_f64(&roots.modulus_sqr(i)) / 2.0)
        .sum::<f64>()
}

/// `log M(f)` for an integer polynomial of content 1.
pub fn log_mahler_measure(f: &Polynomial) -> Result<f64> {
    let (g, _) = check_mahler_input(f)?;
    if g.degree() == Some(0) {
        return Ok(ln_abs(&g.coeff(0).to_integer()));
    }
    let roots = find_roots(&g, default_precision(&g))?;
    Ok(log_mahler_from_roots(&g, &roots))
}

/// `M(f)` for an integer polynomial of content 1; may be `inf` when the
/// measure exceeds the `f64` range, use [`log_mahler_measure`] then.
pub fn mahler_measure(f: &Polynomial) -> Result<f64> {
    log_mahler_measure(f).map(f64::exp)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    pub d: usize,
    pub k: usize,
    /// `M(F_{d,k})`; `inf` beyond the `f64` range.
    pub mahler: f64,
    pub log_mahler: f64,
    /// `h(B_{d,k}) = (1/d) log M(F_{d,k})`.
    pub height: f64,
    /// `h / ((1/d) log C(d,k))`.
    pub ratio_binom: f64,
    /// `h / ((log d) / d)`.
    pub ratio_logd: f64,
    /// Interval containing `h(B^phi_{d,k})` for the monic 0-fixing conjugate.
    pub conjugate_interval: (f64, f64),
    /// `prod |alpha_i|` over the roots of `F_{d,k}`; equals `d / (d-k)`.
    pub root_modulus_product: f64,
    /// Smallest and largest root modulus.
    pub root_modulus_range: (f64, f64),
    pub residual_bound: f64,
    pub precision_bits: usize,
}

/// Default working precision for `F_{d,k}`: `max(128, bits(C(d,k)) + 64)`,
/// raised further by the largest coefficient and by `PRECISION_ENV`.
pub fn belyi_precision(d: usize, k: usize, f: &Polynomial) -> usize {
    let from_binom = 128usize.max(bit_length(&binomial(d as u64, k as i64)) as usize + 64);
    let from_env = std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    from_binom.max(default_precision(f)).max(from_env)
}

/// Height report for `B_{d,k}`. `precision_bits` can only raise the working
/// precision above [`belyi_precision`].
pub fn height_belyi(d: usize, k: usize, precision_bits: Option<usize>) -> Result<HeightReport> {
    let b = generate(d, k)?;
    let f = b.nonzero_root_factor();
    let bits = belyi_precision(d, k, &f).max(precision_bits.unwrap_or(0));
    let roots = find_roots(&f, bits)?;
    let log_mahler = log_mahler_from_roots(&f, &roots);
    let df = d as f64;
    let height = log_mahler / df;
    let log_binom = ln_abs(&binomial(d as u64, k as i64));
    let half_width = (k as f64 - 1.0) / df * std::f64::consts::LN_2;
    let moduli = roots.moduli();
    let range = moduli
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &m| (lo.min(m), hi.max(m)));
    Ok(HeightReport {
        d,
        k,
        mahler: log_mahler.exp(),
        log_mahler,
        height,
        ratio_binom: log_mahler / log_binom,
        ratio_logd: log_mahler / df.ln(),
        conjugate_interval: (height - half_width, height + half_width),
        root_modulus_product: roots.modulus_product(),
        root_modulus_range: range,
        residual_bound: roots.residual_bound(),
        precision_bits: roots.working_precision_bits(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    pub k: usize,
    pub height: f64,
    pub ratio_binom: f64,
    pub ratio_logd: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
    /// Interval endpoints divided by `(log d) / d`.
    pub normalized_lo: f64,
    pub normalized_hi: f64,
    pub precision_bits: usize,
}

impl From<&HeightReport> for SweepRow {
    fn from(r: &HeightReport) -> Self {
        let unit = (r.d as f64).ln() / r.d as f64;
        Self {
            d: r.d,
            k: r.k,
            height: r.height,
            ratio_binom: r.ratio_binom,
            ratio_logd: r.ratio_logd,
            interval_lo: r.conjugate_interval.0,
            interval_hi: r.conjugate_interval.1,
            normalized_lo: r.conjugate_interval.0 / unit,
            normalized_hi: r.conjugate_interval.1 / unit,
            precision_bits: r.precision_bits,
        }
    }
}

/// One row per `d` in the given order (values below `k + 2` are skipped).
/// Rows are computed in parallel; the output order does not depend on it.
pub fn asymptotic_sweep(k: usize, d_values: &[usize], precision_bits: Option<usize>) -> Result<Vec<SweepRow>> {
    d_values
        .par_iter()
        .filter(|&&d| d >= k + 2)
        .map(|&d| height_belyi(d, k, precision_bits).map(|r| SweepRow::from(&r)))
        .collect()
}

/// Rows for every `(d, k)` pair, sorted by `d` then `k`.
pub fn sweep_grid(ks: &[usize], d_values: &[usize], precision_bits: Option<usize>) -> Result<Vec<SweepRow>> {
    let mut pairs: Vec<(usize, usize)> = d_values
        .iter()
        .flat_map(|&d| ks.iter().map(move |&k| (d, k)))
        .filter(|&(d, k)| k >= 1 && d >= k + 2)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
        .par_iter()
        .map(|&(d, k)| height_belyi(d, k, precision_bits).map(|r| SweepRow::from(&r)))
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "d,k,height,ratio_binom,ratio_logd,interval_lo,interval_hi,precision_bits";

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.d, r.k, r.height, r.ratio_binom, r.ratio_logd, r.interval_lo, r.interval_hi, r.precision_bits
        )?;
    }
    Ok(())
}

/// `|alpha| >= 2^-k` for every root of `F_{d,k}`: the reversed polynomial's
/// coefficient ratios `|a_i / a_0|` are below `C(k, i) <= 2^k`.
pub fn belyi_root_lower_bound(k: usize) -> f64 {
    2f64.powi(-(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn mahler_examples() {
        let zd = Polynomial::monomial(Rational::from_integer(1.into()), 6);
        assert_eq!(mahler_measure(&zd).unwrap(), 1.0);
        let f42: Polynomial = "3z^2 - 8z + 6".parse().unwrap();
        assert!(approx(mahler_measure(&f42).unwrap(), 6.0, 1e-14));
        for d in [3usize, 10, 57] {
            let f = generate(d, 1).unwrap().nonzero_root_factor();
            assert!(approx(mahler_measure(&f).unwrap(), d as f64, 1e-14));
        }
        let half: Polynomial = "2z - 1".parse().unwrap();
        assert!(approx(mahler_measure(&half).unwrap(), 2.0, 1e-14));
        assert!(mahler_measure(&"2z^2 + 4".parse().unwrap()).is_err());
    }

    #[test]
    fn both_mahler_routes_agree() {
        for (d, k) in [(18, 7), (30, 5), (12, 9), (100, 4)] {
            let f = generate(d, k).unwrap().nonzero_root_factor();
            let roots = find_roots(&f, default_precision(&f)).unwrap();
            let a = log_mahler_from_roots(&f, &roots);
            let b = log_mahler_direct(&f, &roots);
            assert!((a - b).abs() < 1e-12, "({d},{k}): {a} vs {b}");
        }
    }

    #[test]
    fn height_examples() {
        let r = height_belyi(4, 2, None).unwrap();
        assert!((r.height - 6f64.ln() / 4.0).abs() < 1e-14);
        assert!((r.height - 0.447_937).abs() < 5e-6);
        for d in [3usize, 7, 50, 999] {
            let r = height_belyi(d, 1, None).unwrap();
            let exact = (d as f64).ln() / d as f64;
            assert!((r.height - exact).abs() < 1e-15);
            assert!((r.ratio_logd - 1.0).abs() < 1e-12);
        }
        let r = height_belyi(18, 2, None).unwrap();
        let bound = 1.0 + 4.0 * std::f64::consts::LN_2 / (153f64).ln();
        assert!(r.ratio_binom >= 1.0 && r.ratio_binom <= bound);
    }

    #[test]
    fn cauchy_examples() {
        let f42: Polynomial = "3z^2 - 8z + 6".parse().unwrap();
        let (lo, hi) = cauchy_bounds(&f42).unwrap();
        assert!(lo <= 2f64.sqrt() && 2f64.sqrt() <= hi);
        let f = generate(40, 1).unwrap().nonzero_root_factor();
        let (lo, hi) = cauchy_bounds(&f).unwrap();
        assert!(lo <= 40.0 / 39.0 && 40.0 / 39.0 <= hi);
        let (lo, hi) = cauchy_bounds(&"z - 1".parse().unwrap()).unwrap();
        assert!(lo <= 1.0 && 1.0 <= hi);
        assert!(cauchy_bounds(&"z^2".parse().unwrap()).is_err());
    }

    #[test]
    fn sweep_keeps_order_and_csv_shape() {
        let rows = asymptotic_sweep(2, &[50, 4, 20, 3], None).unwrap();
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![50, 4, 20]);
        let grid = sweep_grid(&[2, 1], &[20, 5], None).unwrap();
        let keys: Vec<_> = grid.iter().map(|r| (r.d, r.k)).collect();
        assert_eq!(keys, vec![(5, 1), (5, 2), (20, 1), (20, 2)]);
        let mut buf = Vec::new();
        write_sweep_csv(&grid, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
        assert_eq!(lines.count(), 4);
    }
}
