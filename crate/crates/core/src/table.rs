//! Witness tables: for each prime `p`, the decomposition `d = p^n l`,
//! `l = p q + r`, and the Belyi polynomial `B_{d, p^n r}` with persistent bad
//! reduction at `p`.
//!
//! [`published_degree18`] also carries the degree-18 rows as they were
//! printed, so the regenerated coefficients can be compared against them.
//! Two printed coefficients are wrong; they are reported as [`Erratum`]s.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::belyi::BelyiPoly;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{integer_json, Polynomial};
use crate::reduction::{persistent_bad_witness, ClassifierResult, ReductionReport};

pub const DEGREE18_PRIMES: [u64; 6] = [2, 5, 7, 11, 13, 17];
pub const DEGREE18_K: [usize; 6] = [2, 3, 4, 7, 5, 1];

const DEGREE18_PRINTED: [&str; 6] = [
    "136z^18 - 288z^17 + 153z^16",
    "-680z^18 + 2160z^17 - 2295z^16 + 816z^15",
    "2380z^18 - 10080z^17 + 16065z^16 - 11424z^15 + 3060z^14",
    "-1144z^18 + 144144z^17 - 459459z^16 + 816816z^15 - 875160z^14 + 565488z^13 - 204204z^12 + 31824z^11",
    "-6188z^18 + 32760z^17 - 68615z^16 + 74256z^15 - 39780z^14 + 8568z^13",
    "-17z^18 + 18z^17",
];

#[derive(Clone, Debug)]
pub struct WitnessRow {
    pub class: ClassifierResult,
    pub polynomial: BelyiPoly,
    pub report: ReductionReport,
}

impl WitnessRow {
    pub fn p(&self) -> u64 {
        self.class.p
    }

    pub fn k(&self) -> usize {
        self.polynomial.k()
    }
}

/// A printed coefficient that disagrees with the regenerated one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub p: u64,
    pub exponent: usize,
    #[serde(with = "integer_json")]
    pub printed: BigInt,
    #[serde(with = "integer_json")]
    pub generated: BigInt,
    /// Coefficient sum of the printed row, which should be `B(1) = 1`.
    #[serde(with = "integer_json")]
    pub printed_value_at_one: BigInt,
}

/// One witness row per prime. Fails if some prime admits no witness.
pub fn witness_table(d: usize, primes: &[u64]) -> Result<Vec<WitnessRow>> {
    primes
        .iter()
        .map(|&p| {
            let class = crate::reduction::classify_persistent_bad(d, p)?;
            let (polynomial, report) = persistent_bad_witness(d, p)?;
            Ok(WitnessRow {
                class,
                polynomial,
                report,
            })
        })
        .collect()
}

/// The degree-18 rows as printed, keyed by prime.
pub fn published_degree18() -> Vec<(u64, Polynomial)> {
    DEGREE18_PRIMES
        .iter()
        .zip(DEGREE18_PRINTED)
        .map(|(&p, s)| (p, s.parse().expect("printed row parses")))
        .collect()
}

/// Compares each regenerated row against the printed one.
pub fn compare_with_printed(rows: &[WitnessRow], printed: &[(u64, Polynomial)]) -> Result<Vec<Erratum>> {
    let mut errata = Vec::new();
    for row in rows {
        let Some((_, book)) = printed.iter().find(|(p, _)| *p == row.p()) else {
            continue;
        };
        let ours = row.polynomial.poly();
        if book.degree() != ours.degree() || book.order_at_zero() != ours.order_at_zero() {
            return Err(Error::Assertion(format!(
                "printed row for p = {} has a different shape than B_{{{},{}}}",
                row.p(),
                row.polynomial.d(),
                row.k()
            )));
        }
        let value_at_one: BigInt = book.terms().map(|(_, c)| c.to_integer()).sum();
        for (e, c) in ours.terms() {
            let printed = book.coeff(e);
            if printed != *c {
                errata.push(Erratum {
                    p: row.p(),
                    exponent: e,
                    printed: printed.to_integer(),
                    generated: c.to_integer(),
                    printed_value_at_one: value_at_one.clone(),
                });
            }
        }
    }
    Ok(errata)
}

/// Fixed-width text rendering with columns `p n l r k B_{d,k}`, followed by
/// one line per erratum. Byte-stable: only integers are printed.
pub fn render_text(rows: &[WitnessRow], errata: &[Erratum]) -> String {
    let mut out = String::new();
    let d = rows.first().map_or(0, |r| r.polynomial.d());
    let _ = writeln!(out, "{:>3} {:>2} {:>4} {:>3} {:>3}  B_{{{d},k}}", "p", "n", "l", "r", "k");
    for row in rows {
        let c = &row.class;
        let _ = writeln!(
            out,
            "{:>3} {:>2} {:>4} {:>3} {:>3}  {}",
            c.p,
            c.n,
            c.l,
            c.r,
            row.k(),
            row.polynomial
        );
    }
    for e in errata {
        let _ = writeln!(
            out,
            "erratum p={} z^{}: printed {}, generated {} (printed row sums to {})",
            e.p, e.exponent, e.printed, e.generated, e.printed_value_at_one
        );
    }
    out
}

/// Regenerates the degree-18 table, compares it to the printed rows and
/// renders both.
pub fn degree18_table() -> Result<(Vec<WitnessRow>, Vec<Erratum>, String)> {
    let rows = witness_table(18, &DEGREE18_PRIMES)?;
    for (row, &k) in rows.iter().zip(&DEGREE18_K) {
        if row.k() != k {
            return Err(Error::Assertion(format!(
                "p = {}: witness k = {}, expected {k}",
                row.p(),
                row.k()
            )));
        }
        if !row.polynomial.poly().evaluate(&Rational::one()).is_one() {
            return Err(Error::Assertion(format!("B_{{18,{k}}}(1) != 1")));
        }
    }
    let errata = compare_with_printed(&rows, &published_degree18())?;
    let text = render_text(&rows, &errata);
    Ok((rows, errata, text))
}
