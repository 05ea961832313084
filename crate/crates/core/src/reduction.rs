//! Good, potential good and persistent bad reduction at a prime.
//!
//! A polynomial has potential good reduction at `p` exactly when its monic,
//! 0-fixing conjugate has good reduction. For `B_{d,k}` that conjugate is
//!
//! ```text
//! B^phi(z) = sum_i a_i / beta^{d-k+i-1} z^{d-k+i},   beta^{d-1} = a_k,
//! ```
//!
//! and the decision only depends on `v(beta) = v_p(a_k) / (d-1)`. `beta` itself
//! is never constructed, and neither its sign nor the choice among the `d - 1`
//! roots affects anything computed here.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::belyi::{generate, BelyiPoly};
use crate::error::{Error, Result};
use crate::exact::{
    binomial, check_prime, prime_factors, primes_below, vp_binomial_kummer, vp_int, vp_rat,
    Rational,
};
use crate::padic::{newton_polygon, NewtonPolygon};
use crate::poly::{rational_str, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The polynomial as given (integer coefficients, content 1) reduces well.
    GoodReduction,
    /// Some conjugate reduces well, the given coordinates do not.
    PotentialGoodReduction,
    /// No conjugate reduces well.
    PersistentBadReduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateEntry {
    pub exponent: usize,
    #[serde(with = "rational_str")]
    pub valuation: Rational,
}

/// Valuations of the coefficients of the monic 0-fixing conjugate of `B_{d,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedConjugateValuations {
    pub p: u64,
    pub d: usize,
    pub k: usize,
    pub v_beta: Rational,
    pub entries: Vec<ConjugateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub verdict: Verdict,
    pub p: u64,
    pub d: usize,
    pub k: usize,
    #[serde(with = "rational_str")]
    pub v_beta: Rational,
    pub entries: Vec<ConjugateEntry>,
    pub witness: Option<ConjugateEntry>,
}

impl ReductionReport {
    pub fn conjugate_valuations(&self) -> NormalizedConjugateValuations {
        NormalizedConjugateValuations {
            p: self.p,
            d: self.d,
            k: self.k,
            v_beta: self.v_beta.clone(),
            entries: self.entries.clone(),
        }
    }

    pub fn is_persistent_bad(&self) -> bool {
        self.verdict == Verdict::PersistentBadReduction
    }
}

/// Good reduction of a polynomial already in normalized form: p-integral
/// coefficients, at least one a p-adic unit. True iff the leading coefficient
/// is a unit.
pub fn good_reduction(f: &Polynomial, p: u64) -> Result<bool> {
    check_prime(p)?;
    let lead = f.leading_coefficient().ok_or(Error::ZeroPolynomial)?;
    let vals = f
        .terms()
        .map(|(_, c)| vp_rat(c, p))
        .collect::<Result<Vec<_>>>()?;
    if vals.iter().any(|&v| v < 0) || !vals.contains(&0) {
        return Err(Error::Precondition(format!(
            "polynomial is not normalized at {p}: needs p-integral coefficients with a unit"
        )));
    }
    Ok(vp_rat(lead, p)? == 0)
}

pub fn normalized_conjugate_valuations(b: &BelyiPoly, p: u64) -> Result<NormalizedConjugateValuations> {
    check_prime(p)?;
    let (d, k) = (b.d(), b.k());
    let v_lead = vp_int(&b.leading_coefficient(), p)?;
    let v_beta = Rational::new(v_lead.into(), (d - 1).into());
    let entries = (0..=k)
        .map(|i| {
            let exponent = d - k + i;
            let v_a = vp_int(&b.coefficient(i), p)?;
            let shift = &v_beta * Rational::from_integer((exponent - 1).into());
            Ok(ConjugateEntry {
                exponent,
                valuation: Rational::from_integer(v_a.into()) - shift,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalizedConjugateValuations {
        p,
        d,
        k,
        v_beta,
        entries,
    })
}

pub fn potential_good_reduction(b: &BelyiPoly, p: u64) -> Result<ReductionReport> {
    let conj = normalized_conjugate_valuations(b, p)?;
    // Least valuation wins; ties go to the lowest exponent.
    let witness = conj
        .entries
        .iter()
        .filter(|e| e.valuation.is_negative())
        .min_by(|a, b| a.valuation.cmp(&b.valuation).then(a.exponent.cmp(&b.exponent)))
        .cloned();
    let verdict = if witness.is_some() {
        Verdict::PersistentBadReduction
    } else if conj.v_beta.is_zero() {
        Verdict::GoodReduction
    } else {
        Verdict::PotentialGoodReduction
    };
    Ok(ReductionReport {
        verdict,
        p: conj.p,
        d: conj.d,
        k: conj.k,
        v_beta: conj.v_beta,
        entries: conj.entries,
        witness,
    })
}

/// Primes at which `B_{d,k}` has persistent bad reduction: the prime factors
/// of its leading coefficient `C(d-1, k)`.
///
/// The factor set is cross-checked against the per-prime valuation test on
/// every prime in the set and on every other prime below `min(d, 100)`.
pub fn persistent_bad_primes(b: &BelyiPoly) -> Result<BTreeSet<u64>> {
    let lead = b.leading_coefficient();
    let primes: BTreeSet<u64> = prime_factors(&lead)?
        .into_iter()
        .map(|p| p.to_u64().expect("prime factors of C(d-1,k) are below d"))
        .collect();
    let others = primes_below(b.d().min(100) as u64);
    for p in primes.iter().copied().chain(others) {
        let bad = potential_good_reduction(b, p)?.is_persistent_bad();
        if bad != primes.contains(&p) {
            return Err(Error::Assertion(format!(
                "B_{{{},{}}}: valuation test at {p} disagrees with the factorization of {lead}",
                b.d(),
                b.k()
            )));
        }
    }
    Ok(primes)
}

/// Decomposition `d = p^n l` with `p` not dividing `l`, `l = p q + r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierResult {
    pub d: usize,
    pub p: u64,
    /// Whether some post-critically finite polynomial of degree `d` has
    /// persistent bad reduction at `p`; holds iff `l > p`.
    pub possible: bool,
    pub n: u32,
    pub l: u64,
    pub q: u64,
    pub r: u64,
    /// `p^n r` when `possible`.
    pub witness_k: Option<usize>,
}

pub fn classify_persistent_bad(d: usize, p: u64) -> Result<ClassifierResult> {
    if d < 2 {
        return Err(Error::ParameterRange(format!("degree must be at least 2, got {d}")));
    }
    check_prime(p)?;
    let mut l = d as u64;
    let mut n = 0u32;
    let mut pn = 1u64;
    while l % p == 0 {
        l /= p;
        n += 1;
        pn *= p;
    }
    let (q, r) = (l / p, l % p);
    let possible = l > p;
    Ok(ClassifierResult {
        d,
        p,
        possible,
        n,
        l,
        q,
        r,
        witness_k: possible.then(|| (pn * r) as usize),
    })
}

/// The degree-`d` Belyi polynomial `B_{d, p^n r}` with persistent bad
/// reduction at `p`, together with its report.
///
/// Also checks the base-`p` carry structure behind the choice of `k`: no
/// carries adding `k` and `d - k`, at least one adding `k` and `d - k - 1`.
pub fn persistent_bad_witness(d: usize, p: u64) -> Result<(BelyiPoly, ReductionReport)> {
    let class = classify_persistent_bad(d, p)?;
    let Some(k) = class.witness_k else {
        return Err(Error::Precondition(format!(
            "no polynomial of degree {d} has persistent bad reduction at {p} (d = {p}^{} * {})",
            class.n, class.l
        )));
    };
    let (du, ku) = (d as u64, k as u64);
    if vp_binomial_kummer(du, ku, p) != 0 || vp_binomial_kummer(du - 1, ku, p) == 0 {
        return Err(Error::Assertion(format!(
            "carry structure of k = {k} in base {p} does not match d = {d}"
        )));
    }
    let b = generate(d, k)?;
    let report = potential_good_reduction(&b, p)?;
    if !report.is_persistent_bad() {
        return Err(Error::Assertion(format!(
            "B_{{{d},{k}}} does not have persistent bad reduction at {p}"
        )));
    }
    Ok((b, report))
}

/// `g(a) = (d-1) a (a + d/(d-1))^{d-1} + 1`, whose roots are the parameters
/// `a` making `a(-(d-1) z^d + d z^{d-1}) + d/(d-1)` post-critically finite
/// with both critical points landing on fixed points.
pub fn bicritical_parameter_polynomial(d: usize) -> Polynomial {
    let dm1 = Rational::from_integer((d - 1).into());
    let c = Rational::from_integer(d.into()) / &dm1;
    let mut terms = vec![(0usize, Rational::one())];
    let mut c_pow = Rational::one();
    // (d-1) a sum_j C(d-1, j) c^{d-1-j} a^j, built from j = d-1 down.
    for j in (0..d).rev() {
        let coeff = Rational::from_integer(binomial(d as u64 - 1, j as i64)) * &c_pow * &dm1;
        terms.push((j + 1, coeff));
        c_pow *= &c;
    }
    Polynomial::from_terms(terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicriticalReport {
    pub d: usize,
    pub p: u64,
    /// `v_p(d - 1)`.
    pub m: u64,
    pub polygon: NewtonPolygon,
    pub shape_ok: bool,
    /// Valuation of the chosen parameter root `a`.
    #[serde(with = "rational_str")]
    pub parameter_valuation: Rational,
    #[serde(with = "rational_str")]
    pub v_beta: Rational,
    /// Valuations of the coefficients of `z^d`, `z^{d-1}` and `z^0` in the
    /// monic conjugate `z^d - (d/(d-1)) beta z^{d-1} + (d/(d-1)) beta`.
    #[serde(with = "rational_vec")]
    pub conjugate_coefficient_valuations: Vec<Rational>,
}

/// Checks the good-reduction construction for the bicritical family at `p`.
///
/// If `p` does not divide `d - 1` every root of `g` is a unit. Otherwise the
/// polygon of `g` starts with the segment `(0,0) -> (1, -(d-2)m)`, giving one
/// root of valuation `(d-2)m` with all others negative; for that root
/// `v(beta) = m` and the nonleading coefficients of the monic conjugate are
/// units.
pub fn verify_bicritical_good_reduction(d: usize, p: u64) -> Result<BicriticalReport> {
    if d < 3 {
        return Err(Error::ParameterRange(format!("degree must be at least 3, got {d}")));
    }
    check_prime(p)?;
    let g = bicritical_parameter_polynomial(d);
    let polygon = newton_polygon(&g, p)?;
    let m = vp_int(&BigInt::from(d - 1), p)?;
    let zero = Rational::zero();
    let mq = Rational::from_integer(m.into());

    let (shape_ok, parameter_valuation) = if m == 0 {
        let units = polygon.segments().iter().all(|s| s.slope.is_zero());
        (units, zero.clone())
    } else {
        let low = -Rational::from_integer(((d - 2) as u64 * m).into());
        let verts = polygon.vertices();
        let starts_right = verts.len() >= 2
            && verts[0].index == 0
            && verts[0].valuation.is_zero()
            && verts[1].index == 1
            && verts[1].valuation == low;
        let lowest = verts.iter().all(|v| v.valuation >= low);
        let target = -low.clone();
        let one_root = polygon.count_roots(|v| *v == target) == 1;
        let others_negative =
            polygon.count_roots(|v| v.is_negative()) == d - 1;
        (starts_right && lowest && one_root && others_negative, target)
    };

    // v(beta) from beta^{d-1} = -a (d-1).
    let v_beta = (&parameter_valuation + &mq) / Rational::from_integer((d - 1).into());
    let ratio = Rational::new(d.into(), (d - 1).into());
    let v_ratio = Rational::from_integer(vp_rat(&ratio, p)?.into());
    let v_coeff = &v_ratio + &v_beta;
    let conjugate_coefficient_valuations = vec![zero.clone(), v_coeff.clone(), v_coeff.clone()];
    let conj_ok = if m == 0 { v_coeff >= zero } else { v_coeff.is_zero() };

    Ok(BicriticalReport {
        d,
        p,
        m,
        polygon,
        shape_ok: shape_ok && conj_ok,
        parameter_valuation,
        v_beta,
        conjugate_coefficient_valuations,
    })
}

mod rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(crate::poly::format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::poly::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Newton polygon counting stage for a monic `f` with `f(0) = 0` that has a
/// coefficient of negative valuation.
///
/// `r` is the slope of the rightmost segment of the polygon of `f(z) - z`, so
/// the largest fixed points have absolute value `p^r`. A post-critically
/// finite `f` cannot have a critical point larger than that.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcfObstructionDiagnostic {
    pub p: u64,
    /// No coefficient has negative valuation; nothing to check.
    pub trivial: bool,
    #[serde(with = "rational_str")]
    pub r: Rational,
    /// Fixed points of absolute value `p^r`.
    pub fixed_at_max: usize,
    /// Critical points of absolute value at least `p^r`.
    pub crit_at_max: usize,
    /// Critical points of absolute value strictly above `p^r`.
    pub crit_beyond_max: usize,
    /// False when this stage already rules out post-critical finiteness.
    pub necessary_condition_holds: bool,
}

pub fn pcf_obstruction_diagnostic(f: &Polynomial, p: u64) -> Result<PcfObstructionDiagnostic> {
    check_prime(p)?;
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    if !f.leading_coefficient().is_some_and(|c| c.is_one()) {
        return Err(Error::Precondition("polynomial must be monic".into()));
    }
    if !f.coeff(0).is_zero() {
        return Err(Error::Precondition("polynomial must fix 0".into()));
    }
    let mut negative = false;
    for (_, c) in f.terms() {
        negative |= vp_rat(c, p)? < 0;
    }
    if !negative {
        return Ok(PcfObstructionDiagnostic {
            p,
            trivial: true,
            r: Rational::zero(),
            fixed_at_max: 0,
            crit_at_max: 0,
            crit_beyond_max: 0,
            necessary_condition_holds: true,
        });
    }
    let fixed = f - &Polynomial::z();
    let fixed_np = newton_polygon(&fixed, p)?;
    let last = fixed_np
        .rightmost()
        .ok_or_else(|| Error::Precondition("f(z) - z has a single term".into()))?;
    let r = last.slope.clone();
    let crit_np = newton_polygon(&f.derivative(), p)?;
    let neg_r = -r.clone();
    let crit_at_max = crit_np.count_roots(|v| *v <= neg_r);
    let crit_beyond_max = crit_np.count_roots(|v| *v < neg_r);
    Ok(PcfObstructionDiagnostic {
        p,
        trivial: false,
        r,
        fixed_at_max: last.length,
        crit_at_max,
        crit_beyond_max,
        necessary_condition_holds: crit_beyond_max == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn good_reduction_examples() {
        let zd = Polynomial::monomial(q(1, 1), 7);
        assert_eq!(good_reduction(&zd, 2), Ok(true));
        assert_eq!(good_reduction(generate(18, 2).unwrap().poly(), 2), Ok(false));
        assert_eq!(good_reduction(generate(18, 1).unwrap().poly(), 2), Ok(true));
        let not_normal: Polynomial = "2z^2 + 4z".parse().unwrap();
        assert!(matches!(good_reduction(&not_normal, 2), Err(Error::Precondition(_))));
        let not_integral: Polynomial = "z^2 + (1/2)z".parse().unwrap();
        assert!(matches!(good_reduction(&not_integral, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn conjugate_valuations_b42_at_3() {
        let c = normalized_conjugate_valuations(&generate(4, 2).unwrap(), 3).unwrap();
        assert_eq!(c.v_beta, q(1, 3));
        let got: Vec<(usize, Rational)> =
            c.entries.iter().map(|e| (e.exponent, e.valuation.clone())).collect();
        assert_eq!(got, vec![(2, q(2, 3)), (3, q(-2, 3)), (4, q(0, 1))]);
    }

    #[test]
    fn conjugate_valuations_unit_leading() {
        let b = generate(18, 1).unwrap();
        let c = normalized_conjugate_valuations(&b, 2).unwrap();
        assert!(c.v_beta.is_zero());
        for (i, e) in c.entries.iter().enumerate() {
            let direct = vp_int(&b.coefficient(i), 2).unwrap();
            assert_eq!(e.valuation, Rational::from_integer(direct.into()));
        }
    }

    #[test]
    fn conjugate_valuations_b18_2_at_2() {
        let c = normalized_conjugate_valuations(&generate(18, 2).unwrap(), 2).unwrap();
        assert_eq!(c.v_beta, q(3, 17));
        let e16 = c.entries.iter().find(|e| e.exponent == 16).unwrap();
        assert_eq!(e16.valuation, q(-45, 17));
        assert_eq!(c.entries.last().unwrap().valuation, q(0, 1));
    }

    #[test]
    fn verdicts() {
        let r = potential_good_reduction(&generate(18, 2).unwrap(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::PersistentBadReduction);
        let r = potential_good_reduction(&generate(18, 1).unwrap(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::GoodReduction);
        assert_eq!(r.witness, None);
        let r = potential_good_reduction(&generate(4, 2).unwrap(), 3).unwrap();
        assert_eq!(r.verdict, Verdict::PersistentBadReduction);
        assert_eq!(r.witness, Some(ConjugateEntry { exponent: 3, valuation: q(-2, 3) }));
        assert!(potential_good_reduction(&generate(4, 2).unwrap(), 1).is_err());
    }

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn bad_prime_sets() {
        assert_eq!(persistent_bad_primes(&generate(18, 1).unwrap()), Ok(set(&[17])));
        assert_eq!(persistent_bad_primes(&generate(4, 2).unwrap()), Ok(set(&[3])));
        assert_eq!(persistent_bad_primes(&generate(18, 7).unwrap()), Ok(set(&[2, 11, 13, 17])));
    }

    #[test]
    fn classifier_examples() {
        assert!(!classify_persistent_bad(18, 3).unwrap().possible);
        let c = classify_persistent_bad(18, 2).unwrap();
        assert!(c.possible);
        assert_eq!((c.n, c.l, c.q, c.r, c.witness_k), (1, 9, 4, 1, Some(2)));
        assert!(!classify_persistent_bad(16, 2).unwrap().possible);
        assert_eq!(classify_persistent_bad(6, 2).unwrap().witness_k, Some(2));
        let c = classify_persistent_bad(5, 7).unwrap();
        assert!(!c.possible);
        assert_eq!(c.witness_k, None);
        assert!(matches!(classify_persistent_bad(1, 2), Err(Error::ParameterRange(_))));
        assert_eq!(classify_persistent_bad(10, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn witnesses() {
        let (b, r) = persistent_bad_witness(18, 17).unwrap();
        assert_eq!(b.to_string(), "-17z^18 + 18z^17");
        assert!(r.is_persistent_bad());
        let (b, _) = persistent_bad_witness(18, 5).unwrap();
        assert_eq!(b.to_string(), "-680z^18 + 2160z^17 - 2295z^16 + 816z^15");
        let (b, r) = persistent_bad_witness(6, 2).unwrap();
        assert_eq!(b.to_string(), "10z^6 - 24z^5 + 15z^4");
        assert_eq!(r.witness.unwrap().exponent, 4);
        assert!(matches!(persistent_bad_witness(18, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn bicritical_parameter_polynomial_d4() {
        let g = bicritical_parameter_polynomial(4);
        let expected: Polynomial = "3a^4 + 12a^3 + 16a^2 + (64/9)a + 1".replace('a', "z").parse().unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn bicritical_examples() {
        let rep = verify_bicritical_good_reduction(4, 3).unwrap();
        assert_eq!(rep.m, 1);
        let verts: Vec<(usize, Rational)> =
            rep.polygon.vertices().iter().map(|v| (v.index, v.valuation.clone())).collect();
        assert_eq!(verts, vec![(0, q(0, 1)), (1, q(-2, 1)), (4, q(1, 1))]);
        assert!(rep.shape_ok);
        assert_eq!(rep.v_beta, q(1, 1));

        let rep = verify_bicritical_good_reduction(5, 3).unwrap();
        assert_eq!(rep.m, 0);
        assert!(rep.polygon.root_valuations().iter().all(|(v, _)| v.is_zero()));
        assert!(rep.shape_ok);

        let rep = verify_bicritical_good_reduction(10, 3).unwrap();
        assert_eq!(rep.m, 2);
        assert!(rep.shape_ok);
        for p in primes_below(40) {
            assert!(verify_bicritical_good_reduction(10, p).unwrap().shape_ok);
        }
    }

    #[test]
    fn diagnostic_examples() {
        // z^2 + z/p at p = 5: r = 1, one fixed point of absolute value p.
        let f = Polynomial::from_terms([(2, q(1, 1)), (1, q(1, 5))]);
        let diag = pcf_obstruction_diagnostic(&f, 5).unwrap();
        assert_eq!(diag.r, q(1, 1));
        assert_eq!(diag.fixed_at_max, 1);
        assert!(!diag.trivial);

        let f = Polynomial::from_terms([(3, q(1, 1)), (2, q(-1, 3))]);
        let diag = pcf_obstruction_diagnostic(&f, 3).unwrap();
        assert!(diag.r > q(0, 1));
        assert_eq!(diag.crit_beyond_max, 1);
        assert!(!diag.necessary_condition_holds);

        let zd = Polynomial::monomial(q(1, 1), 5);
        let diag = pcf_obstruction_diagnostic(&zd, 2).unwrap();
        assert!(diag.trivial && diag.necessary_condition_holds);

        assert!(pcf_obstruction_diagnostic(&"2z^2".parse().unwrap(), 2).is_err());
        assert!(pcf_obstruction_diagnostic(&"z^2 + 1".parse().unwrap(), 2).is_err());
    }
}
