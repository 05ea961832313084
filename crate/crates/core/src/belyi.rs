//! Conservative dynamical Belyi polynomials.
//!
//! `B_{d,k}` is the unique degree-`d` polynomial whose only finite critical
//! points are 0 and 1, both fixed, with ramification `d - k` at 0 and `k + 1`
//! at 1. In closed form
//!
//! ```text
//! B_{d,k}(z) = sum_{i=0}^{k} a_i z^{d-k+i},
//! a_i = (-1)^i d (d-1) ... (d-k) / ( i! (k-i)! (d-k+i) ).
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, falling_factorial, Rational};
use crate::poly::{AffineMap, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiPoly {
    d: usize,
    k: usize,
    poly: Polynomial,
}

impl BelyiPoly {
    pub fn generate(d: usize, k: usize) -> Result<Self> {
        check_range(d, k)?;
        let numerator = falling_factorial(d as u64, k as u64 + 1);
        // Running i! and (k-i)!, updated per term.
        let mut i_fact = BigInt::one();
        let mut rest_fact = falling_factorial(k as u64, k as u64);
        let mut terms = Vec::with_capacity(k + 1);
        for i in 0..=k {
            if i > 0 {
                i_fact *= i;
                rest_fact /= k - i + 1;
            }
            let exponent = d - k + i;
            let denom = &i_fact * &rest_fact * exponent;
            let (a, rem) = numerator.div_rem(&denom);
            if !rem.is_zero() {
                return Err(Error::Assertion(format!(
                    "coefficient of z^{exponent} in B_{{{d},{k}}} is not integral"
                )));
            }
            let a = if i % 2 == 1 { -a } else { a };
            terms.push((exponent, Rational::from_integer(a)));
        }
        Ok(Self {
            d,
            k,
            poly: Polynomial::from_terms(terms),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ramification index at 0.
    pub fn e0(&self) -> usize {
        self.d - self.k
    }

    /// Ramification index at 1.
    pub fn e1(&self) -> usize {
        self.k + 1
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    /// `a_i`, the coefficient of `z^{d-k+i}`, for `i = 0..=k`.
    pub fn coefficient(&self, i: usize) -> BigInt {
        self.poly.coeff(self.d - self.k + i).to_integer()
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        (0..=self.k).map(|i| self.coefficient(i)).collect()
    }

    /// `a_k = (-1)^k C(d-1, k)`.
    pub fn leading_coefficient(&self) -> BigInt {
        self.coefficient(self.k)
    }

    /// `F_{d,k} = B_{d,k} / z^{d-k}`, whose roots are the nonzero roots of `B_{d,k}`.
    pub fn nonzero_root_factor(&self) -> Polynomial {
        self.poly.strip_zero_root().0
    }

    pub fn verify(&self) -> ConservativeCheck {
        verify_conservative(&self.poly, self.k)
    }

    pub fn mirror(&self) -> Result<BelyiPoly> {
        mirror(self)
    }
}

impl fmt::Display for BelyiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn check_range(d: usize, k: usize) -> Result<()> {
    if d < 3 || k < 1 || k > d - 2 {
        return Err(Error::ParameterRange(format!(
            "need d >= 3 and 1 <= k <= d - 2, got d = {d}, k = {k}"
        )));
    }
    Ok(())
}

pub fn generate(d: usize, k: usize) -> Result<BelyiPoly> {
    BelyiPoly::generate(d, k)
}

/// All `d - 2` conservative dynamical Belyi polynomials of degree `d`.
pub fn family(d: usize) -> Result<Vec<BelyiPoly>> {
    check_range(d, 1)?;
    (1..=d - 2).map(|k| generate(d, k)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    FixesZero,
    FixesOne,
    CriticalFactorization,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::FixesZero => "B(0) = 0",
            Clause::FixesOne => "B(1) = 1",
            Clause::CriticalFactorization => "B' = (-1)^k d C(d-1,k) z^(d-k-1) (z-1)^k",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConservativeCheck {
    pub violated: Option<Clause>,
}

impl ConservativeCheck {
    pub fn passed(&self) -> bool {
        self.violated.is_none()
    }
}

/// Checks `B(0) = 0`, `B(1) = 1` and the exact derivative factorization
/// `B' = (-1)^k d C(d-1,k) z^{d-k-1} (z-1)^k`, where `d = deg B`. Together
/// these say 0 and 1 are the only finite critical points and both are fixed.
pub fn verify_conservative(poly: &Polynomial, k: usize) -> ConservativeCheck {
    let fail = |clause| ConservativeCheck {
        violated: Some(clause),
    };
    if !poly.evaluate(&Rational::zero()).is_zero() {
        return fail(Clause::FixesZero);
    }
    if !poly.evaluate(&Rational::one()).is_one() {
        return fail(Clause::FixesOne);
    }
    let Some(d) = poly.degree() else {
        return fail(Clause::FixesOne);
    };
    if k == 0 || k + 1 >= d {
        return fail(Clause::CriticalFactorization);
    }
    let mut scale = BigInt::from(d) * binomial(d as u64 - 1, k as i64);
    if k % 2 == 1 {
        scale = -scale;
    }
    let z_minus_one = Polynomial::from_int_coeffs(&[-1, 1]);
    let expected = z_minus_one
        .pow(k as u32)
        .shift_up(d - k - 1)
        .scale(&Rational::from_integer(scale));
    if poly.derivative() != expected {
        return fail(Clause::CriticalFactorization);
    }
    ConservativeCheck { violated: None }
}

/// `B_{d,d-1-k}`, checked against the conjugate of `b` by `z -> 1 - z`.
pub fn mirror(b: &BelyiPoly) -> Result<BelyiPoly> {
    let other = generate(b.d, b.d - 1 - b.k)?;
    let conj = b.poly.conjugate(&AffineMap::swap_zero_one());
    if conj != other.poly {
        return Err(Error::Assertion(format!(
            "conjugate of B_{{{},{}}} by 1 - z is not B_{{{},{}}}",
            b.d, b.k, other.d, other.k
        )));
    }
    Ok(other)
}
