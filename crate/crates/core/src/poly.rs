//! Exact univariate polynomials over the rationals.
//!
//! Storage is sparse (exponent -> nonzero coefficient) so that a Belyi
//! polynomial of degree 10^5 with a handful of terms stays small, while the
//! API behaves like a dense coefficient vector: `coeff(e)` is zero for every
//! exponent not stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<usize, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exponent: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// Coefficients in ascending order of exponent, starting at `z^0`.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate())
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Order of vanishing at `z = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, exponent: usize) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Dense ascending coefficient vector of length `degree + 1`.
    pub fn dense_coeffs(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut out = vec![Rational::zero(); deg + 1];
        for (&e, c) in &self.terms {
            out[e] = c.clone();
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplication by `z^shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        // Horner over the sparse terms, jumping exponent gaps with pow.
        let mut acc = Rational::zero();
        let mut prev: Option<usize> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rat(x, p - e);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= pow_rat(x, p);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * Rational::from_integer(BigInt::from(e))))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(z))`, by Horner accumulation.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        let mut acc = Self::zero();
        let mut prev: Option<usize> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc = &acc * &inner.pow((p - e) as u32);
            }
            acc = &acc + &Self::constant(c.clone());
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc = &acc * &inner.pow(p as u32);
        }
        acc
    }

    /// `phi^{-1} o self o phi`.
    pub fn conjugate(&self, phi: &AffineMap) -> Self {
        let inner = self.compose(&phi.as_polynomial());
        let shifted = &inner - &Self::constant(phi.shift.clone());
        shifted.scale(&phi.scale.recip())
    }

    /// gcd of the coefficients, nonnegative; errors on non-integral input.
    pub fn content(&self) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::Precondition(
                "content needs integer coefficients".into(),
            ));
        }
        Ok(self
            .terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer())))
    }

    /// Splits `self = z^m * rest` with `rest(0) != 0`. The zero polynomial
    /// maps to `(0, 0)`.
    pub fn strip_zero_root(&self) -> (Polynomial, usize) {
        let Some(m) = self.order_at_zero() else {
            return (Self::zero(), 0);
        };
        let rest = Self {
            terms: self.terms.iter().map(|(&e, c)| (e - m, c.clone())).collect(),
        };
        (rest, m)
    }

    /// Terms as `[exponent, numerator, denominator]` triples, ascending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        Self::deserialize(value).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        Polynomial { terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                *terms.entry(a + b).or_insert_with(Rational::zero) += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { terms }
    }
}

/// `z -> scale * z + shift` with `scale != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    scale: Rational,
    shift: Rational,
}

impl AffineMap {
    pub fn new(scale: Rational, shift: Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::Precondition("affine map with zero scale".into()));
        }
        Ok(Self { scale, shift })
    }

    pub fn identity() -> Self {
        Self {
            scale: Rational::one(),
            shift: Rational::zero(),
        }
    }

    /// `z -> 1 - z`, which swaps the critical points 0 and 1.
    pub fn swap_zero_one() -> Self {
        Self {
            scale: -Rational::one(),
            shift: Rational::one(),
        }
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.scale * x + &self.shift
    }

    pub fn inverse(&self) -> Self {
        let inv = self.scale.recip();
        Self {
            shift: -&self.shift * &inv,
            scale: inv,
        }
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::from_terms([(0, self.shift.clone()), (1, self.scale.clone())])
    }
}

impl fmt::Display for Polynomial {
    /// Descending exponents, e.g. `-3z^4 + 4z^3`; non-integral coefficients
    /// are parenthesized: `(64/9)z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match e {
                1 => f.write_str("z")?,
                _ => write!(f, "z^{}", e)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Accepts the display form plus a little slack: `*` between coefficient
    /// and variable, unparenthesized `a/b` coefficients, any whitespace, and
    /// `x` as the variable name.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut start = 0;
        let mut depth = 0;
        for i in 0..=bytes.len() {
            let at_split = i == bytes.len()
                || (depth == 0 && i > start && (bytes[i] == b'+' || bytes[i] == b'-')
                    && bytes[i - 1] != b'^');
            if i < bytes.len() {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => {}
                }
            }
            if at_split {
                terms.push(parse_term(&cleaned[start..i])?);
                start = i;
            }
        }
        Ok(Self::from_terms(terms))
    }
}

fn parse_term(term: &str) -> Result<(usize, Rational)> {
    let bad = || Error::Parse(format!("bad term `{term}`"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let var_pos = body.find(['z', 'x']);
    let (coeff_str, exponent) = match var_pos {
        None => (body, 0),
        Some(pos) => {
            let tail = &body[pos + 1..];
            let exponent = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?
            };
            (&body[..pos], exponent)
        }
    };
    let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
    let coeff_str = coeff_str
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(coeff_str);
    let mut coeff = if coeff_str.is_empty() {
        if var_pos.is_none() {
            return Err(bad());
        }
        Rational::one()
    } else {
        parse_rational(coeff_str)?
    };
    if negative {
        coeff = -coeff;
    }
    Ok((exponent, coeff))
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Always `num/den`, denominator positive, even for integers.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn json_number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integer literal is a JSON number")
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, json_number(c.numer()), json_number(c.denom())))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(usize, serde_json::Value, serde_json::Value)> =
            Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, n, d) in raw {
            let n = json_integer(&n).map_err(de::Error::custom)?;
            let d = json_integer(&d).map_err(de::Error::custom)?;
            if d.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            terms.push((e, Rational::new(n, d)));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

fn json_integer(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    let text = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => return Err(format!("expected integer, got {other}")),
    };
    text.parse().map_err(|_| format!("expected integer, got {text}"))
}

/// Serde adapter writing a `Rational` as the string `num/den`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter writing a `BigInt` as a JSON number of any size.
pub mod integer_json {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        json_number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        json_integer(&v).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_int_coeffs(c)
    }

    #[test]
    fn evaluate_fixed_point() {
        let b41 = p(&[0, 0, 0, 4, -3]);
        let b42 = p(&[0, 0, 6, -8, 3]);
        assert_eq!(b41.evaluate(&q(1, 1)), q(1, 1));
        assert_eq!(b42.evaluate(&q(1, 1)), q(1, 1));
        let f = p(&[7, 2, 5]);
        assert_eq!(f.evaluate(&q(0, 1)), q(7, 1));
        assert_eq!(f.evaluate(&q(1, 2)), q(7, 1) + q(1, 1) + q(5, 4));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 4, -3]).derivative(), p(&[0, 0, 12, -12]));
        assert_eq!(p(&[5]).derivative(), Polynomial::zero());
        assert_eq!(p(&[0, 0, 6, -8, 3]).derivative(), p(&[0, 12, -24, 12]));
    }

    #[test]
    fn conjugate_swaps_degree_four_family() {
        let b41 = p(&[0, 0, 0, 4, -3]);
        let b42 = p(&[0, 0, 6, -8, 3]);
        assert_eq!(b41.conjugate(&AffineMap::swap_zero_one()), b42);
        assert_eq!(b41.conjugate(&AffineMap::identity()), b41);
    }

    #[test]
    fn compose_examples() {
        let z = Polynomial::z();
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
        let f = p(&[3, 0, -2, 9]);
        assert_eq!(f.compose(&z), f);
        assert_eq!(p(&[0, 0, 0, 1]).compose(&p(&[0, 0, 1])), p(&[0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn content_examples() {
        let mut terms = vec![(18, q(136, 1)), (17, q(-288, 1)), (16, q(153, 1))];
        assert_eq!(Polynomial::from_terms(terms.clone()).content(), Ok(BigInt::from(1)));
        terms.clear();
        assert_eq!(Polynomial::from_terms(terms).content(), Ok(BigInt::from(0)));
        assert_eq!(p(&[0, -4, 6]).content(), Ok(BigInt::from(2)));
        assert!(Polynomial::constant(q(1, 2)).content().is_err());
    }

    #[test]
    fn strip_zero_root_examples() {
        assert_eq!(p(&[0, 0, 0, 4, -3]).strip_zero_root(), (p(&[4, -3]), 3));
        assert_eq!(p(&[0, 0, 6, -8, 3]).strip_zero_root(), (p(&[6, -8, 3]), 2));
        assert_eq!(p(&[1, 1]).strip_zero_root(), (p(&[1, 1]), 0));
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[0, 0, 0, 4, -3]).to_string(), "-3z^4 + 4z^3");
        assert_eq!(p(&[0, 0, 6, -8, 3]).to_string(), "3z^4 - 8z^3 + 6z^2");
        assert_eq!(p(&[-1, 1, 0, -1]).to_string(), "-z^3 + z - 1");
        let g = Polynomial::from_terms([(1, q(64, 9)), (0, q(1, 1)), (4, q(3, 1))]);
        assert_eq!(g.to_string(), "3z^4 + (64/9)z + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn text_parse() {
        let g = Polynomial::from_terms([(1, q(64, 9)), (0, q(1, 1)), (4, q(3, 1))]);
        assert_eq!("3z^4 + (64/9)z + 1".parse::<Polynomial>().unwrap(), g);
        assert_eq!("3*x^4+64/9*x+1".parse::<Polynomial>().unwrap(), g);
        assert_eq!("-z^3 + z - 1".parse::<Polynomial>().unwrap(), p(&[-1, 1, 0, -1]));
        assert_eq!("z^2 - (1/3)z^2".parse::<Polynomial>().unwrap(),
            Polynomial::monomial(q(2, 3), 2));
        assert!("3z^".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
        assert!("1/0".parse::<Polynomial>().is_err());
    }

    #[test]
    fn json_form() {
        let g = Polynomial::from_terms([(1, q(-64, 9)), (18, q(136, 1))]);
        let v = g.to_json();
        assert_eq!(v.to_string(), "[[1,-64,9],[18,136,1]]");
        assert_eq!(Polynomial::from_json(&v).unwrap(), g);
        let big = Polynomial::monomial(Rational::from_integer(BigInt::from(10).pow(40)), 2);
        let text = big.to_json().to_string();
        assert_eq!(text, format!("[[2,{},1]]", BigInt::from(10).pow(40)));
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, big);
        let strings: Polynomial = serde_json::from_str(r#"[[0,"3","4"]]"#).unwrap();
        assert_eq!(strings, Polynomial::constant(q(3, 4)));
    }

    #[test]
    fn affine_inverse() {
        let phi = AffineMap::new(q(3, 2), q(-1, 5)).unwrap();
        let x = q(7, 11);
        assert_eq!(phi.inverse().apply(&phi.apply(&x)), x);
        assert!(AffineMap::new(q(0, 1), q(1, 1)).is_err());
    }
}
