//! Binary floating point at a fixed working precision, plus the complex
//! arithmetic the root finder needs.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;

use crate::exact::Rational;

pub type Float = FBig<HalfEven, 2>;

pub fn from_bigint(x: &BigInt, bits: usize) -> Float {
    let repr = IBig::from_le_bytes(&x.to_signed_bytes_le());
    Float::from(repr).with_precision(bits).value()
}

pub fn from_rational(x: &Rational, bits: usize) -> Float {
    from_bigint(x.numer(), bits) / from_bigint(x.denom(), bits)
}

pub fn from_f64(x: f64, bits: usize) -> Float {
    Float::try_from(x)
        .expect("finite f64")
        .with_precision(bits)
        .value()
}

pub fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Natural log as an `f64`, for positive `x` of any magnitude.
pub fn ln_f64(x: &Float) -> f64 {
    to_f64(&x.ln())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Self::new(from_f64(re, bits), from_f64(im, bits))
    }

    pub fn from_real(re: Float) -> Self {
        let bits = re.precision();
        Self::new(re, from_f64(0.0, bits))
    }

    pub fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().is_zero() && self.im.repr().is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let den = rhs.norm_sqr();
        Complex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &den,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &den,
        )
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}
