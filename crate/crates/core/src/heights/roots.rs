//! Simultaneous root refinement (Aberth-Ehrlich) in extended precision.

use dashu_float::ops::{Abs, SquareRoot};
use num_traits::Zero;

use super::mp::{self, Complex, Float};
use crate::error::{Error, Result};
use crate::exact::bit_length;
use crate::poly::Polynomial;

const MAX_ITERATIONS: usize = 2000;

/// All complex roots of a polynomial, each certified by a residual bound.
#[derive(Clone, Debug)]
pub struct RootSet {
    roots: Vec<Complex>,
    residual_log10: f64,
    working_precision_bits: usize,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest `|f(root)| / max_i |c_i|` over all roots. Zero when every
    /// residual underflows `f64`.
    pub fn residual_bound(&self) -> f64 {
        10f64.powf(self.residual_log10)
    }

    /// `log10` of [`residual_bound`](Self::residual_bound); `-inf` for exact roots.
    pub fn residual_log10(&self) -> f64 {
        self.residual_log10
    }

    pub fn working_precision_bits(&self) -> usize {
        self.working_precision_bits
    }

    pub fn modulus_sqr(&self, i: usize) -> Float {
        self.roots[i].norm_sqr()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.roots
            .iter()
            .map(|z| mp::to_f64(&z.norm_sqr()).sqrt())
            .collect()
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(Complex::to_f64).collect()
    }

    /// `prod |root|` at working precision.
    pub fn modulus_product(&self) -> f64 {
        let bits = self.working_precision_bits;
        let prod = self
            .roots
            .iter()
            .fold(mp::from_f64(1.0, bits), |acc, z| acc * z.norm_sqr());
        (mp::ln_f64(&prod) / 2.0).exp()
    }
}

/// Working precision for a polynomial: at least 128 bits and 64 bits beyond
/// the largest coefficient.
pub fn default_precision(f: &Polynomial) -> usize {
    let widest = f
        .terms()
        .map(|(_, c)| bit_length(c.numer()).max(bit_length(c.denom())))
        .max()
        .unwrap_or(0);
    128usize.max(widest as usize + 64)
}

/// Required: `f(0) != 0` and `deg f >= 1`.
///
/// Starts from `n` points on the circle whose radius is the Cauchy upper
/// bound, at fixed angles, so the result is deterministic. Converged roots
/// must satisfy `|f(z)| / max|c_i| <= 10^(-0.15 * bits)`.
pub fn find_roots(f: &Polynomial, precision_bits: usize) -> Result<RootSet> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Precondition("root finding needs degree >= 1".into()));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Precondition(
            "root finding needs f(0) != 0; strip the zero root first".into(),
        ));
    }
    let bits = precision_bits.max(64);
    let lead = mp::from_rational(f.leading_coefficient().expect("nonzero"), bits);
    // Monic coefficients, ascending.
    let coeffs: Vec<Float> = f
        .dense_coeffs()
        .iter()
        .map(|c| mp::from_rational(c, bits) / &lead)
        .collect();
    let scale = coeffs
        .iter()
        .map(|c| c.clone() * c)
        .max_by(|a, b| a.partial_cmp(b).expect("finite"))
        .expect("nonempty");

    let radius = {
        let (_, upper) = super::cauchy_bounds(f)?;
        upper
    };
    let mut z: Vec<Complex> = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            Complex::from_f64(radius * theta.cos(), radius * theta.sin(), bits)
        })
        .collect();

    // A root is settled once its correction is below 2^-(bits - 8) relative,
    // or once |f(z)| is within the rounding error of evaluating f at z.
    let threshold = Float::from_parts(1.into(), -2 * (bits as isize - 8))
        .with_precision(bits)
        .value();
    let guard = 8 + (usize::BITS - n.leading_zeros()) as isize;
    let eps = Float::from_parts(1.into(), -(bits as isize - guard))
        .with_precision(bits)
        .value();
    let abs_coeffs: Vec<Float> = coeffs.iter().map(|c| c.clone().abs()).collect();
    let one = mp::from_f64(1.0, bits);
    let one_c = Complex::from_real(one.clone());
    let mut settled_rounds = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut all_small = true;
        for i in 0..n {
            let (val, der) = horner(&coeffs, &z[i]);
            if val.is_zero() {
                continue;
            }
            let noise = &eps * &abs_horner(&abs_coeffs, &z[i]);
            let at_noise_floor = val.norm_sqr() <= &noise * &noise;
            if der.is_zero() {
                all_small &= at_noise_floor;
                continue;
            }
            let ratio = &val / &der;
            let mut repulsion = Complex::zero(bits);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = &z[i] - zj;
                    repulsion = &repulsion + &(&one_c / &diff);
                }
            }
            let denom = &one_c - &(&ratio * &repulsion);
            let step = &ratio / &denom;
            let size = z[i].norm_sqr();
            let size = if size > one { size } else { one.clone() };
            if !at_noise_floor && step.norm_sqr() > &threshold * &size {
                all_small = false;
            }
            z[i] = &z[i] - &step;
        }
        if all_small {
            settled_rounds += 1;
            if settled_rounds >= 2 {
                break;
            }
        }
    }

    let mut worst = f64::NEG_INFINITY;
    for zi in &z {
        let (val, _) = horner(&coeffs, zi);
        let r2 = val.norm_sqr();
        if r2.repr().is_zero() {
            continue;
        }
        let log10 = (mp::ln_f64(&r2) - mp::ln_f64(&scale)) / 2.0 / std::f64::consts::LN_10;
        worst = worst.max(log10);
    }
    let limit = -0.15 * bits as f64;
    if worst > limit {
        return Err(Error::NoConvergence {
            best_residual: 10f64.powf(worst),
        });
    }
    Ok(RootSet {
        roots: z,
        residual_log10: worst,
        working_precision_bits: bits,
    })
}

/// `sum |c_i| |z|^i`, the scale of the rounding error in [`horner`].
fn abs_horner(abs_coeffs: &[Float], z: &Complex) -> Float {
    let r = z.norm_sqr().sqrt();
    abs_coeffs
        .iter()
        .rev()
        .fold(Float::ZERO.with_precision(r.precision()).value(), |acc, c| acc * &r + c)
}

/// `(p(z), p'(z))` for ascending coefficients.
fn horner(coeffs: &[Float], z: &Complex) -> (Complex, Complex) {
    let bits = z.re.precision();
    let mut val = Complex::zero(bits);
    let mut der = Complex::zero(bits);
    for c in coeffs.iter().rev() {
        der = &(&der * z) + &val;
        val = &(&val * z) + &Complex::from_real(c.clone());
    }
    (val, der)
}
