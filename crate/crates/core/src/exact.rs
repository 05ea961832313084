//! Exact integer and rational primitives: binomial coefficients, p-adic
//! valuations of scalars, Kummer carry counting and prime factorization.
//!
//! Factorization is trial division by every prime below 10^6 followed by
//! Brent's variant of Pollard rho on whatever cofactor remains. Cofactors are
//! tested with Miller-Rabin on a fixed base set, which is deterministic below
//! 3.3 * 10^24 and overwhelmingly reliable above it.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `C(n, m)`, zero when `m < 0` or `m > n`.
pub fn binomial(n: u64, m: i64) -> BigInt {
    if m < 0 || m as u64 > n {
        return BigInt::zero();
    }
    let m = (m as u64).min(n - m as u64);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// `d (d-1) ... (d-len+1)`.
pub fn falling_factorial(d: u64, len: u64) -> BigInt {
    let mut acc = BigUint::one();
    for i in 0..len {
        acc *= d - i;
    }
    BigInt::from(acc)
}

pub fn factorial(n: u64) -> BigInt {
    falling_factorial(n, n)
}

/// Largest `e` with `p^e | x`.
pub fn vp_int(x: &BigInt, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    check_prime(p)?;
    Ok(vp_nonzero(x.magnitude(), p))
}

fn vp_nonzero(x: &BigUint, p: u64) -> u64 {
    // Strip in chunks of p^8 first; valuations of binomials at large degree can be big.
    let p_big = BigUint::from(p);
    let chunk = p_big.pow(8);
    let mut x = x.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = x.div_rem(&chunk);
        if !r.is_zero() {
            break;
        }
        x = q;
        e += 8;
    }
    loop {
        let (q, r) = x.div_rem(&p_big);
        if !r.is_zero() {
            return e;
        }
        x = q;
        e += 1;
    }
}

/// `vp_int(num) - vp_int(den)`.
pub fn vp_rat(x: &Rational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    check_prime(p)?;
    let num = vp_nonzero(x.numer().magnitude(), p) as i64;
    let den = vp_nonzero(x.denom().magnitude(), p) as i64;
    Ok(num - den)
}

/// Number of carries when adding `m` and `n - m` in base `p`, which by
/// Kummer's theorem is `v_p(C(n, m))`.
///
/// Panics unless `m <= n` and `p >= 2`.
pub fn vp_binomial_kummer(n: u64, m: u64, p: u64) -> u64 {
    assert!(m <= n, "vp_binomial_kummer requires m <= n");
    assert!(p >= 2, "base must be at least 2");
    let (mut a, mut b) = (m, n - m);
    let mut carry = 0u64;
    let mut carries = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        carries += carry;
        a /= p;
        b /= p;
    }
    carries
}

/// Legendre's formula: `v_p(n!) = sum_{i >= 1} floor(n / p^i)`.
pub fn vp_factorial_legendre(n: u64, p: u64) -> u64 {
    assert!(p >= 2, "base must be at least 2");
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (d, s) = split_odd(n - 1);
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'bases: for &a in &MR_BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn split_odd(mut n: u64) -> (u64, u32) {
    let s = n.trailing_zeros();
    n >>= s;
    (n, s)
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Primes below `limit`, in increasing order.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_below(u64::from(TRIAL_DIVISION_LIMIT)))
}

/// The set of primes dividing `|x|`. Empty for `x = ±1`.
pub fn prime_factors(x: &BigInt) -> Result<BTreeSet<BigInt>> {
    if x.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut rest = x.magnitude().clone();
    let mut out = BTreeSet::new();
    for &p in small_primes() {
        if rest.is_one() {
            return Ok(out);
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            out.insert(BigInt::from(rest));
            return Ok(out);
        }
        let (mut q, mut r) = rest.div_rem(&pb);
        if r.is_zero() {
            out.insert(BigInt::from(p));
            while r.is_zero() {
                rest = q;
                (q, r) = rest.div_rem(&pb);
            }
        }
    }
    if !rest.is_one() {
        split_large(rest, &mut out);
    }
    Ok(out)
}

fn split_large(n: BigUint, out: &mut BTreeSet<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.insert(BigInt::from(n));
        return;
    }
    let f = (1u64..)
        .find_map(|c| pollard_rho_brent(&n, c))
        .expect("rho finds a factor of a composite for some increment");
    let cof = &n / &f;
    split_large(f, out);
    split_large(cof, out);
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// One Brent-rho attempt with iteration `x -> x^2 + c`; `None` when the
/// attempt degenerates to the trivial factor.
fn pollard_rho_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut g = one.clone();
    let mut q = one.clone();
    let mut r = 1u64;
    const BLOCK: u64 = 128;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BLOCK.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BLOCK;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if &g == n {
        // Backtrack one step at a time from the saved position.
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (g != one && &g != n).then_some(g)
}

/// Bit length of `|x|`.
pub fn bit_length(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

/// Natural logarithm of `|x|` as an `f64`, valid far beyond the `f64` range.
pub fn ln_abs(x: &BigInt) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.magnitude().bits();
    if bits <= 1000 {
        return x.abs().to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x.magnitude() >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
