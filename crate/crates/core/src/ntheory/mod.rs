//! Exact integer arithmetic: gcd and inverses, factorization, divisors and
//! the multiplicative functions tau, phi, omega plus the squarefree kernel.
//!
//! Every modulus handled by this crate is at most [`MAX_MODULUS`] (2^31), so
//! products of two residues and the squared coordinates used by the geometry
//! code fit in `u64`/`i64`, and cross products fit in `i128`.

mod factor;
mod sieve;

pub use factor::{divisors, factorize, is_prime, Factorization};
pub use sieve::{factor_progression, primes_up_to};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest modulus accepted by the hyperbola and hull code.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(a, b) >= 0` and
/// `a*u + b*v = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `x` modulo `m`, in `[1, m-1]` (or `0` when `m` is 1).
pub fn mod_inv(x: i64, m: u64) -> Result<u64> {
    if m == 0 || m > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!("modulus {m} out of range")));
    }
    let r = x.rem_euclid(m as i64);
    let (g, u, _) = ext_gcd(r, m as i64);
    if g != 1 {
        return Err(Error::NotInvertible { x, m });
    }
    Ok(u.rem_euclid(m as i64) as u64)
}

/// Inverts every element of `xs` modulo `m` with a single extended gcd and
/// `3(n-1)` multiplications (prefix products, then a backward sweep).
pub fn batch_inverse(xs: &[u64], m: u64) -> Result<Vec<u64>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = 1 % m;
    for &x in xs {
        acc = mul_mod(acc, x % m, m);
        prefix.push(acc);
    }
    let mut inv = match mod_inv(acc as i64, m) {
        Ok(v) => v,
        Err(_) => {
            // report the first offending element rather than the product
            let bad = xs.iter().copied().find(|&x| gcd(x % m, m) != 1).unwrap_or(acc);
            return Err(Error::NotInvertible { x: bad as i64, m });
        }
    };
    let mut out = vec![0u64; xs.len()];
    for i in (0..xs.len()).rev() {
        if i == 0 {
            out[0] = inv;
        } else {
            out[i] = mul_mod(inv, prefix[i - 1], m);
            inv = mul_mod(inv, xs[i] % m, m);
        }
    }
    Ok(out)
}

/// Multiplicative data of an integer `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticProfile {
    pub n: u64,
    pub tau: u64,
    pub phi: u64,
    pub omega: u32,
    /// Product of the distinct primes dividing `n`.
    pub kernel: u64,
    /// `n / kernel`; equals 1 exactly when `n` is squarefree.
    pub t: u64,
    pub squarefree: bool,
}

pub fn arithmetic_profile(n: u64) -> Result<ArithmeticProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("arithmetic profile needs n >= 2, got {n}")));
    }
    Ok(factorize(n).profile())
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    factorize(n).phi()
}

/// Number of positive divisors.
pub fn tau(n: u64) -> u64 {
    factorize(n).tau()
}
