use super::{gcd, mul_mod, pow_mod, ArithmeticProfile};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. The empty list is the factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from explicit pairs, checking that the primes
    /// are increasing and prime, exponents are positive and the product
    /// fits in a `u64`.
    pub fn new(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut prev = 1u64;
        let mut product = 1u64;
        for &(p, e) in &factors {
            if p <= prev || !is_prime(p) || e == 0 {
                return Err(Error::InvalidArgument(format!("bad factor {p}^{e}")));
            }
            for _ in 0..e {
                product = product
                    .checked_mul(p)
                    .ok_or(Error::Overflow("factorization product"))?;
            }
            prev = p;
        }
        Ok(Self { factors })
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn kernel(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub(crate) fn profile(&self) -> ArithmeticProfile {
        let n = self.value();
        let kernel = self.kernel();
        ArithmeticProfile {
            n,
            tau: self.tau(),
            phi: self.phi(),
            omega: self.omega(),
            kernel,
            t: n / kernel,
            squarefree: self.is_squarefree(),
        }
    }
}

/// Sorted list of all positive divisors.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_BOUND: u64 = 1000;

/// Factors any `n` in `[1, u64::MAX]`: trial division by integers below
/// 1000, then Brent's variant of Pollard rho on the remaining cofactor with
/// Miller-Rabin deciding primality.
///
/// Panics when `n == 0`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "cannot factor 0");
    let mut n = n;
    let mut primes: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    // 6k +- 1 wheel
    let mut p = 7u64;
    let mut step = 4u64;
    while p < TRIAL_BOUND && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        if n < TRIAL_BOUND * TRIAL_BOUND {
            primes.push(n);
        } else {
            split_large(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization::from_sorted_unchecked(factors)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = brent(n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(n / d, out);
}

/// One Brent cycle-finding run with `f(x) = x^2 + c`; `None` on failure.
fn brent(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}
