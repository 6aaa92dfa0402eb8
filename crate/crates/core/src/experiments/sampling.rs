use crate::error::{Error, Result};
use crate::ntheory::gcd;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which residues `a` a sweep visits for each modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum APolicy {
    /// `a = 1` only.
    One,
    /// Every `a` in `[1, m-1]` coprime to `m`.
    All,
    /// `k` distinct residues coprime to `m`, chosen from `seed`.
    Sample { k: usize, seed: u64 },
}

impl APolicy {
    pub fn residues(&self, m: u64) -> Vec<u64> {
        match *self {
            APolicy::One => vec![1 % m.max(2)],
            APolicy::All => (1..m).filter(|&a| gcd(a, m) == 1).collect(),
            APolicy::Sample { k, seed } => sample_coprime(m, k, seed),
        }
    }

    /// Parses `one`, `all` or `sample:K`; the seed comes separately.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        match s {
            "one" => Ok(APolicy::One),
            "all" => Ok(APolicy::All),
            _ => {
                let k = s
                    .strip_prefix("sample:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown a-policy {s:?}")))?;
                Ok(APolicy::Sample { k, seed })
            }
        }
    }
}

impl fmt::Display for APolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            APolicy::One => f.write_str("one"),
            APolicy::All => f.write_str("all"),
            APolicy::Sample { k, .. } => write!(f, "sample:{k}"),
        }
    }
}

impl FromStr for APolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        APolicy::parse(s, 0)
    }
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The generator used for modulus `m`: SplitMix64 seeded with
/// `seed ^ (m * 0x9E3779B97F4A7C15)` (wrapping).
pub fn stream_for(m: u64, seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed ^ m.wrapping_mul(GOLDEN))
}

/// Up to `k` distinct residues in `[1, m-1]` coprime to `m`, ascending.
///
/// Candidates are drawn as `1 + next_u64() % (m - 1)` from
/// [`stream_for`]`(m, seed)` and kept when coprime and new. When `m` has at
/// most `k` units, all of them are returned.
pub fn sample_coprime(m: u64, k: usize, seed: u64) -> Vec<u64> {
    if m < 2 || k == 0 {
        return Vec::new();
    }
    let units = crate::ntheory::phi(m);
    if units as usize <= k {
        return (1..m).filter(|&a| gcd(a, m) == 1).collect();
    }
    let mut rng = stream_for(m, seed);
    let mut out: Vec<u64> = Vec::with_capacity(k);
    while out.len() < k {
        let a = 1 + rng.next_u64() % (m - 1);
        if gcd(a, m) == 1 && !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort_unstable();
    out
}
