//! Shared inputs for the benchmarks.

use modhull_core::HyperbolaSpec;

/// Moduli used across benchmarks: a prime, a primorial, a power of two and a
/// prime near the upper end of the desk-scale range.
pub const MODULI: [u64; 4] = [10_007, 30_030, 65_536, 99_991];

/// Pruning factor at which the candidate set is well below `phi(m)` for
/// these moduli.
pub const TUNED_CUTOFF_FACTOR: f64 = 0.02;

pub fn specs() -> Vec<HyperbolaSpec> {
    MODULI.iter().map(|&m| HyperbolaSpec::new(m, 1).expect("1 is a unit")).collect()
}
