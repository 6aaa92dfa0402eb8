//! The modular hyperbola `H_a(m) = {(x, y) : xy = a (mod m), 1 <= x, y <= m-1}`,
//! its symmetries, and exact counts of its points in boxes anchored at the
//! origin.

use crate::error::{Error, Result};
use crate::ntheory::{self, batch_inverse, gcd, MAX_MODULUS};
use crate::point::{LatticePoint, PointSet};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Modulus `m` and residue `a` with `gcd(a, m) = 1`, `a` reduced into
/// `[1, m-1]` (for `m = 2` that is always `a = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperbolaSpec {
    m: u64,
    a: u64,
}

impl HyperbolaSpec {
    /// `a` may be any integer; it is reduced modulo `m` first.
    pub fn new(m: u64, a: i64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::ModulusOutOfRange { m, max: MAX_MODULUS });
        }
        let reduced = a.rem_euclid(m as i64) as u64;
        if gcd(reduced, m) != 1 {
            return Err(Error::NotCoprime { a, m });
        }
        Ok(Self { m, a: reduced })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// The hyperbola `H_{m-a}(m)` that [`SymmetryKind::ReflectY`] maps onto.
    pub fn reflected(&self) -> Self {
        Self { m: self.m, a: self.m - self.a }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let m = self.m as i64;
        (1..m).contains(&p.x)
            && (1..m).contains(&p.y)
            && ((p.x as i128 * p.y as i128) % m as i128) as u64 == self.a % self.m
    }
}

/// Units of `Z/m` in `[1, upto]`, ascending.
fn units_up_to(m: u64, upto: u64) -> Vec<u64> {
    let primes: Vec<u64> = ntheory::factorize(m).factors().iter().map(|&(p, _)| p).collect();
    (1..=upto).filter(|x| primes.iter().all(|p| x % p != 0)).collect()
}

/// All `phi(m)` points of `H_a(m)`, one per unit `x`, sorted by `x`.
pub fn enumerate_points(spec: &HyperbolaSpec) -> PointSet {
    points_with_x_up_to(spec, spec.m - 1)
}

fn points_with_x_up_to(spec: &HyperbolaSpec, upto: u64) -> PointSet {
    let m = spec.m;
    let xs = units_up_to(m, upto);
    let inv = batch_inverse(&xs, m).expect("units are invertible");
    xs.iter()
        .zip(inv)
        .map(|(&x, xi)| LatticePoint::new(x as i64, ntheory::mul_mod(spec.a, xi, m) as i64))
        .collect()
}

/// Number of points of `H_a(m)` in `[1, u] x [1, v]`; `u` and `v` are clamped
/// to `m - 1`.
pub fn count_in_box(spec: &HyperbolaSpec, u: u64, v: u64) -> u64 {
    let u = u.min(spec.m - 1);
    let v = v.min(spec.m - 1) as i64;
    if u == 0 || v == 0 {
        return 0;
    }
    points_with_x_up_to(spec, u).iter().filter(|p| p.y <= v).count() as u64
}

/// Main term `u * v * phi(m) / m^2` of the box count, as a reduced fraction.
/// `u` and `v` are clamped like in [`count_in_box`].
pub fn predicted_count(spec: &HyperbolaSpec, u: u64, v: u64) -> Ratio<u128> {
    let m = spec.m as u128;
    let u = u.min(spec.m - 1) as u128;
    let v = v.min(spec.m - 1) as u128;
    let phi = ntheory::phi(spec.m) as u128;
    Ratio::new(u * v * phi, m * m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryKind {
    /// `(x, y) -> (y, x)`
    Swap,
    /// `(x, y) -> (m - x, m - y)`
    Negate,
    /// `(x, y) -> (x, m - y)`, which carries `H_a(m)` onto `H_{m-a}(m)`
    ReflectY,
}

pub fn apply_symmetry(kind: SymmetryKind, p: LatticePoint, m: u64) -> LatticePoint {
    let m = m as i64;
    match kind {
        SymmetryKind::Swap => LatticePoint::new(p.y, p.x),
        SymmetryKind::Negate => LatticePoint::new(m - p.x, m - p.y),
        SymmetryKind::ReflectY => LatticePoint::new(p.x, m - p.y),
    }
}
