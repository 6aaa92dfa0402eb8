//! Exact linear algebra on monomial evaluation matrices.

use super::MonomialSet;
use crate::error::{Error, Result};
use crate::ntheory::{ext_gcd, mul_mod, pow_mod};
use crate::point::LatticePoint;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `K x s` matrix with entry `(nu, i) = mu_i(x_nu, y_nu)`.
pub fn evaluation_matrix(points: &[LatticePoint], monos: &MonomialSet) -> Vec<Vec<BigInt>> {
    points
        .iter()
        .map(|p| monos.iter().map(|&(h, k)| BigInt::from(p.x).pow(h) * BigInt::from(p.y).pow(k)).collect())
        .collect()
}

/// Fraction-free (Bareiss) row echelon form in place; returns the pivot
/// columns. Every intermediate entry is a minor of the input, so each
/// division is exact.
fn bareiss_echelon(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            for j in c + 1..cols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(points: &[LatticePoint], monos: &MonomialSet) -> usize {
    let mut m = evaluation_matrix(points, monos);
    bareiss_echelon(&mut m).len()
}

/// A primitive integer vector `A` with `sum A_i mu_i(p) = 0` at every point,
/// sign-normalized so its first nonzero entry is positive. `None` when the
/// evaluation matrix has full column rank. When the kernel has dimension
/// above one, the returned vector is the one attached to the first free
/// column (it vanishes on every later free column).
pub fn find_vanishing_form(points: &[LatticePoint], monos: &MonomialSet) -> Result<Option<Vec<BigInt>>> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    if monos.len() < 2 {
        return Err(Error::InvalidArgument("need at least two monomials".into()));
    }
    let s = monos.len();
    let mut m = evaluation_matrix(points, monos);
    let pivots = bareiss_echelon(&mut m);
    let Some(free) = (0..s).find(|c| !pivots.contains(c)) else { return Ok(None) };

    let mut x: Vec<BigRational> = vec![BigRational::zero(); s];
    x[free] = BigRational::one();
    for (t, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::zero();
        for j in pc + 1..s {
            if !x[j].is_zero() {
                acc += BigRational::from_integer(m[t][j].clone()) * &x[j];
            }
        }
        x[pc] = -acc / BigRational::from_integer(m[t][pc].clone());
    }
    let lcm = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut coeffs: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for c in &mut coeffs {
        *c /= &g;
    }
    if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in &mut coeffs {
            *c = -&*c;
        }
    }
    debug_assert!(annihilates(&coeffs, points, monos));
    Ok(Some(coeffs))
}

/// Whether `sum coeffs_i mu_i` vanishes at every point.
pub fn annihilates(coeffs: &[BigInt], points: &[LatticePoint], monos: &MonomialSet) -> bool {
    evaluation_matrix(points, monos)
        .iter()
        .all(|row| row.iter().zip(coeffs).map(|(e, c)| e * c).sum::<BigInt>().is_zero())
}

/// Whether every `s x s` minor of the evaluation matrix is divisible by `m`.
///
/// Unimodular row operations preserve the ideal generated by the maximal
/// minors, and reducing entries modulo `m` changes each minor by a multiple
/// of `m`. So the matrix is brought to echelon form over `Z/m` with
/// extended-gcd row operations; afterwards the only possibly nonzero maximal
/// minor is the product of the diagonal.
pub fn minors_singular_mod(points: &[LatticePoint], monos: &MonomialSet, m: u64) -> Result<bool> {
    let s = monos.len();
    if points.len() < s {
        return Err(Error::InvalidArgument(format!(
            "{} points cannot give {s} x {s} minors",
            points.len()
        )));
    }
    if m < 2 || m > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!("modulus {m} out of range")));
    }
    let red = |v: i64| v.rem_euclid(m as i64) as u64;
    let mut rows: Vec<Vec<u64>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|&(h, k)| mul_mod(pow_mod(red(p.x), h as u64, m), pow_mod(red(p.y), k as u64, m), m))
                .collect()
        })
        .collect();
    let mut det = 1 % m;
    for c in 0..s {
        for i in c + 1..rows.len() {
            if rows[i][c] == 0 {
                continue;
            }
            let (a, b) = (rows[c][c] as i64, rows[i][c] as i64);
            let (g, u, v) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            for j in c..s {
                let (top, low) = (rows[c][j] as i128, rows[i][j] as i128);
                let new_top = (u as i128 * top + v as i128 * low).rem_euclid(m as i128);
                let new_low = (ag as i128 * low - bg as i128 * top).rem_euclid(m as i128);
                rows[c][j] = new_top as u64;
                rows[i][j] = new_low as u64;
            }
        }
        if rows[c][c] == 0 {
            return Ok(true);
        }
        det = mul_mod(det, rows[c][c], m);
    }
    Ok(det == 0)
}
