//! Quadratic curves: vanishing forms through point sets, singularity of
//! evaluation matrices modulo `m`, classification of integer conics, exact
//! point counts in boxes, and root counts of polynomials modulo `m`.

mod linalg;

pub use linalg::{annihilates, evaluation_matrix, find_vanishing_form, minors_singular_mod, rank};

use crate::error::{Error, Result};
use crate::point::LatticePoint;
use serde::{Deserialize, Serialize};

/// Distinct exponent pairs `(h, k)`, each standing for `X^h Y^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSet(Vec<(u32, u32)>);

impl MonomialSet {
    pub fn new(monos: Vec<(u32, u32)>) -> Result<Self> {
        if monos.is_empty() {
            return Err(Error::InvalidArgument("empty monomial set".into()));
        }
        for (i, m) in monos.iter().enumerate() {
            if monos[..i].contains(m) {
                return Err(Error::InvalidArgument(format!("repeated monomial X^{} Y^{}", m.0, m.1)));
            }
        }
        Ok(Self(monos))
    }

    /// `X^2, XY, Y^2, X, Y, 1`, matching the coefficient order of
    /// [`ConicForm`].
    pub fn conic() -> Self {
        Self(vec![(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (u32, u32)> {
        self.0.iter()
    }
}

/// `A X^2 + B XY + C Y^2 + D X + E Y + F` with coprime, not all zero,
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConicForm {
    coeffs: [i64; 6],
}

impl ConicForm {
    /// Rejects the zero form with [`Error::InfiniteFamily`] and
    /// non-primitive coefficient vectors.
    pub fn new(coeffs: [i64; 6]) -> Result<Self> {
        let g = content(&coeffs);
        if g == 0 {
            return Err(Error::InfiniteFamily);
        }
        if g != 1 {
            return Err(Error::InvalidArgument(format!("coefficients share the factor {g}")));
        }
        Ok(Self { coeffs })
    }

    /// Divides out the content of the coefficients.
    pub fn primitive(coeffs: [i64; 6]) -> Result<Self> {
        let g = content(&coeffs);
        if g == 0 {
            return Err(Error::InfiniteFamily);
        }
        Ok(Self { coeffs: coeffs.map(|c| c / g as i64) })
    }

    pub fn coeffs(&self) -> [i64; 6] {
        self.coeffs
    }

    pub fn eval(&self, x: i128, y: i128) -> Option<i128> {
        let [a, b, c, d, e, f] = self.coeffs.map(i128::from);
        let terms = [a.checked_mul(x.checked_mul(x)?)?, b.checked_mul(x.checked_mul(y)?)?, c.checked_mul(y.checked_mul(y)?)?, d.checked_mul(x)?, e.checked_mul(y)?, f];
        terms.iter().try_fold(0i128, |acc, &t| acc.checked_add(t))
    }
}

fn content(coeffs: &[i64; 6]) -> u64 {
    coeffs.iter().fold(0u64, |g, &c| num_integer::gcd(g, c.unsigned_abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicClass {
    /// `B^2 - 4AC`
    pub discriminant: i128,
    /// The symmetric 3x3 conic matrix is singular.
    pub degenerate: bool,
    /// Zero discriminant on a nondegenerate conic.
    pub parabola_like: bool,
}

pub fn classify_conic(g: &ConicForm) -> ConicClass {
    let [a, b, c, d, e, f] = g.coeffs.map(i128::from);
    let discriminant = b * b - 4 * a * c;
    // det [[2A, B, D], [B, 2C, E], [D, E, 2F]]
    let m = [[2 * a, b, d], [b, 2 * c, e], [d, e, 2 * f]];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let degenerate = det == 0;
    ConicClass { discriminant, degenerate, parabola_like: discriminant == 0 && !degenerate }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicCount {
    pub count: usize,
    /// Sorted by `(x, y)`.
    pub solutions: Vec<LatticePoint>,
}

/// Integer solutions of `G(x, y) = 0` in `[0, h] x [0, h]`.
///
/// For each `x` the equation is a quadratic (or linear) polynomial in `y`,
/// solved with an exact integer square root. Arithmetic is checked; inputs
/// whose intermediate values leave `i128` produce [`Error::Overflow`].
pub fn count_conic_points_in_box(g: &ConicForm, h: u64) -> Result<ConicCount> {
    const OVF: Error = Error::Overflow("conic point count");
    let h = h as i128;
    let [a, b, c, d, e, f] = g.coeffs.map(i128::from);
    let mut solutions = Vec::new();
    let mut push = |x: i128, y: i128| {
        if (0..=h).contains(&y) {
            solutions.push(LatticePoint::new(x as i64, y as i64));
        }
    };
    for x in 0..=h {
        // c y^2 + lin y + cst = 0
        let lin = b.checked_mul(x).and_then(|v| v.checked_add(e)).ok_or(OVF)?;
        let cst = x
            .checked_mul(x)
            .and_then(|xx| a.checked_mul(xx))
            .and_then(|v| v.checked_add(d.checked_mul(x)?))
            .and_then(|v| v.checked_add(f))
            .ok_or(OVF)?;
        if c == 0 {
            if lin == 0 {
                if cst == 0 {
                    // the whole vertical line x = const lies on the curve
                    for y in 0..=h {
                        push(x, y);
                    }
                }
            } else if cst % lin == 0 {
                push(x, -cst / lin);
            }
            continue;
        }
        let disc = lin
            .checked_mul(lin)
            .and_then(|l2| l2.checked_sub(c.checked_mul(4)?.checked_mul(cst)?))
            .ok_or(OVF)?;
        if disc < 0 {
            continue;
        }
        let root = disc.unsigned_abs().isqrt() as i128;
        if root * root != disc {
            continue;
        }
        let two_c = 2 * c;
        for num in [-lin + root, -lin - root] {
            if num % two_c == 0 {
                push(x, num / two_c);
            }
            if root == 0 {
                break;
            }
        }
    }
    solutions.sort_unstable();
    solutions.dedup();
    Ok(ConicCount { count: solutions.len(), solutions })
}

/// Coefficients (constant term first) of `X^2 G(X, a/X)` reduced modulo `m`:
/// the polynomial whose roots are the `x` coordinates of points of
/// `xy = a (mod m)` lying on `G = 0 (mod m)`.
pub fn hyperbola_pullback(g: &ConicForm, a: u64, m: u64) -> Vec<i64> {
    let [ca, cb, cc, cd, ce, cf] = g.coeffs.map(i128::from);
    let (a, mm) = (a as i128, m as i128);
    let r = |v: i128| v.rem_euclid(mm) as i64;
    let a_red = a.rem_euclid(mm);
    vec![
        r(cc.rem_euclid(mm) * (a_red * a_red % mm)),
        r(ce.rem_euclid(mm) * a_red),
        r(cb.rem_euclid(mm) * a_red + cf),
        r(cd),
        r(ca),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCount {
    pub count: usize,
    pub roots: Vec<u64>,
}

/// Roots in `[0, m-1]` of the polynomial with the given coefficients
/// (constant term first), by evaluating at every residue.
pub fn poly_roots_mod(coeffs: &[i64], m: u64) -> Result<RootCount> {
    if m < 2 || m > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!("modulus {m} out of range")));
    }
    let mm = m as i128;
    let reduced: Vec<i128> = coeffs.iter().map(|&c| (c as i128).rem_euclid(mm)).collect();
    if reduced.iter().all(|&c| c == 0) {
        return Err(Error::AllZeroMod { m });
    }
    let roots: Vec<u64> = (0..m)
        .filter(|&x| {
            let x = x as i128;
            reduced.iter().rev().fold(0i128, |acc, &c| (acc * x + c) % mm) == 0
        })
        .collect();
    Ok(RootCount { count: roots.len(), roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbola::{enumerate_points, HyperbolaSpec};
    use num_bigint::BigInt;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().copied().map(LatticePoint::from).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Every point of the box plugged into the form.
    fn brute_count(g: &ConicForm, h: i64) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for x in 0..=h {
            for y in 0..=h {
                if g.eval(x as i128, y as i128) == Some(0) {
                    out.push(LatticePoint::new(x, y));
                }
            }
        }
        out
    }

    #[test]
    fn vanishing_form_examples() {
        let conic = MonomialSet::conic();
        let d12 = pts(&[(1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1)]);
        assert_eq!(find_vanishing_form(&d12, &conic).unwrap(), Some(big(&[0, 1, 0, 0, 0, -12])));
        let generic = pts(&[(0, 0), (1, 0), (0, 1), (2, 3), (5, 1), (3, 7)]);
        assert_eq!(find_vanishing_form(&generic, &conic).unwrap(), None);
        let lin = MonomialSet::new(vec![(1, 0), (0, 1)]).unwrap();
        assert_eq!(find_vanishing_form(&pts(&[(2, 3)]), &lin).unwrap(), Some(big(&[3, -2])));
        assert!(find_vanishing_form(&[], &conic).is_err());
        let one = MonomialSet::new(vec![(1, 0)]).unwrap();
        assert!(find_vanishing_form(&d12, &one).is_err());
    }

    #[test]
    fn vanishing_form_underdetermined_is_primitive_and_valid() {
        let conic = MonomialSet::conic();
        // collinear points leave a multi-dimensional kernel
        let line = pts(&[(1, 2), (2, 4), (3, 6), (5, 10)]);
        let v = find_vanishing_form(&line, &conic).unwrap().unwrap();
        assert!(annihilates(&v, &line, &conic));
        let g = v.iter().fold(BigInt::from(0), |g, c| num_integer::Integer::gcd(&g, c));
        assert_eq!(g, BigInt::from(1));
        assert!(v.iter().find(|c| *c != &BigInt::from(0)).unwrap() > &BigInt::from(0));
    }

    #[test]
    fn hyperbola_points_vanish_mod_m() {
        let conic = MonomialSet::conic();
        for (m, a) in [(7u64, 1i64), (11, 3), (30, 7), (101, 5)] {
            let points = enumerate_points(&HyperbolaSpec::new(m, a).unwrap());
            let sample: Vec<LatticePoint> = points.iter().copied().take(8).collect();
            // XY - a vanishes modulo m on every sample point
            assert_eq!(minors_singular_mod(&sample, &conic, m), Ok(true), "m={m}");
        }
    }

    #[test]
    fn classification_examples() {
        let xy = classify_conic(&ConicForm::new([0, 1, 0, 0, 0, -1]).unwrap());
        assert_eq!(xy, ConicClass { discriminant: 1, degenerate: false, parabola_like: false });
        let par = classify_conic(&ConicForm::new([1, 0, 0, 0, -1, 0]).unwrap());
        assert_eq!(par, ConicClass { discriminant: 0, degenerate: false, parabola_like: true });
        let pair = classify_conic(&ConicForm::new([1, 0, -1, 0, 0, 0]).unwrap());
        assert_eq!(pair, ConicClass { discriminant: 4, degenerate: true, parabola_like: false });
    }

    #[test]
    fn form_construction() {
        assert_eq!(ConicForm::new([0; 6]), Err(Error::InfiniteFamily));
        assert!(ConicForm::new([2, 0, 2, 0, 0, -50]).is_err());
        assert_eq!(ConicForm::primitive([2, 0, 2, 0, 0, -50]).unwrap().coeffs(), [1, 0, 1, 0, 0, -25]);
    }

    #[test]
    fn count_examples() {
        let pell = ConicForm::new([1, 0, -2, 0, 0, -1]).unwrap();
        let c = count_conic_points_in_box(&pell, 100).unwrap();
        assert_eq!(c.solutions, pts(&[(1, 0), (3, 2), (17, 12), (99, 70)]));
        let xy = ConicForm::new([0, 1, 0, 0, 0, -12]).unwrap();
        assert_eq!(count_conic_points_in_box(&xy, 12).unwrap().count, 6);
        let circle = ConicForm::new([1, 0, 1, 0, 0, -25]).unwrap();
        let c = count_conic_points_in_box(&circle, 5).unwrap();
        assert_eq!(c.solutions, pts(&[(0, 5), (3, 4), (4, 3), (5, 0)]));
    }

    #[test]
    fn count_handles_lines_and_tangencies() {
        // x = 3 (as X - 3): a whole vertical line
        let vertical = ConicForm::new([0, 0, 0, 1, 0, -3]).unwrap();
        assert_eq!(count_conic_points_in_box(&vertical, 10).unwrap().count, 11);
        // (Y - X)^2 = Y^2 - 2XY + X^2: double root on the diagonal
        let double = ConicForm::new([1, -2, 1, 0, 0, 0]).unwrap();
        assert_eq!(count_conic_points_in_box(&double, 20).unwrap().solutions, brute_count(&double, 20));
    }

    #[test]
    fn count_agrees_with_double_loop() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(3);
        let mut checked = 0;
        while checked < 60 {
            let mut c = [0i64; 6];
            for v in &mut c {
                *v = (rng.next_u64() % 13) as i64 - 6;
            }
            c[5] = (rng.next_u64() % 401) as i64 - 200;
            let Ok(g) = ConicForm::primitive(c) else { continue };
            let h = 60 + rng.next_u64() % 240;
            assert_eq!(count_conic_points_in_box(&g, h).unwrap().solutions, brute_count(&g, h as i64), "{c:?}");
            checked += 1;
        }
    }

    #[test]
    fn pell_counts_grow_slowly() {
        let pell = ConicForm::new([1, 0, -2, 0, 0, -1]).unwrap();
        let counts: Vec<usize> =
            [10u64, 100, 1000, 10_000].iter().map(|&h| count_conic_points_in_box(&pell, h).unwrap().count).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        // solutions grow geometrically, so counts grow like log H
        assert_eq!(counts, vec![2, 4, 5, 6]);
    }

    #[test]
    fn root_examples() {
        assert_eq!(poly_roots_mod(&[-1, 0, 1], 8).unwrap().roots, vec![1, 3, 5, 7]);
        assert_eq!(poly_roots_mod(&[0, 0, 1], 4).unwrap().roots, vec![0, 2]);
        assert_eq!(poly_roots_mod(&[-3, 1], 7).unwrap().roots, vec![3]);
        assert_eq!(poly_roots_mod(&[8, 0, 16], 8), Err(Error::AllZeroMod { m: 8 }));
        assert_eq!(poly_roots_mod(&[], 5), Err(Error::AllZeroMod { m: 5 }));
    }

    #[test]
    fn pullback_roots_are_hyperbola_abscissae() {
        // G = XY - a vanishes identically on H_a(m), so the pullback is zero
        let g = ConicForm::new([0, 1, 0, 0, 0, -3]).unwrap();
        assert!(hyperbola_pullback(&g, 3, 11).iter().all(|&c| c == 0));
        // G = X^2 + Y^2 - 2: points of H_1(m) with x^2 + y^2 = 2 (mod m)
        let g = ConicForm::new([1, 0, 1, 0, 0, -2]).unwrap();
        let m = 97u64;
        let roots = poly_roots_mod(&hyperbola_pullback(&g, 1, m), m).unwrap().roots;
        let expected: Vec<u64> = enumerate_points(&HyperbolaSpec::new(m, 1).unwrap())
            .iter()
            .filter(|p| (p.x * p.x + p.y * p.y - 2) % m as i64 == 0)
            .map(|p| p.x as u64)
            .collect();
        assert_eq!(roots, expected);
    }
}
