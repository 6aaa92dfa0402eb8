use super::{convex_hull, twice_area, ConvexPolygon};
use crate::error::{Error, Result};
use crate::ntheory::ext_gcd;
use crate::point::LatticePoint;
use serde::{Deserialize, Serialize};

/// Affine map `p -> M p + b` with an integer matrix of determinant +-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    matrix: [[i64; 2]; 2],
    translation: [i64; 2],
}

impl UnimodularMap {
    pub const IDENTITY: Self = Self { matrix: [[1, 0], [0, 1]], translation: [0, 0] };

    pub fn new(matrix: [[i64; 2]; 2], translation: [i64; 2]) -> Result<Self> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128 - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det.abs() != 1 {
            return Err(Error::InvalidArgument(format!("matrix determinant is {det}, expected +-1")));
        }
        Ok(Self { matrix, translation })
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn translation(&self) -> [i64; 2] {
        self.translation
    }

    pub fn determinant(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let [[a, b], [c, d]] = self.matrix;
        let x = a as i128 * p.x as i128 + b as i128 * p.y as i128 + self.translation[0] as i128;
        let y = c as i128 * p.x as i128 + d as i128 * p.y as i128 + self.translation[1] as i128;
        LatticePoint::new(
            i64::try_from(x).expect("mapped coordinate overflows i64"),
            i64::try_from(y).expect("mapped coordinate overflows i64"),
        )
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &UnimodularMap) -> UnimodularMap {
        let [[a, b], [c, d]] = self.matrix;
        let [[e, f], [g, h]] = first.matrix;
        let t = self.apply(LatticePoint::new(first.translation[0], first.translation[1]));
        UnimodularMap {
            matrix: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
            translation: [t.x, t.y],
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.determinant();
        let [[a, b], [c, d]] = self.matrix;
        let inv = [[d * det, -b * det], [-c * det, a * det]];
        let lin = UnimodularMap { matrix: inv, translation: [0, 0] };
        let t = lin.apply(LatticePoint::new(self.translation[0], self.translation[1]));
        UnimodularMap { matrix: inv, translation: [-t.x, -t.y] }
    }

    /// Image of a convex polygon, re-canonicalized.
    pub fn apply_polygon(&self, poly: &ConvexPolygon) -> ConvexPolygon {
        let image: Vec<LatticePoint> = poly.vertices().iter().map(|&p| self.apply(p)).collect();
        convex_hull(&image).expect("nonempty polygon")
    }
}

fn dot(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

/// Lagrange-Gauss reduction of a basis of a rank-2 lattice. The result spans
/// the same lattice, satisfies `|b1| <= |b2|` and `2|<b1, b2>| <= |b1|^2`.
///
/// Panics if the input vectors are linearly dependent.
pub fn gauss_reduce(b1: [i64; 2], b2: [i64; 2]) -> ([i64; 2], [i64; 2]) {
    assert!(
        b1[0] as i128 * b2[1] as i128 != b1[1] as i128 * b2[0] as i128,
        "dependent basis vectors"
    );
    let (mut u, mut v) = (b1, b2);
    if dot(u, u) > dot(v, v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let q = round_div(dot(u, v), dot(u, u));
        let q = i64::try_from(q).expect("reduction coefficient overflows i64");
        v = [v[0] - q * u[0], v[1] - q * u[1]];
        if dot(v, v) >= dot(u, u) {
            return (u, v);
        }
        std::mem::swap(&mut u, &mut v);
    }
}

/// Nearest integer to `n / d` for `d > 0`, ties toward negative infinity.
fn round_div(n: i128, d: i128) -> i128 {
    (2 * n + d).div_euclid(2 * d)
}

/// A lattice-preserving map that places a polygon inside `[0, u] x [0, v]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxNormalization {
    pub map: UnimodularMap,
    pub u: i64,
    pub v: i64,
    pub twice_area: u128,
}

impl BoxNormalization {
    /// `u * v` divided by the polygon area.
    pub fn ratio(&self) -> f64 {
        2.0 * self.u as f64 * self.v as f64 / self.twice_area as f64
    }

    /// Whether `u * v <= factor * area`, checked exactly.
    pub fn within(&self, factor: u128) -> bool {
        2 * (self.u as u128 * self.v as u128) <= factor * self.twice_area
    }
}

/// Searches lattice bases adapted to each edge direction of the polygon (and
/// the coordinate axes) for the one whose bounding box is smallest.
///
/// For a primitive direction `d` with complement `e` (`det[d e] = 1`), the
/// coordinates of a point in the basis `(d, e - k d)` are `(alpha - k beta,
/// beta)`; the height `beta` is fixed by `d` and the integer shear `k`
/// minimizing the width of `alpha - k beta` is found by bisection on the
/// convex width function.
pub fn normalize_to_box(poly: &ConvexPolygon) -> Result<BoxNormalization> {
    if poly.is_degenerate() {
        return Err(Error::DegenerateInput { vertices: poly.vertex_count() });
    }
    let verts = poly.vertices();
    let n = verts.len();
    let mut directions: Vec<[i64; 2]> = vec![[1, 0], [0, 1]];
    for i in 0..n {
        let (p, q) = (verts[i], verts[(i + 1) % n]);
        directions.push(primitive([q.x - p.x, q.y - p.y]));
    }
    directions.push(diameter_direction(verts));

    let area2 = twice_area(poly);
    let mut best: Option<(u128, UnimodularMap, i64, i64)> = None;
    let mut seen: Vec<[i64; 2]> = Vec::new();
    for d in directions {
        let d = canonical_sign(d);
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        let (map, u, v) = fit_direction(verts, d);
        let uv = u as u128 * v as u128;
        if best.as_ref().is_none_or(|b| uv < b.0) {
            best = Some((uv, map, u, v));
        }
    }
    let (_, map, u, v) = best.expect("at least one direction");
    Ok(BoxNormalization { map, u, v, twice_area: area2 })
}

fn primitive(v: [i64; 2]) -> [i64; 2] {
    let (g, _, _) = ext_gcd(v[0], v[1]);
    [v[0] / g, v[1] / g]
}

fn canonical_sign(d: [i64; 2]) -> [i64; 2] {
    if d[0] < 0 || (d[0] == 0 && d[1] < 0) {
        [-d[0], -d[1]]
    } else {
        d
    }
}

fn diameter_direction(verts: &[LatticePoint]) -> [i64; 2] {
    let mut best = (0i128, [1i64, 0i64]);
    for (i, &p) in verts.iter().enumerate() {
        for &q in &verts[i + 1..] {
            let d = [q.x - p.x, q.y - p.y];
            let len = dot(d, d);
            if len > best.0 {
                best = (len, d);
            }
        }
    }
    primitive(best.1)
}

/// Best box for a fixed primitive direction `d`: returns the map and `(u, v)`.
fn fit_direction(verts: &[LatticePoint], d: [i64; 2]) -> (UnimodularMap, i64, i64) {
    // complement e with d.x*e.y - d.y*e.x = 1, size-reduced against d
    let (_, s, t) = ext_gcd(d[0], d[1]);
    let e = [-t, s];
    let q = i64::try_from(round_div(dot(d, e), dot(d, d))).expect("complement overflow");
    let e = [e[0] - q * d[0], e[1] - q * d[1]];
    // inverse of the basis matrix [d e]
    let to_basis = [[e[1], -e[0]], [-d[1], d[0]]];
    let coords: Vec<(i128, i128)> = verts
        .iter()
        .map(|p| {
            let alpha = to_basis[0][0] as i128 * p.x as i128 + to_basis[0][1] as i128 * p.y as i128;
            let beta = to_basis[1][0] as i128 * p.x as i128 + to_basis[1][1] as i128 * p.y as i128;
            (alpha, beta)
        })
        .collect();
    let width = |k: i128| {
        let (lo, hi) = coords.iter().fold((i128::MAX, i128::MIN), |(lo, hi), &(a, b)| {
            let s = a - k * b;
            (lo.min(s), hi.max(s))
        });
        hi - lo
    };
    let k = best_shear(&width, coords.iter().map(|&(a, _)| a.abs()).max().unwrap_or(0) + 1);
    let k64 = i64::try_from(k).expect("shear overflow");
    let sheared = [
        [to_basis[0][0] - k64 * to_basis[1][0], to_basis[0][1] - k64 * to_basis[1][1]],
        to_basis[1],
    ];
    let linear = UnimodularMap::new(sheared, [0, 0]).expect("basis change is unimodular");
    let image: Vec<LatticePoint> = verts.iter().map(|&p| linear.apply(p)).collect();
    let min_x = image.iter().map(|p| p.x).min().unwrap();
    let max_x = image.iter().map(|p| p.x).max().unwrap();
    let min_y = image.iter().map(|p| p.y).min().unwrap();
    let max_y = image.iter().map(|p| p.y).max().unwrap();
    let map = UnimodularMap { matrix: sheared, translation: [-min_x, -min_y] };
    (map, max_x - min_x, max_y - min_y)
}

/// Integer minimizer of a convex function on `[-bound, bound]`, choosing the
/// one closest to zero when the minimum is attained on an interval.
fn best_shear(f: &impl Fn(i128) -> i128, bound: i128) -> i128 {
    // first k with f(k+1) - f(k) >= threshold
    let search = |strict: bool| {
        let (mut lo, mut hi) = (-bound, bound);
        while lo < hi {
            let mid = lo + (hi - lo).div_euclid(2);
            let diff = f(mid + 1) - f(mid);
            if diff > 0 || (!strict && diff == 0) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };
    let first_min = search(false);
    let last_min = search(true);
    0i128.clamp(first_min, last_min.max(first_min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon_from_vertices;
    use crate::hyperbola::{enumerate_points, HyperbolaSpec};
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().copied().map(LatticePoint::from).collect()
    }

    fn assert_fits(poly: &ConvexPolygon, norm: &BoxNormalization) {
        for &p in poly.vertices() {
            let q = norm.map.apply(p);
            assert!(q.x >= 0 && q.x <= norm.u && q.y >= 0 && q.y <= norm.v, "{q} outside box");
        }
        assert_eq!(norm.map.determinant().abs(), 1);
    }

    #[test]
    fn unit_triangle_is_already_normal() {
        let tri = polygon_from_vertices(pts(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        let norm = normalize_to_box(&tri).unwrap();
        assert_eq!(norm.map, UnimodularMap::IDENTITY);
        assert_eq!((norm.u, norm.v), (1, 1));
        assert!(norm.within(4));
        assert!((norm.ratio() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_triangle_reduces_to_unit_box() {
        // the basis (21,13), (34,21) has determinant -1, so it spans Z^2
        let (b1, b2) = gauss_reduce([21, 13], [34, 21]);
        assert_eq!(dot(b1, b1), 1);
        assert_eq!(dot(b2, b2), 1);
        let tri = convex_hull(&pts(&[(0, 0), (21, 13), (34, 21)])).unwrap();
        assert_eq!(twice_area(&tri), 1);
        let norm = normalize_to_box(&tri).unwrap();
        assert_fits(&tri, &norm);
        assert_eq!((norm.u, norm.v), (1, 1));
    }

    #[test]
    fn rectangle_maps_by_translation() {
        let rect = polygon_from_vertices(pts(&[(3, 5), (10, 5), (10, 9), (3, 9)])).unwrap();
        let norm = normalize_to_box(&rect).unwrap();
        assert_eq!(norm.map.matrix(), [[1, 0], [0, 1]]);
        assert_eq!(norm.map.translation(), [-3, -5]);
        assert_eq!(2 * norm.u as u128 * norm.v as u128, twice_area(&rect));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let seg = convex_hull(&pts(&[(1, 1), (2, 2)])).unwrap();
        assert_eq!(normalize_to_box(&seg), Err(Error::DegenerateInput { vertices: 2 }));
    }

    #[test]
    fn gauss_reduce_examples() {
        let (u, v) = gauss_reduce([1, 0], [1000, 1]);
        assert_eq!((u, v), ([1, 0], [0, 1]));
        let (u, v) = gauss_reduce([4, 1], [1, 3]);
        assert!(dot(u, u) <= dot(v, v));
        assert!(2 * dot(u, v).abs() <= dot(u, u));
        // same lattice determinant
        assert_eq!((u[0] as i128 * v[1] as i128 - u[1] as i128 * v[0] as i128).abs(), 11);
    }

    #[test]
    fn map_algebra() {
        let f = UnimodularMap::new([[2, 1], [1, 1]], [3, -4]).unwrap();
        let g = UnimodularMap::new([[0, 1], [-1, 0]], [1, 1]).unwrap();
        let p = LatticePoint::new(7, -2);
        assert_eq!(f.inverse().apply(f.apply(p)), p);
        assert_eq!(g.compose(&f).apply(p), g.apply(f.apply(p)));
        assert!(UnimodularMap::new([[2, 0], [0, 1]], [0, 0]).is_err());
    }

    #[test]
    fn hyperbola_hulls_fit_relaxed_box() {
        for m in [7u64, 11, 30, 97, 210, 1009] {
            let h = convex_hull(&enumerate_points(&HyperbolaSpec::new(m, 1).unwrap())).unwrap();
            let norm = normalize_to_box(&h).unwrap();
            assert_fits(&h, &norm);
            assert!(norm.within(8), "m = {m}: ratio {}", norm.ratio());
        }
    }

    fn unimodular() -> impl Strategy<Value = UnimodularMap> {
        (-6i64..6, -6i64..6, -100i64..100, -100i64..100).prop_filter_map("det", |(a, b, tx, ty)| {
            // complete (a, b) to a unimodular matrix when gcd(a, b) = 1
            let (g, s, t) = ext_gcd(a, b);
            (g == 1).then(|| UnimodularMap::new([[a, b], [-t, s]], [tx, ty]).unwrap())
        })
    }

    proptest! {
        #[test]
        fn unimodular_invariance(cloud in prop::collection::vec((-30i64..30, -30i64..30), 3..30), map in unimodular()) {
            let points: Vec<LatticePoint> = cloud.into_iter().map(LatticePoint::from).collect();
            let hull = convex_hull(&points).unwrap();
            let mapped: Vec<LatticePoint> = points.iter().map(|&p| map.apply(p)).collect();
            let hull_of_image = convex_hull(&mapped).unwrap();
            prop_assert_eq!(&map.apply_polygon(&hull), &hull_of_image);
            prop_assert_eq!(twice_area(&hull_of_image), twice_area(&hull));
            prop_assert_eq!(hull_of_image.vertex_count(), hull.vertex_count());
        }

        #[test]
        fn normalization_fits_and_is_lattice_preserving(cloud in prop::collection::vec((-40i64..40, -40i64..40), 3..25)) {
            let points: Vec<LatticePoint> = cloud.into_iter().map(LatticePoint::from).collect();
            let hull = convex_hull(&points).unwrap();
            prop_assume!(!hull.is_degenerate());
            let norm = normalize_to_box(&hull).unwrap();
            assert_fits(&hull, &norm);
            prop_assert_eq!(twice_area(&norm.map.apply_polygon(&hull)), twice_area(&hull));
        }
    }
}
