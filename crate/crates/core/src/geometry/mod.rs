//! Exact planar geometry on integer points: convex hulls, doubled areas,
//! windowed sub-polygon areas and lattice-preserving box normalization.
//!
//! All orientation predicates are evaluated in `i128`, so any coordinates
//! representable in `i64` with magnitude below 2^62 are handled exactly.

mod lattice;

pub use lattice::{gauss_reduce, normalize_to_box, BoxNormalization, UnimodularMap};

use crate::error::{Error, Result};
use crate::point::LatticePoint;
use serde::{Deserialize, Serialize};

/// Twice the signed area of the triangle `o, a, b`; positive for a left turn.
#[inline]
pub fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = (a.x as i128 - o.x as i128, a.y as i128 - o.y as i128);
    let (bx, by) = (b.x as i128 - o.x as i128, b.y as i128 - o.y as i128);
    ax * by - ay * bx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HullShape {
    Point,
    Segment,
    Polygon,
}

/// Strictly convex polygon with counterclockwise vertices starting at the
/// lexicographically smallest one. One- and two-vertex hulls are kept as
/// degenerate values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<LatticePoint>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<LatticePoint> {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn shape(&self) -> HullShape {
        match self.vertices.len() {
            1 => HullShape::Point,
            2 => HullShape::Segment,
            _ => HullShape::Polygon,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Whether `p` lies in the closed polygon.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => v[0] == p,
            2 => {
                cross(v[0], v[1], p) == 0
                    && p.x >= v[0].x.min(v[1].x)
                    && p.x <= v[0].x.max(v[1].x)
                    && p.y >= v[0].y.min(v[1].y)
                    && p.y <= v[0].y.max(v[1].y)
            }
            n => (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0),
        }
    }
}

/// Andrew's monotone chain. Points in the interior of an edge are dropped,
/// so the result holds exactly the extreme points.
pub fn convex_hull(points: &[LatticePoint]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("convex hull of an empty point set".into()));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(ConvexPolygon { vertices: pts });
    }
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    // all points collinear: the chain collapses to the two endpoints
    Ok(ConvexPolygon { vertices: hull })
}

/// Builds a polygon from vertices already in strictly convex counterclockwise
/// order, rotating them into canonical position.
pub fn polygon_from_vertices(vertices: Vec<LatticePoint>) -> Result<ConvexPolygon> {
    let n = vertices.len();
    if n == 0 {
        return Err(Error::InvalidArgument("polygon with no vertices".into()));
    }
    if n >= 3 && !(0..n).all(|i| cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) > 0) {
        return Err(Error::InvalidArgument("vertices are not strictly convex and counterclockwise".into()));
    }
    if n == 2 && vertices[0] == vertices[1] {
        return Err(Error::InvalidArgument("repeated vertex".into()));
    }
    let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
    let mut vertices = vertices;
    vertices.rotate_left(start);
    Ok(ConvexPolygon { vertices })
}

/// Shoelace sum of a closed vertex sequence.
fn shoelace(v: &[LatticePoint]) -> i128 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p.x as i128 * q.y as i128 - p.y as i128 * q.x as i128
        })
        .sum()
}

/// Exact doubled area; 0 for points and segments.
pub fn twice_area(poly: &ConvexPolygon) -> u128 {
    if poly.is_degenerate() {
        return 0;
    }
    shoelace(&poly.vertices).unsigned_abs()
}

/// Smallest doubled area among the `r` sub-polygons spanned by `k`
/// cyclically consecutive vertices.
pub fn consecutive_block_min_area(poly: &ConvexPolygon, k: usize) -> Result<u128> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("window size must be at least 3, got {k}")));
    }
    let v = &poly.vertices;
    let r = v.len();
    if r < k {
        return Err(Error::TooFewVertices { vertices: r, k });
    }
    let term = |i: usize, j: usize| {
        let (p, q) = (v[i % r], v[j % r]);
        p.x as i128 * q.y as i128 - p.y as i128 * q.x as i128
    };
    // prefix[i] = sum of edge terms (j, j+1) for j < i, over two laps
    let mut prefix = vec![0i128; 2 * r + 1];
    for i in 0..2 * r {
        prefix[i + 1] = prefix[i] + term(i, i + 1);
    }
    let best = (0..r)
        .map(|i| {
            let chain = prefix[i + k - 1] - prefix[i];
            (chain + term(i + k - 1, i)).unsigned_abs()
        })
        .min()
        .expect("r >= k >= 3");
    Ok(best)
}
