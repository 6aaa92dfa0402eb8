//! Hull of `H_a(m)` from a pruned candidate set.
//!
//! Near the corner `(0, 0)` a hull vertex `(x, y)` has a small product `xy`,
//! and every point of `H_a(m)` has `xy = a + m*l` for some `l >= 0`. So the
//! vertices in the lower-left quadrant are among the divisor pairs of the
//! first few terms of the progression `a + m*l`. The other three quadrants
//! are brought to the lower-left one by the maps `Negate` (on `H_a`) and
//! `ReflectY` (onto `H_{m-a}`), which gives four candidate sets whose union is
//! hulled. The candidate set has size about `sqrt(m)` times polylog factors
//! once the cutoff drops below `m^2 / 4`.

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, ConvexPolygon};
use crate::hyperbola::{apply_symmetry, enumerate_points, HyperbolaSpec, SymmetryKind};
use crate::ntheory::{factorize, primes_up_to, divisors, Factorization};
use crate::point::{LatticePoint, PointSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HullMethod {
    Naive,
    Fast,
    Auto,
}

impl HullMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            HullMethod::Naive => "naive",
            HullMethod::Fast => "fast",
            HullMethod::Auto => "auto",
        }
    }
}

impl fmt::Display for HullMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HullMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(HullMethod::Naive),
            "fast" => Ok(HullMethod::Fast),
            "auto" => Ok(HullMethod::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown hull method {s:?}"))),
        }
    }
}

/// Tuning for the pruned hull.
///
/// The product bound is `cutoff_factor * m^{3/2} * (1 + ln m)^2`, evaluated
/// in floating point and floored; it stands in for `m^{3/2 + eps}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PruneConfig {
    pub cutoff_factor: f64,
    /// Below this modulus `Auto` enumerates every point.
    pub naive_threshold: u64,
    pub method: HullMethod,
}

impl Default for PruneConfig {
    fn default() -> Self {
        Self { cutoff_factor: 4.0, naive_threshold: 1000, method: HullMethod::Auto }
    }
}

impl PruneConfig {
    pub fn new(cutoff_factor: f64, naive_threshold: u64, method: HullMethod) -> Result<Self> {
        let cfg = Self { cutoff_factor, naive_threshold, method };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff_factor.is_finite() && self.cutoff_factor > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cutoff factor must be positive, got {}",
                self.cutoff_factor
            )));
        }
        if self.naive_threshold < 2 {
            return Err(Error::InvalidArgument("naive threshold must be at least 2".into()));
        }
        Ok(())
    }

    /// Product bound for modulus `m`, before quadrant clamping.
    pub fn cutoff(&self, m: u64) -> u64 {
        let mf = m as f64;
        let bound = self.cutoff_factor * mf.powf(1.5) * (1.0 + mf.ln()).powi(2);
        if bound >= u64::MAX as f64 {
            u64::MAX
        } else {
            (bound.floor() as u64).max(1)
        }
    }

    /// The method actually run for modulus `m`.
    pub fn resolve(&self, m: u64) -> HullMethod {
        match self.method {
            HullMethod::Auto if m < self.naive_threshold => HullMethod::Naive,
            HullMethod::Auto => HullMethod::Fast,
            other => other,
        }
    }
}

const CHUNK: usize = 1 << 14;
const SIEVE_LIMIT: u64 = 1 << 24;

/// All points of `H_a(m)` with `x * y <= cutoff` (a cutoff of 0 is treated as
/// 1), sorted. Terms `N = a + m*l` are factored and split into divisor pairs
/// `(d, N/d)` with both factors in `[1, m-1]`.
pub fn lower_left_candidates(spec: &HyperbolaSpec, cutoff: u64) -> PointSet {
    let (m, a) = (spec.m(), spec.a());
    let limit = cutoff.max(1).min((m - 1) * (m - 1));
    if limit < a {
        return Vec::new();
    }
    let count = ((limit - a) / m + 1) as usize;
    let root = (limit as f64).sqrt() as u64 + 1;
    let primes = (root <= SIEVE_LIMIT).then(|| primes_up_to(root));

    let chunks: Vec<usize> = (0..count).step_by(CHUNK).collect();
    let mut out: PointSet = chunks
        .par_iter()
        .flat_map_iter(|&first| {
            let len = CHUNK.min(count - first);
            let start = a + m * first as u64;
            let factored = match &primes {
                Some(primes) => sieve_progression(primes, start, m, len),
                None => (0..len as u64).map(|l| factorize(start + m * l)).collect(),
            };
            let mut pts = Vec::new();
            for (l, f) in factored.iter().enumerate() {
                let n = start + m * l as u64;
                for d in divisors(f) {
                    let e = n / d;
                    if d < m && e < m {
                        pts.push(LatticePoint::new(d as i64, e as i64));
                    }
                }
            }
            pts
        })
        .collect();
    out.par_sort_unstable();
    out
}

/// `crate::ntheory::factor_progression` with a precomputed prime list.
fn sieve_progression(primes: &[u64], start: u64, step: u64, count: usize) -> Vec<Factorization> {
    let last = start + step * (count as u64 - 1);
    let mut residual: Vec<u64> = (0..count as u64).map(|l| start + step * l).collect();
    let mut found: Vec<Vec<(u64, u32)>> = vec![Vec::new(); count];
    for &p in primes {
        if p * p > last {
            break;
        }
        if step % p == 0 {
            // p divides no term because gcd(a, m) = 1
            debug_assert!(start % p != 0);
            continue;
        }
        let inv = crate::ntheory::mod_inv(step as i64, p).expect("prime modulus");
        let first = crate::ntheory::mul_mod((p - start % p) % p, inv, p) as usize;
        let mut l = first;
        while l < count {
            let r = &mut residual[l];
            let mut e = 0;
            while *r % p == 0 {
                *r /= p;
                e += 1;
            }
            found[l].push((p, e));
            l += p as usize;
        }
    }
    found
        .into_iter()
        .zip(residual)
        .map(|(mut fs, r)| {
            if r > 1 {
                fs.push((r, 1));
            }
            Factorization::from_sorted_unchecked(fs)
        })
        .collect()
}

/// A hull together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullResult {
    pub polygon: ConvexPolygon,
    pub method: HullMethod,
    /// Distinct points handed to the hull routine.
    pub candidate_count: usize,
}

pub fn naive_hull(spec: &HyperbolaSpec) -> HullResult {
    let points = enumerate_points(spec);
    let candidate_count = points.len();
    let polygon = convex_hull(&points).expect("H_a(m) is nonempty");
    HullResult { polygon, method: HullMethod::Naive, candidate_count }
}

/// Candidate points for all four quadrants, deduplicated and sorted.
///
/// Each quadrant only keeps candidates lying in its closed quadrant, and the
/// product bound is clamped to `floor(m/2)^2`, which every point of the
/// closed lower-left quadrant already satisfies. The bound is never below
/// `m`, so `(1, a)` or `(1, m - a)` always survives and the set is nonempty.
pub fn quadrant_candidates(spec: &HyperbolaSpec, cutoff: u64) -> PointSet {
    let m = spec.m();
    let half = (m / 2) as i64;
    let cutoff = cutoff.min((half * half) as u64).max(m);
    let in_corner = |p: &LatticePoint| 2 * p.x <= m as i64 && 2 * p.y <= m as i64;
    let own: Vec<LatticePoint> = lower_left_candidates(spec, cutoff).into_iter().filter(in_corner).collect();
    let reflected: Vec<LatticePoint> = if spec.reflected() == *spec {
        own.clone()
    } else {
        lower_left_candidates(&spec.reflected(), cutoff).into_iter().filter(in_corner).collect()
    };
    let mut all = Vec::with_capacity(2 * (own.len() + reflected.len()));
    for &p in &own {
        all.push(p);
        all.push(apply_symmetry(SymmetryKind::Negate, p, m));
    }
    for &q in &reflected {
        all.push(apply_symmetry(SymmetryKind::ReflectY, q, m));
        let negated = apply_symmetry(SymmetryKind::Negate, q, m);
        all.push(apply_symmetry(SymmetryKind::ReflectY, negated, m));
    }
    all.sort_unstable();
    all.dedup();
    all
}

/// Hull of `H_a(m)` by the method selected in `cfg`. The fast path always
/// returns a sub-polygon of the true hull (its candidates are genuine
/// points) and returns the true hull whenever every vertex meets its
/// quadrant's product bound.
pub fn fast_hull(spec: &HyperbolaSpec, cfg: &PruneConfig) -> HullResult {
    match cfg.resolve(spec.m()) {
        HullMethod::Naive => naive_hull(spec),
        _ => {
            let candidates = quadrant_candidates(spec, cfg.cutoff(spec.m()));
            let polygon = convex_hull(&candidates).expect("(x, a/x) near the corner is always a candidate");
            HullResult { polygon, method: HullMethod::Fast, candidate_count: candidates.len() }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: u64,
    pub a: u64,
    pub cutoff: u64,
    pub naive_vertices: Vec<LatticePoint>,
    pub fast_vertices: Vec<LatticePoint>,
    pub equal: bool,
    /// True vertices absent from the pruned hull.
    pub missing: Vec<LatticePoint>,
    pub candidate_count: usize,
    /// Largest `x*y` over true vertices in `[1, m/2]^2`.
    pub max_lower_left_product: Option<u64>,
    /// Largest product over all true vertices, each measured in the frame
    /// of its own quadrant.
    pub max_quadrant_product: u64,
}

/// Runs the pruned path (whatever `cfg.method` says) against full
/// enumeration.
pub fn verify_against_naive(spec: &HyperbolaSpec, cfg: &PruneConfig) -> VerificationReport {
    let m = spec.m();
    let naive = naive_hull(spec);
    let cutoff = cfg.cutoff(m);
    let forced = PruneConfig { method: HullMethod::Fast, ..*cfg };
    let fast = fast_hull(spec, &forced);
    let naive_vertices = naive.polygon.vertices().to_vec();
    let fast_vertices = fast.polygon.vertices().to_vec();
    let missing: Vec<LatticePoint> =
        naive_vertices.iter().copied().filter(|v| !fast_vertices.contains(v)).collect();
    let mi = m as i64;
    let lower_left = naive_vertices
        .iter()
        .filter(|p| 2 * p.x <= mi && 2 * p.y <= mi)
        .map(|p| (p.x * p.y) as u64)
        .max();
    let max_quadrant_product = naive_vertices
        .iter()
        .map(|p| {
            let x = p.x.min(mi - p.x);
            let y = p.y.min(mi - p.y);
            (x * y) as u64
        })
        .max()
        .unwrap_or(0);
    VerificationReport {
        m,
        a: spec.a(),
        cutoff,
        equal: naive_vertices == fast_vertices,
        naive_vertices,
        fast_vertices,
        missing,
        candidate_count: fast.candidate_count,
        max_lower_left_product: lower_left,
        max_quadrant_product,
    }
}
