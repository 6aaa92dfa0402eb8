//! Batch sweeps of vertex counts `v_a(m)`, the `v_1(m) >= 2(tau(m-1) - 1)`
//! census, exponent summaries, CSV output and the on-disk record cache.

mod cache;
mod record;
mod sampling;
mod summary;

pub use cache::{CacheKey, SweepCache, CACHE_DIR_ENV, DEFAULT_CACHE_DIR};
pub use record::{exponent_of, format_sig6, norm512_of, write_csv, SweepRecord, CSV_HEADER};
pub use sampling::{sample_coprime, stream_for, APolicy};
pub use summary::{exponent_summary, ExponentSummary, GroupStats};

use crate::error::{Error, Result};
use crate::hullfast::{fast_hull, PruneConfig};
use crate::hyperbola::HyperbolaSpec;
use crate::ntheory::{factorize, tau, MAX_MODULUS};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
    /// Store measured wall time in `elapsed_ns`. Off by default so repeated
    /// sweeps produce identical output; the column is then 0.
    pub record_timing: bool,
}

fn check_range(m_min: u64, m_max: u64) -> Result<()> {
    if m_min < 2 || m_min > m_max {
        return Err(Error::InvalidArgument(format!("bad modulus range [{m_min}, {m_max}]")));
    }
    if m_max > MAX_MODULUS {
        return Err(Error::ModulusOutOfRange { m: m_max, max: MAX_MODULUS });
    }
    Ok(())
}

/// Hull and arithmetic data for a single `(m, a)`.
pub fn compute_record(spec: &HyperbolaSpec, cfg: &PruneConfig, record_timing: bool) -> SweepRecord {
    let m = spec.m();
    let start = Instant::now();
    let hull = fast_hull(spec, cfg);
    let elapsed = start.elapsed().as_nanos() as u64;
    let f = factorize(m);
    let v = hull.polygon.vertex_count() as u64;
    let kernel = f.kernel();
    let t = m / kernel;
    SweepRecord {
        m,
        a: spec.a(),
        v,
        phi: f.phi(),
        tau_m_minus_1: tau(m - 1),
        kernel,
        t,
        squarefree: t == 1,
        exponent: exponent_of(v, m),
        norm512: norm512_of(v, m, t),
        method: hull.method,
        candidate_count: hull.candidate_count as u64,
        elapsed_ns: if record_timing { elapsed } else { 0 },
    }
}

/// One record per `(m, a)` for `m` in `[m_min, m_max]` and `a` chosen by
/// `policy`, ordered by `(m, a)`.
pub fn run_sweep(m_min: u64, m_max: u64, policy: APolicy, cfg: &PruneConfig) -> Result<Vec<SweepRecord>> {
    run_sweep_with(m_min, m_max, policy, cfg, &SweepOptions::default(), None)
}

/// [`run_sweep`] with worker control and an optional cache. Cached records
/// are reused; fresh ones are added to the cache and flushed at the end.
pub fn run_sweep_with(
    m_min: u64,
    m_max: u64,
    policy: APolicy,
    cfg: &PruneConfig,
    opts: &SweepOptions,
    cache: Option<&mut SweepCache>,
) -> Result<Vec<SweepRecord>> {
    check_range(m_min, m_max)?;
    cfg.validate()?;
    let jobs: Vec<(u64, u64)> =
        (m_min..=m_max).flat_map(|m| policy.residues(m).into_iter().map(move |a| (m, a))).collect();

    let key_for = |m: u64, a: u64| CacheKey::new(m, a, cfg.resolve(m).as_str(), cfg.cutoff_factor);
    let mut done: Vec<SweepRecord> = Vec::with_capacity(jobs.len());
    let mut todo: Vec<(u64, u64)> = Vec::new();
    for &(m, a) in &jobs {
        match cache.as_deref().and_then(|c| c.get(&key_for(m, a))) {
            Some(r) => {
                let mut r = r.clone();
                if !opts.record_timing {
                    r.elapsed_ns = 0;
                }
                done.push(r);
            }
            None => todo.push((m, a)),
        }
    }

    let compute = || -> Vec<SweepRecord> {
        todo.par_iter()
            .map(|&(m, a)| {
                let spec = HyperbolaSpec::new(m, a as i64).expect("policy yields coprime residues");
                compute_record(&spec, cfg, opts.record_timing)
            })
            .collect()
    };
    let fresh = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };

    if let Some(c) = cache {
        for r in &fresh {
            c.insert(key_for(r.m, r.a), r.clone());
        }
        c.flush()?;
    }
    done.extend(fresh);
    done.sort_by_key(|r| (r.m, r.a));
    Ok(done)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub m: u64,
    pub v: u64,
    /// `2 (tau(m - 1) - 1)`
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub m_min: u64,
    pub m_max: u64,
    pub violations: Vec<CensusEntry>,
    /// Moduli where `v_1(m) = 2 (tau(m - 1) - 1)`.
    pub equality_count: u64,
    pub equality_cases: Vec<u64>,
}

/// Checks `v_1(m) >= 2 (tau(m - 1) - 1)` for every `m` in the range.
pub fn lower_bound_census(m_min: u64, m_max: u64) -> Result<Census> {
    lower_bound_census_with(m_min, m_max, &PruneConfig::default())
}

pub fn lower_bound_census_with(m_min: u64, m_max: u64, cfg: &PruneConfig) -> Result<Census> {
    check_range(m_min, m_max)?;
    let rows: Vec<CensusEntry> = (m_min..=m_max)
        .into_par_iter()
        .map(|m| {
            let spec = HyperbolaSpec::new(m, 1).expect("1 is a unit");
            let v = fast_hull(&spec, cfg).polygon.vertex_count() as u64;
            CensusEntry { m, v, bound: 2 * (tau(m - 1) - 1) }
        })
        .collect();
    let violations: Vec<CensusEntry> = rows.iter().filter(|r| r.v < r.bound).cloned().collect();
    let equality_cases: Vec<u64> = rows.iter().filter(|r| r.v == r.bound).map(|r| r.m).collect();
    Ok(Census { m_min, m_max, violations, equality_count: equality_cases.len() as u64, equality_cases })
}
