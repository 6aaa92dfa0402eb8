use super::record::{format_sig6, SweepRecord};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    pub label: String,
    pub count: usize,
    pub max_exponent: f64,
    pub mean_exponent: f64,
    /// `(m, a)` attaining `max_exponent` (first in sweep order).
    pub argmax: (u64, u64),
    pub max_norm512: f64,
    pub mean_norm512: f64,
}

impl GroupStats {
    fn of(label: String, records: &[&SweepRecord]) -> Self {
        let n = records.len();
        let mut best = records[0];
        for r in records {
            if r.exponent > best.exponent {
                best = r;
            }
        }
        GroupStats {
            label,
            count: n,
            max_exponent: best.exponent,
            mean_exponent: records.iter().map(|r| r.exponent).sum::<f64>() / n as f64,
            argmax: (best.m, best.a),
            max_norm512: records.iter().map(|r| r.norm512).fold(f64::MIN, f64::max),
            mean_norm512: records.iter().map(|r| r.norm512).sum::<f64>() / n as f64,
        }
    }
}

/// Exponent statistics overall, split by the squarefree flag, and split by
/// dyadic ranges `[2^k, 2^(k+1))` of `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentSummary {
    pub overall: GroupStats,
    pub squarefree: Option<GroupStats>,
    pub non_squarefree: Option<GroupStats>,
    pub dyadic: Vec<GroupStats>,
}

pub fn exponent_summary(records: &[SweepRecord]) -> Result<ExponentSummary> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records to summarize".into()));
    }
    let all: Vec<&SweepRecord> = records.iter().collect();
    let group = |label: &str, pred: &dyn Fn(&SweepRecord) -> bool| {
        let sel: Vec<&SweepRecord> = records.iter().filter(|r| pred(r)).collect();
        (!sel.is_empty()).then(|| GroupStats::of(label.to_string(), &sel))
    };
    let mut dyadic = Vec::new();
    let lo = records.iter().map(|r| r.m.ilog2()).min().unwrap();
    let hi = records.iter().map(|r| r.m.ilog2()).max().unwrap();
    for k in lo..=hi {
        let label = format!("[2^{k}, 2^{})", k + 1);
        if let Some(g) = group(&label, &|r| r.m.ilog2() == k) {
            dyadic.push(g);
        }
    }
    Ok(ExponentSummary {
        overall: GroupStats::of("all".into(), &all),
        squarefree: group("squarefree", &|r| r.squarefree),
        non_squarefree: group("non-squarefree", &|r| !r.squarefree),
        dyadic,
    })
}

impl ExponentSummary {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<18} {:>8} {:>10} {:>10} {:>16} {:>10} {:>10}", "group", "count", "max_exp", "mean_exp", "argmax (m,a)", "max_n512", "mean_n512");
        let mut row = |g: &GroupStats| {
            let _ = writeln!(
                out,
                "{:<18} {:>8} {:>10} {:>10} {:>16} {:>10} {:>10}",
                g.label,
                g.count,
                format_sig6(g.max_exponent),
                format_sig6(g.mean_exponent),
                format!("({},{})", g.argmax.0, g.argmax.1),
                format_sig6(g.max_norm512),
                format_sig6(g.mean_norm512)
            );
        };
        row(&self.overall);
        for g in [&self.squarefree, &self.non_squarefree].into_iter().flatten() {
            row(g);
        }
        for g in &self.dyadic {
            row(g);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
