use crate::hullfast::HullMethod;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

/// One `(m, a)` row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: u64,
    pub a: u64,
    /// Number of hull vertices.
    pub v: u64,
    pub phi: u64,
    pub tau_m_minus_1: u64,
    pub kernel: u64,
    pub t: u64,
    pub squarefree: bool,
    /// `ln v / ln m`, 0 when `v = 1`.
    pub exponent: f64,
    /// `v / (t * m^(5/12))`
    pub norm512: f64,
    pub method: HullMethod,
    pub candidate_count: u64,
    pub elapsed_ns: u64,
}

pub const CSV_HEADER: &str =
    "m,a,v,phi,tau_m_minus_1,kernel,t,squarefree,exponent,norm512,method,candidate_count,elapsed_ns";

pub fn exponent_of(v: u64, m: u64) -> f64 {
    if v <= 1 {
        0.0
    } else {
        (v as f64).ln() / (m as f64).ln()
    }
}

pub fn norm512_of(v: u64, m: u64, t: u64) -> f64 {
    v as f64 / (t as f64 * (m as f64).powf(5.0 / 12.0))
}

/// `printf("%.6g")` formatting: six significant digits, trailing zeros
/// removed, scientific notation outside `[1e-4, 1e6)`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl SweepRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.m,
            self.a,
            self.v,
            self.phi,
            self.tau_m_minus_1,
            self.kernel,
            self.t,
            u8::from(self.squarefree),
            format_sig6(self.exponent),
            format_sig6(self.norm512),
            self.method,
            self.candidate_count,
            self.elapsed_ns
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_line())?;
    }
    out.flush()
}
