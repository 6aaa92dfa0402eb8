//! Integer points and the plain-text point list format: one point per line,
//! two base-10 integers separated by a single space, each line terminated by
//! `\n`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub type PointSet = Vec<LatticePoint>;

pub fn format_points(points: &[LatticePoint]) -> String {
    let mut out = String::with_capacity(points.len() * 12);
    for p in points {
        out.push_str(&p.x.to_string());
        out.push(' ');
        out.push_str(&p.y.to_string());
        out.push('\n');
    }
    out
}

/// Parses the point list format strictly: exactly one space between the
/// coordinates, no blank lines, and a trailing newline after the last point.
pub fn parse_points(text: &str) -> Result<PointSet> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let body = text.strip_suffix('\n').ok_or_else(|| Error::Parse {
        line: text.lines().count(),
        msg: "missing trailing newline".into(),
    })?;
    body.split('\n')
        .enumerate()
        .map(|(i, line)| {
            let bad = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let (xs, ys) = line.split_once(' ').ok_or_else(|| bad("expected two integers"))?;
            let parse = |s: &str| -> Result<i64> {
                let digits = s.strip_prefix('-').unwrap_or(s);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad(&format!("not a base-10 integer: {s:?}")));
                }
                s.parse().map_err(|_| bad(&format!("integer out of range: {s:?}")))
            };
            Ok(LatticePoint::new(parse(xs)?, parse(ys)?))
        })
        .collect()
}
