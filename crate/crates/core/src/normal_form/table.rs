//! Dimension tables and their golden-file form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::basis::{dim_count, grading, multidegrees};
use crate::error::{Error, Result};
use crate::named::NamedId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub degree: Vec<u32>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub algebra: String,
    pub grading: Vec<String>,
    pub entries: Vec<DimEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenMismatch {
    /// 1-based line number of the first difference.
    pub line: usize,
    pub expected: Option<String>,
    pub found: Option<String>,
}

impl std::fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |s: &Option<String>| s.clone().unwrap_or_else(|| "<end of file>".into());
        write!(f, "line {}: expected `{}`, computed `{}`", self.line, show(&self.expected), show(&self.found))
    }
}

impl DimTable {
    /// Label counts for every nonzero multidegree of total degree at most
    /// `max_total`.
    pub fn compute(id: &NamedId, max_total: u32) -> Result<Self> {
        if max_total == 0 {
            return Err(Error::InvalidParameter("maximum degree must be at least 1".into()));
        }
        let mut entries = Vec::new();
        for degree in multidegrees(id, max_total) {
            let dim = dim_count(id, &degree)?;
            entries.push(DimEntry { degree, dim });
        }
        Ok(Self { algebra: id.to_string(), grading: grading(id), entries })
    }

    /// One entry per line: `algebra`, `grading`, then `d₁ … d_k : dim`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "algebra {}", self.algebra).unwrap();
        writeln!(s, "grading {}", self.grading.join(" ")).unwrap();
        for e in &self.entries {
            let d: Vec<String> = e.degree.iter().map(u32::to_string).collect();
            writeln!(s, "{} : {}", d.join(" "), e.dim).unwrap();
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Syntax { pos: line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate();
        let algebra = match lines.next() {
            Some((_, l)) if l.starts_with("algebra ") => l["algebra ".len()..].to_string(),
            _ => return Err(bad(1, "expected `algebra <id>`")),
        };
        let grading = match lines.next() {
            Some((_, l)) if l.starts_with("grading") => l["grading".len()..].split_whitespace().map(String::from).collect(),
            _ => return Err(bad(2, "expected `grading <names>`")),
        };
        let mut entries = Vec::new();
        for (i, l) in lines {
            let (d, dim) = l.split_once(" : ").ok_or_else(|| bad(i + 1, "expected `<degrees> : <dim>`"))?;
            let degree = d.split_whitespace().map(|x| x.parse::<u32>().map_err(|_| bad(i + 1, "bad degree"))).collect::<Result<_>>()?;
            let dim = dim.trim().parse().map_err(|_| bad(i + 1, "bad dimension"))?;
            entries.push(DimEntry { degree, dim });
        }
        Ok(Self { algebra, grading, entries })
    }

    /// Compares the text form with a golden file byte for byte.
    pub fn compare_golden(&self, golden: &str) -> std::result::Result<(), GoldenMismatch> {
        compare_lines(golden, &self.to_text())
    }
}

/// First differing line of two texts; a missing final newline counts.
pub fn compare_lines(expected: &str, found: &str) -> std::result::Result<(), GoldenMismatch> {
    if expected == found {
        return Ok(());
    }
    let e: Vec<&str> = expected.split('\n').collect();
    let f: Vec<&str> = found.split('\n').collect();
    for i in 0..e.len().max(f.len()) {
        let (a, b) = (e.get(i), f.get(i));
        if a != b {
            return Err(GoldenMismatch { line: i + 1, expected: a.map(|s| s.to_string()), found: b.map(|s| s.to_string()) });
        }
    }
    unreachable!("texts differ but no line differs")
}
