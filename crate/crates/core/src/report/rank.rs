use std::collections::HashMap;

use super::table::ReportRow;
use crate::error::{Error, Result};

/// Column a ranking is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKey {
    Basic,
    BasicH,
    BasicL,
}

impl RankKey {
    pub fn column(self) -> &'static str {
        match self {
            RankKey::Basic => "basic",
            RankKey::BasicH => "basic_h",
            RankKey::BasicL => "basic_l",
        }
    }

    /// The combined score when every row has it, else whichever half is present.
    pub fn for_rows(rows: &[ReportRow]) -> Option<RankKey> {
        [RankKey::Basic, RankKey::BasicH, RankKey::BasicL]
            .into_iter()
            .find(|k| !rows.is_empty() && rows.iter().all(|r| r.get(k.column()).is_some()))
    }
}

/// Row labels ordered best first. Scores are compared at 1e-6 resolution and
/// ties fall back to the label, so the order is total and reproducible.
pub fn ranking(rows: &[ReportRow], key: RankKey) -> Vec<String> {
    let mut keyed: Vec<(i64, String)> = rows
        .iter()
        .map(|r| {
            let v = r.get(key.column()).unwrap_or(f64::NEG_INFINITY);
            let q = if v.is_finite() {
                (v * 1e6).round() as i64
            } else {
                i64::MIN
            };
            (q, r.label())
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, l)| l).collect()
}

/// Kendall's tau-a between two strict orderings of the same items. Fewer than
/// two items give 1.
pub fn kendall_tau(a: &[String], b: &[String]) -> Result<f64> {
    let pos: HashMap<&str, usize> = b.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if a.len() != b.len() || pos.len() != b.len() {
        return Err(Error::MismatchedSets(format!(
            "{} vs {} items",
            a.len(),
            b.len()
        )));
    }
    let mapped = a
        .iter()
        .map(|s| {
            pos.get(s.as_str())
                .copied()
                .ok_or_else(|| Error::MismatchedSets(format!("`{s}` missing from one ranking")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = mapped.len();
    if n < 2 {
        return Ok(1.0);
    }
    let mut score = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            score += if mapped[i] < mapped[j] { 1 } else { -1 };
        }
    }
    Ok(score as f64 / (n * (n - 1) / 2) as f64)
}
