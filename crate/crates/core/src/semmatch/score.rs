use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub matched: usize,
    pub candidate: usize,
    pub reference: usize,
}

impl Counts {
    pub fn prf(&self) -> Result<Prf> {
        prf(self.matched, self.candidate, self.reference)
    }
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            matched: self.matched + o.matched,
            candidate: self.candidate + o.candidate,
            reference: self.reference + o.reference,
        }
    }
}

/// Precision, recall and F1 as fractions in [0, 1].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    pub const PERFECT: Prf = Prf {
        precision: 1.0,
        recall: 1.0,
        f1: 1.0,
    };
    pub const ZERO: Prf = Prf {
        precision: 0.0,
        recall: 0.0,
        f1: 0.0,
    };
}

/// Precision = matched / candidate, recall = matched / reference, F1 their
/// harmonic mean.
///
/// Degenerate denominators: both sides empty scores 1 everywhere; exactly one
/// empty side scores 0 everywhere (hallucination against an empty reference and
/// total omission are both penalized).
pub fn prf(matched: usize, candidate: usize, reference: usize) -> Result<Prf> {
    if matched > candidate.min(reference) {
        return Err(Error::InvalidCounts {
            matched,
            candidate,
            reference,
        });
    }
    if candidate == 0 && reference == 0 {
        return Ok(Prf::PERFECT);
    }
    if candidate == 0 || reference == 0 {
        return Ok(Prf::ZERO);
    }
    let precision = matched as f64 / candidate as f64;
    let recall = matched as f64 / reference as f64;
    // 2PR/(P+R) reduces to 2m/(c+r); the count form is exact when P == R
    let f1 = if matched == 0 {
        0.0
    } else {
        (2 * matched) as f64 / (candidate + reference) as f64
    };
    Ok(Prf {
        precision,
        recall,
        f1,
    })
}

/// Weighted sum of object, attribute and relation F1. `alpha` must already be
/// normalized; the result has the scale of the inputs.
pub fn basic_h(f1_object: f64, f1_attribute: f64, f1_relation: f64, alpha: [f64; 3]) -> f64 {
    alpha[0] * f1_object + alpha[1] * f1_attribute + alpha[2] * f1_relation
}
