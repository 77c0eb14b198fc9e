//! Structural correspondence between two mask sets: IoU and AP at each
//! granularity and the weighted BASIC-L score.
//!
//! AP here is precision at a single IoU threshold: the share of candidate
//! labels (or instances) whose matched counterpart overlaps it by at least
//! `ap_iou_threshold`. Mean IoU counts unmatched labels or instances on either
//! side as zero.

use serde::{Deserialize, Serialize};

use crate::datamodel::{BinaryMask, EvalConfig, ForegroundMode, Granularity, MaskSet};
use crate::error::{Error, Result};
use crate::semmatch::{max_weight_assignment, TermMatcher};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GranularityScore {
    pub iou: f64,
    pub ap: f64,
}

impl GranularityScore {
    pub const PERFECT: GranularityScore = GranularityScore { iou: 1.0, ap: 1.0 };
    pub const ZERO: GranularityScore = GranularityScore { iou: 0.0, ap: 0.0 };
}

/// Scores for one image pair. IoU and AP are fractions; `basic_l` is in [0, 100].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GranularityScores {
    pub f: GranularityScore,
    pub b: GranularityScore,
    pub s: GranularityScore,
    pub i: GranularityScore,
    pub p: GranularityScore,
    pub basic_l: f64,
}

impl GranularityScores {
    pub fn get(&self, g: Granularity) -> GranularityScore {
        match g {
            Granularity::F => self.f,
            Granularity::B => self.b,
            Granularity::S => self.s,
            Granularity::I => self.i,
            Granularity::P => self.p,
        }
    }
}

/// Intersection over union; 1 when both masks are empty.
pub fn iou(a: &BinaryMask, b: &BinaryMask) -> Result<f64> {
    let union = a.union_area(b)?;
    if union == 0 {
        return Ok(1.0);
    }
    Ok(a.intersection_area(b)? as f64 / union as f64)
}

fn check_dims(cand: &MaskSet, refs: &MaskSet) -> Result<()> {
    if cand.dims() != refs.dims() {
        return Err(Error::DimensionMismatch {
            left: cand.dims(),
            right: refs.dims(),
        });
    }
    Ok(())
}

fn hit(iou: f64, threshold: f64) -> bool {
    iou >= threshold
}

/// Binary foreground/background agreement.
pub fn binary_score(cand: &MaskSet, refs: &MaskSet, ap_threshold: f64) -> Result<GranularityScore> {
    union_score(cand, refs, Granularity::B, ap_threshold)
}

fn union_score(
    cand: &MaskSet,
    refs: &MaskSet,
    g: Granularity,
    ap_threshold: f64,
) -> Result<GranularityScore> {
    check_dims(cand, refs)?;
    let v = iou(&cand.union_of(g), &refs.union_of(g))?;
    Ok(GranularityScore {
        iou: v,
        ap: if hit(v, ap_threshold) { 1.0 } else { 0.0 },
    })
}

/// Category-level scores at F or S: labels are aligned with the term matcher,
/// each aligned pair contributes the IoU of its two masks.
pub fn category_scores(
    cand: &MaskSet,
    refs: &MaskSet,
    g: Granularity,
    matcher: &TermMatcher,
    ap_threshold: f64,
) -> Result<GranularityScore> {
    check_dims(cand, refs)?;
    let (lc, lr) = (cand.labels(g), refs.labels(g));
    if lc.is_empty() && lr.is_empty() {
        return Ok(GranularityScore::PERFECT);
    }
    let pairs = matcher.match_terms(&lc, &lr);
    let mut sum = 0.0;
    let mut hits = 0usize;
    for p in &pairs {
        let a = cand.instances(g, lc[p.candidate])[0];
        let b = refs.instances(g, lr[p.reference])[0];
        let v = iou(a, b)?;
        sum += v;
        hits += usize::from(hit(v, ap_threshold));
    }
    let contributions = lc.len() + lr.len() - pairs.len();
    Ok(GranularityScore {
        iou: sum / contributions as f64,
        ap: if lc.is_empty() {
            0.0
        } else {
            hits as f64 / lc.len() as f64
        },
    })
}

/// Instance-level scores at I or P: labels are aligned as for categories, then
/// instances under each aligned label pair are paired by maximum total IoU.
pub fn instance_scores(
    cand: &MaskSet,
    refs: &MaskSet,
    g: Granularity,
    matcher: &TermMatcher,
    ap_threshold: f64,
) -> Result<GranularityScore> {
    check_dims(cand, refs)?;
    let (lc, lr) = (cand.labels(g), refs.labels(g));
    let n_cand = cand.at(g).count();
    let n_ref = refs.at(g).count();
    if n_cand == 0 && n_ref == 0 {
        return Ok(GranularityScore::PERFECT);
    }
    let mut sum = 0.0;
    let mut paired = 0usize;
    let mut hits = 0usize;
    for p in matcher.match_terms(&lc, &lr) {
        let a = cand.instances(g, lc[p.candidate]);
        let b = refs.instances(g, lr[p.reference]);
        let w = a
            .iter()
            .map(|x| b.iter().map(|y| iou(x, y)).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        for (r, c) in max_weight_assignment(&w) {
            sum += w[r][c];
            paired += 1;
            hits += usize::from(hit(w[r][c], ap_threshold));
        }
    }
    Ok(GranularityScore {
        iou: sum / (n_cand + n_ref - paired) as f64,
        ap: if n_cand == 0 {
            0.0
        } else {
            hits as f64 / n_cand as f64
        },
    })
}

/// Weighted sum of foreground, semantic, instance and part IoU with normalized
/// `beta`. Binary IoU is not part of the sum. The result has the scale of the
/// inputs.
pub fn basic_l(iou_f: f64, iou_s: f64, iou_i: f64, iou_p: f64, beta: [f64; 4]) -> f64 {
    beta[0] * iou_f + beta[1] * iou_s + beta[2] * iou_i + beta[3] * iou_p
}

pub fn score_masks(
    cand: &MaskSet,
    refs: &MaskSet,
    cfg: &EvalConfig,
    matcher: &TermMatcher,
) -> Result<GranularityScores> {
    let thr = cfg.ap_iou_threshold;
    let f = match cfg.foreground_mode {
        ForegroundMode::PerCategory => category_scores(cand, refs, Granularity::F, matcher, thr)?,
        ForegroundMode::Union => union_score(cand, refs, Granularity::F, thr)?,
    };
    let b = binary_score(cand, refs, thr)?;
    let s = category_scores(cand, refs, Granularity::S, matcher, thr)?;
    let i = instance_scores(cand, refs, Granularity::I, matcher, thr)?;
    let p = instance_scores(cand, refs, Granularity::P, matcher, thr)?;
    let score = 100.0 * basic_l(f.iou, s.iou, i.iou, p.iou, cfg.normalized_beta());
    Ok(GranularityScores {
        f,
        b,
        s,
        i,
        p,
        basic_l: score,
    })
}
