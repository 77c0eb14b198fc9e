use std::collections::BTreeMap;

use serde::Serialize;

use crate::datamodel::{AggregationMode, EvalConfig};
use crate::maskmatch::{GranularityScore, GranularityScores};
use crate::pipeline::{combined_basic, PairScores};
use crate::semmatch::{basic_h, Counts, Prf};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemanticSummary {
    pub objects: Prf,
    pub attributes: Prf,
    pub relations: Prf,
}

/// Scores of one (method, dataset) group. Sub-indicators are fractions;
/// `basic_*` are in [0, 100].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub method: String,
    pub dataset: String,
    pub pairs: usize,
    pub semantic: Option<SemanticSummary>,
    pub structural: Option<GranularityScores>,
    pub basic_h: Option<f64>,
    pub basic_l: Option<f64>,
    pub basic: Option<f64>,
}

fn mean<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let (sum, n) = xs
        .into_iter()
        .fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    sum / n as f64
}

fn mean_prf(xs: &[Prf]) -> Prf {
    Prf {
        precision: mean(xs.iter().map(|p| p.precision)),
        recall: mean(xs.iter().map(|p| p.recall)),
        f1: mean(xs.iter().map(|p| p.f1)),
    }
}

fn mean_granularity(xs: &[GranularityScores]) -> GranularityScores {
    let g = |f: fn(&GranularityScores) -> GranularityScore| GranularityScore {
        iou: mean(xs.iter().map(|x| f(x).iou)),
        ap: mean(xs.iter().map(|x| f(x).ap)),
    };
    GranularityScores {
        f: g(|x| x.f),
        b: g(|x| x.b),
        s: g(|x| x.s),
        i: g(|x| x.i),
        p: g(|x| x.p),
        basic_l: mean(xs.iter().map(|x| x.basic_l)),
    }
}

fn pooled(counts: impl Iterator<Item = Counts>) -> Prf {
    counts
        .fold(Counts::default(), |a, b| a + b)
        .prf()
        .expect("sums of valid counts stay valid")
}

/// Groups pair scores by (method, dataset), sorted by dataset then method.
///
/// Semantic sub-indicators are per-pair means, or ratios of summed counts in
/// pooled mode. Mask scores are always per-pair means.
pub fn aggregate(results: &[PairScores], cfg: &EvalConfig) -> Vec<MethodSummary> {
    let mut groups: BTreeMap<(&str, &str), Vec<&PairScores>> = BTreeMap::new();
    for r in results {
        groups.entry((&r.dataset, &r.method)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((dataset, method), mut rows)| {
            // fixed summation order, independent of input order
            rows.sort_by(|a, b| a.pair_id.cmp(&b.pair_id));
            let sem: Vec<_> = rows.iter().filter_map(|r| r.semantic).collect();
            let (semantic, bh) = if sem.is_empty() {
                (None, None)
            } else {
                match cfg.aggregation {
                    AggregationMode::PerPair => {
                        let pick = |f: fn(&crate::pipeline::SemanticScores) -> Prf| {
                            mean_prf(&sem.iter().map(f).collect::<Vec<_>>())
                        };
                        let s = SemanticSummary {
                            objects: pick(|s| s.objects),
                            attributes: pick(|s| s.attributes),
                            relations: pick(|s| s.relations),
                        };
                        (Some(s), Some(mean(sem.iter().map(|s| s.basic_h))))
                    }
                    AggregationMode::Pooled => {
                        let s = SemanticSummary {
                            objects: pooled(sem.iter().map(|s| s.object_counts)),
                            attributes: pooled(sem.iter().map(|s| s.attribute_counts)),
                            relations: pooled(sem.iter().map(|s| s.relation_counts)),
                        };
                        let h = 100.0
                            * basic_h(
                                s.objects.f1,
                                s.attributes.f1,
                                s.relations.f1,
                                cfg.normalized_alpha(),
                            );
                        (Some(s), Some(h))
                    }
                }
            };
            let seg: Vec<_> = rows.iter().filter_map(|r| r.structural).collect();
            let structural = (!seg.is_empty()).then(|| mean_granularity(&seg));
            let bl = structural.map(|g| g.basic_l);
            MethodSummary {
                method: method.to_string(),
                dataset: dataset.to_string(),
                pairs: rows.len(),
                semantic,
                structural,
                basic_h: bh,
                basic_l: bl,
                basic: bh.zip(bl).map(|(h, l)| combined_basic(h, l)),
            }
        })
        .collect()
}
