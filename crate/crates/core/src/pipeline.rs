//! Batch evaluation of a run manifest.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{
    load_graph, load_masks, EvalConfig, MaskSet, PairRecord, RunManifest, SemanticGraph,
};
use crate::error::{Error, Result};
use crate::maskmatch::{score_masks, GranularityScores};
use crate::semmatch::{
    match_graphs, Counts, EmbeddingTable, MatchReport, Prf, SynonymLexicon, TermMatcher,
};

/// Overall score: the mean of BASIC-H and BASIC-L.
pub fn combined_basic(basic_h: f64, basic_l: f64) -> f64 {
    (basic_h + basic_l) / 2.0
}

/// Which half of the metric to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scope {
    Semantic,
    Structural,
    #[default]
    Both,
}

impl Scope {
    pub fn semantic(self) -> bool {
        self != Scope::Structural
    }

    pub fn structural(self) -> bool {
        self != Scope::Semantic
    }
}

/// Per-type scores and counts from one graph comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemanticScores {
    pub objects: Prf,
    pub attributes: Prf,
    pub relations: Prf,
    pub object_counts: Counts,
    pub attribute_counts: Counts,
    pub relation_counts: Counts,
    pub basic_h: f64,
}

impl From<&MatchReport> for SemanticScores {
    fn from(r: &MatchReport) -> Self {
        SemanticScores {
            objects: r.objects.scores,
            attributes: r.attributes.scores,
            relations: r.relations.scores,
            object_counts: r.objects.counts,
            attribute_counts: r.attributes.counts,
            relation_counts: r.relations.counts,
            basic_h: r.basic_h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairScores {
    pub pair_id: String,
    pub method: String,
    pub dataset: String,
    pub semantic: Option<SemanticScores>,
    pub structural: Option<GranularityScores>,
    /// Mean of BASIC-H and BASIC-L when both were computed.
    pub basic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairResult {
    pub scores: PairScores,
    /// Element-level alignment, kept for inspection.
    pub matches: Option<MatchReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub pair_id: String,
    pub method: String,
    pub dataset: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Outcome {
    /// Sorted by pair id.
    pub results: Vec<PairResult>,
    /// Sorted by pair id.
    pub failures: Vec<PairFailure>,
}

/// Overrides for the directories that graph and mask paths resolve against.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Roots {
    pub graph_dir: Option<PathBuf>,
    pub mask_dir: Option<PathBuf>,
}

pub struct Evaluator {
    pub config: EvalConfig,
    pub lexicon: SynonymLexicon,
    pub embeddings: Option<EmbeddingTable>,
}

impl Evaluator {
    pub fn new(
        config: EvalConfig,
        lexicon: SynonymLexicon,
        embeddings: Option<EmbeddingTable>,
    ) -> Self {
        Evaluator {
            config,
            lexicon,
            embeddings,
        }
    }

    /// Loads the lexicon and embedding table named in `config`, if any.
    pub fn from_config(config: EvalConfig) -> Result<Self> {
        config.validate()?;
        let lexicon = match &config.lexicon_path {
            Some(p) => SynonymLexicon::load(p)?,
            None => SynonymLexicon::default(),
        };
        let embeddings = config
            .embeddings_path
            .as_deref()
            .map(EmbeddingTable::load)
            .transpose()?;
        Ok(Evaluator::new(config, lexicon, embeddings))
    }

    /// Same resources, different scoring parameters.
    pub fn with_config(&self, config: EvalConfig) -> Evaluator {
        Evaluator {
            config,
            lexicon: self.lexicon.clone(),
            embeddings: self.embeddings.clone(),
        }
    }

    pub fn matcher(&self) -> TermMatcher<'_> {
        TermMatcher::new(&self.lexicon, self.embeddings.as_ref(), self.config.tau_sem)
    }

    pub fn evaluate_loaded(
        &self,
        record: &PairRecord,
        graphs: Option<(&SemanticGraph, &SemanticGraph)>,
        masks: Option<(&MaskSet, &MaskSet)>,
    ) -> Result<PairResult> {
        let m = self.matcher();
        let matches = graphs.map(|(c, r)| match_graphs(c, r, &self.config, &m));
        let structural = masks
            .map(|(c, r)| score_masks(c, r, &self.config, &m))
            .transpose()?;
        let semantic = matches.as_ref().map(SemanticScores::from);
        let basic = match (&semantic, &structural) {
            (Some(s), Some(g)) => Some(combined_basic(s.basic_h, g.basic_l)),
            _ => None,
        };
        Ok(PairResult {
            scores: PairScores {
                pair_id: record.pair_id.clone(),
                method: record.method.clone(),
                dataset: record.dataset.clone(),
                semantic,
                structural,
                basic,
            },
            matches,
        })
    }

    pub fn evaluate_pair(
        &self,
        manifest: &RunManifest,
        record: &PairRecord,
        roots: &Roots,
        scope: Scope,
    ) -> Result<PairResult> {
        let path = |rel: &Path, root: &Option<PathBuf>| manifest.resolve(rel, root.as_deref());
        let graphs = if scope.semantic() {
            Some((
                load_graph(&path(&record.candidate_graph, &roots.graph_dir))?,
                load_graph(&path(&record.reference_graph, &roots.graph_dir))?,
            ))
        } else {
            None
        };
        let masks = if scope.structural() {
            Some((
                load_masks(&path(&record.candidate_masks, &roots.mask_dir))?,
                load_masks(&path(&record.reference_masks, &roots.mask_dir))?,
            ))
        } else {
            None
        };
        self.evaluate_loaded(
            record,
            graphs.as_ref().map(|(c, r)| (c, r)),
            masks.as_ref().map(|(c, r)| (c, r)),
        )
    }

    /// Evaluates every pair on a pool of `workers` threads. A pair that fails
    /// is recorded in [`Outcome::failures`] and does not stop the others.
    pub fn evaluate_manifest(
        &self,
        manifest: &RunManifest,
        roots: &Roots,
        scope: Scope,
        workers: usize,
    ) -> Result<Outcome> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
        let evaluated: Vec<(&PairRecord, Result<PairResult>)> = pool.install(|| {
            manifest
                .pairs
                .par_iter()
                .map(|p| (p, self.evaluate_pair(manifest, p, roots, scope)))
                .collect()
        });
        let mut out = Outcome::default();
        for (record, r) in evaluated {
            match r {
                Ok(res) => out.results.push(res),
                Err(e) => {
                    log::warn!("pair {}: {e}", record.pair_id);
                    out.failures.push(PairFailure {
                        pair_id: record.pair_id.clone(),
                        method: record.method.clone(),
                        dataset: record.dataset.clone(),
                        message: e.to_string(),
                    });
                }
            }
        }
        out.results
            .sort_by(|a, b| a.scores.pair_id.cmp(&b.scores.pair_id));
        out.failures.sort_by(|a, b| a.pair_id.cmp(&b.pair_id));
        Ok(out)
    }
}
