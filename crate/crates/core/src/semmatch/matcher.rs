use serde::Serialize;

use super::assignment::max_weight_assignment_masked;
use super::embedding::{cosine, EmbeddingTable};
use super::lexicon::SynonymLexicon;

/// Stage at which a pair was aligned, in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Exact,
    Synonym,
    Semantic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermPair {
    pub candidate: usize,
    pub reference: usize,
    pub stage: Stage,
    pub similarity: f64,
}

/// Three-stage term aligner: exact, then synonym, then embedding cosine.
///
/// Each stage runs on the terms the previous stages left unpaired and solves
/// a maximum-weight one-to-one assignment, so a pair made early is never
/// revoked. Exact and synonym stages maximize the number of pairs; the
/// semantic stage maximizes total cosine over pairs at or above `tau_sem`.
#[derive(Debug, Clone, Copy)]
pub struct TermMatcher<'a> {
    pub lexicon: &'a SynonymLexicon,
    pub embeddings: Option<&'a EmbeddingTable>,
    pub tau_sem: f64,
}

impl<'a> TermMatcher<'a> {
    pub fn new(
        lexicon: &'a SynonymLexicon,
        embeddings: Option<&'a EmbeddingTable>,
        tau_sem: f64,
    ) -> Self {
        TermMatcher {
            lexicon,
            embeddings,
            tau_sem,
        }
    }

    /// Cosine similarity of two terms clamped to [0, 1]; `None` if either has
    /// no embedding.
    pub fn similarity(&self, a: &str, b: &str) -> Option<f64> {
        let emb = self.embeddings?;
        let (x, y) = (emb.embed_term(a)?, emb.embed_term(b)?);
        Some(cosine(&x, &y).clamp(0.0, 1.0))
    }

    pub fn match_terms<S: AsRef<str>>(&self, candidates: &[S], references: &[S]) -> Vec<TermPair> {
        self.match_terms_where(candidates, references, |_, _| true)
    }

    /// Aligns terms, only considering (candidate, reference) index pairs for
    /// which `eligible` holds. Pairs are returned sorted by candidate index.
    pub fn match_terms_where<S: AsRef<str>>(
        &self,
        candidates: &[S],
        references: &[S],
        eligible: impl Fn(usize, usize) -> bool,
    ) -> Vec<TermPair> {
        let (n, m) = (candidates.len(), references.len());
        let mut pairs = Vec::new();
        if n == 0 || m == 0 {
            return pairs;
        }
        let allowed: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..m).map(|j| eligible(i, j)).collect())
            .collect();
        let mut cand_free = vec![true; n];
        let mut ref_free = vec![true; m];

        let mut run_stage = |stage: Stage, weight: &dyn Fn(usize, usize) -> Option<f64>| {
            let rows: Vec<usize> = (0..n).filter(|&i| cand_free[i]).collect();
            let cols: Vec<usize> = (0..m).filter(|&j| ref_free[j]).collect();
            let w: Vec<Vec<Option<f64>>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| if allowed[i][j] { weight(i, j) } else { None })
                        .collect()
                })
                .collect();
            for (r, c) in max_weight_assignment_masked(&w) {
                let (i, j) = (rows[r], cols[c]);
                cand_free[i] = false;
                ref_free[j] = false;
                pairs.push(TermPair {
                    candidate: i,
                    reference: j,
                    stage,
                    similarity: w[r][c].expect("assigned cells are weighted").min(1.0),
                });
            }
        };

        let term = |s: &S| s.as_ref().to_string();
        let cand: Vec<String> = candidates.iter().map(term).collect();
        let refs: Vec<String> = references.iter().map(term).collect();

        run_stage(Stage::Exact, &|i, j| (cand[i] == refs[j]).then_some(1.0));
        run_stage(Stage::Synonym, &|i, j| {
            self.lexicon.are_synonyms(&cand[i], &refs[j]).then_some(1.0)
        });
        if let Some(emb) = self.embeddings {
            let cv: Vec<Option<Vec<f64>>> = cand.iter().map(|t| emb.embed_term(t)).collect();
            let rv: Vec<Option<Vec<f64>>> = refs.iter().map(|t| emb.embed_term(t)).collect();
            let tau = self.tau_sem;
            run_stage(Stage::Semantic, &|i, j| {
                let s = cosine(cv[i].as_ref()?, rv[j].as_ref()?).clamp(0.0, 1.0);
                (s >= tau && s > 0.0).then_some(s)
            });
        }

        pairs.sort_by_key(|p| p.candidate);
        pairs
    }
}
