use std::collections::HashMap;

use serde::Serialize;

use super::matcher::{Stage, TermMatcher, TermPair};
use super::score::{basic_h, Counts, Prf};
use crate::datamodel::{
    Attribute, AttributeMode, EvalConfig, Relation, RelationMode, SemanticGraph,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair<T> {
    pub candidate_index: usize,
    pub reference_index: usize,
    pub candidate: T,
    pub reference: T,
    pub stage: Stage,
    pub similarity: f64,
}

/// Alignment and scores for one element type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeMatch<T> {
    pub pairs: Vec<MatchedPair<T>>,
    pub counts: Counts,
    pub scores: Prf,
}

impl<T: Clone> TypeMatch<T> {
    fn from_pairs(cand: &[T], refs: &[T], pairs: Vec<TermPair>) -> Self {
        let counts = Counts {
            matched: pairs.len(),
            candidate: cand.len(),
            reference: refs.len(),
        };
        let scores = counts.prf().expect("one-to-one pairing bounds the counts");
        TypeMatch {
            pairs: pairs
                .into_iter()
                .map(|p| MatchedPair {
                    candidate_index: p.candidate,
                    reference_index: p.reference,
                    candidate: cand[p.candidate].clone(),
                    reference: refs[p.reference].clone(),
                    stage: p.stage,
                    similarity: p.similarity,
                })
                .collect(),
            counts,
            scores,
        }
    }
}

/// Full semantic comparison of a candidate graph against a reference graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub objects: TypeMatch<String>,
    pub attributes: TypeMatch<Attribute>,
    pub relations: TypeMatch<Relation>,
    /// Reported for diagnosis only; not part of the weighted score.
    pub scene: TypeMatch<String>,
    pub camera: TypeMatch<String>,
    /// Weighted object/attribute/relation F1, in [0, 100].
    pub basic_h: f64,
}

pub fn match_objects(
    cand: &SemanticGraph,
    refg: &SemanticGraph,
    m: &TermMatcher,
) -> TypeMatch<String> {
    let pairs = m.match_terms(cand.objects(), refg.objects());
    TypeMatch::from_pairs(cand.objects(), refg.objects(), pairs)
}

/// Index lookup from candidate term to the reference term it was paired with.
fn pairing_map(cand: &[String], refs: &[String], pairs: &[TermPair]) -> HashMap<String, String> {
    pairs
        .iter()
        .map(|p| (cand[p.candidate].clone(), refs[p.reference].clone()))
        .collect()
}

/// Aligns attribute bindings.
///
/// Host-conditioned mode first aligns the two sets of host terms with the full
/// term matcher; a binding pair is then eligible only when its hosts were
/// paired with each other. Unconditioned mode ignores hosts. Counts always
/// include every binding on both sides.
pub fn match_attributes(
    cand: &SemanticGraph,
    refg: &SemanticGraph,
    mode: AttributeMode,
    m: &TermMatcher,
) -> TypeMatch<Attribute> {
    let (ca, ra) = (cand.attributes(), refg.attributes());
    let cv: Vec<&str> = ca.iter().map(|a| a.value.as_str()).collect();
    let rv: Vec<&str> = ra.iter().map(|a| a.value.as_str()).collect();
    let pairs = match mode {
        AttributeMode::Unconditioned => m.match_terms(&cv, &rv),
        AttributeMode::HostConditioned => {
            let (ch, rh) = (cand.attribute_hosts(), refg.attribute_hosts());
            let hosts = pairing_map(&ch, &rh, &m.match_terms(&ch, &rh));
            m.match_terms_where(&cv, &rv, |i, j| {
                hosts.get(&ca[i].host).is_some_and(|h| *h == ra[j].host)
            })
        }
    };
    TypeMatch::from_pairs(ca, ra, pairs)
}

/// Aligns relation triples.
///
/// Endpoint-consistent mode aligns all relation endpoints first; a triple pair
/// is eligible only when both subjects and both objects were paired with each
/// other, and eligible predicates go through the three-stage matcher. Direction
/// matters. Triple-string mode matches "subject predicate object" phrases.
pub fn match_relations(
    cand: &SemanticGraph,
    refg: &SemanticGraph,
    mode: RelationMode,
    m: &TermMatcher,
) -> TypeMatch<Relation> {
    let (cr, rr) = (cand.relations(), refg.relations());
    let pairs = match mode {
        RelationMode::TripleString => {
            let cs: Vec<String> = cr.iter().map(Relation::flattened).collect();
            let rs: Vec<String> = rr.iter().map(Relation::flattened).collect();
            m.match_terms(&cs, &rs)
        }
        RelationMode::EndpointConsistent => {
            let (ce, re) = (cand.relation_endpoints(), refg.relation_endpoints());
            let ends = pairing_map(&ce, &re, &m.match_terms(&ce, &re));
            let cp: Vec<&str> = cr.iter().map(|r| r.predicate.as_str()).collect();
            let rp: Vec<&str> = rr.iter().map(|r| r.predicate.as_str()).collect();
            m.match_terms_where(&cp, &rp, |i, j| {
                ends.get(&cr[i].subject)
                    .is_some_and(|s| *s == rr[j].subject)
                    && ends.get(&cr[i].object).is_some_and(|o| *o == rr[j].object)
            })
        }
    };
    TypeMatch::from_pairs(cr, rr, pairs)
}

pub fn match_graphs(
    cand: &SemanticGraph,
    refg: &SemanticGraph,
    cfg: &EvalConfig,
    m: &TermMatcher,
) -> MatchReport {
    let objects = match_objects(cand, refg, m);
    let attributes = match_attributes(cand, refg, cfg.attribute_mode, m);
    let relations = match_relations(cand, refg, cfg.relation_mode, m);
    let scene = TypeMatch::from_pairs(
        cand.scene(),
        refg.scene(),
        m.match_terms(cand.scene(), refg.scene()),
    );
    let camera = TypeMatch::from_pairs(
        cand.camera(),
        refg.camera(),
        m.match_terms(cand.camera(), refg.camera()),
    );
    let score = 100.0
        * basic_h(
            objects.scores.f1,
            attributes.scores.f1,
            relations.scores.f1,
            cfg.normalized_alpha(),
        );
    MatchReport {
        objects,
        attributes,
        relations,
        scene,
        camera,
        basic_h: score,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semmatch::{EmbeddingTable, SynonymLexicon};
    use std::path::Path;

    fn fixtures() -> (SynonymLexicon, EmbeddingTable) {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        (
            SynonymLexicon::load(&dir.join("lexicon.json")).unwrap(),
            EmbeddingTable::load(&dir.join("embeddings.txt")).unwrap(),
        )
    }

    #[test]
    fn identical_graphs_score_perfect() {
        let (lex, emb) = fixtures();
        let m = TermMatcher::new(&lex, Some(&emb), 0.8);
        let g = SemanticGraph::builder()
            .objects(["boat", "water", "sky"])
            .attribute("boat", "white")
            .attribute("boat", "large")
            .attribute("sky", "white")
            .relation("boat", "on", "water")
            .relation("boat", "under", "sky")
            .scene("harbor")
            .build();
        let r = match_graphs(&g, &g, &EvalConfig::default(), &m);
        for s in [
            r.objects.scores,
            r.attributes.scores,
            r.relations.scores,
            r.scene.scores,
        ] {
            assert_eq!(s, Prf::PERFECT);
        }
        assert_eq!(r.attributes.counts.matched, 3);
        assert_eq!(r.basic_h, 100.0);
    }

    #[test]
    fn attributes_on_unmatched_hosts_score_zero() {
        let lex = SynonymLexicon::default();
        let m = TermMatcher::new(&lex, None, 0.8);
        let c = SemanticGraph::builder().attribute("zxqv", "white").build();
        let r = SemanticGraph::builder().attribute("boat", "white").build();
        let t = match_attributes(&c, &r, AttributeMode::HostConditioned, &m);
        assert_eq!(
            t.counts,
            Counts {
                matched: 0,
                candidate: 1,
                reference: 1
            }
        );
        assert_eq!(t.scores.precision, 0.0);
        let u = match_attributes(&c, &r, AttributeMode::Unconditioned, &m);
        assert_eq!(u.counts.matched, 1);
    }

    #[test]
    fn relation_synonym_and_direction() {
        let lex = SynonymLexicon::from_synsets([["next to", "beside"]]);
        let m = TermMatcher::new(&lex, None, 0.8);
        let c = SemanticGraph::builder()
            .relation("a", "next to", "b")
            .build();
        let r = SemanticGraph::builder()
            .relation("a", "beside", "b")
            .build();
        let t = match_relations(&c, &r, RelationMode::EndpointConsistent, &m);
        assert_eq!(t.pairs.len(), 1);
        assert_eq!(t.pairs[0].stage, Stage::Synonym);

        let fwd = SemanticGraph::builder().relation("a", "on", "b").build();
        let rev = SemanticGraph::builder().relation("b", "on", "a").build();
        assert!(
            match_relations(&fwd, &rev, RelationMode::EndpointConsistent, &m)
                .pairs
                .is_empty()
        );
    }

    #[test]
    fn triple_string_mode() {
        let lex = SynonymLexicon::default();
        let m = TermMatcher::new(&lex, None, 0.8);
        let g = SemanticGraph::builder()
            .relation("people", "play", "volleyball")
            .relation("sea", "under", "sun")
            .build();
        let r = SemanticGraph::builder()
            .relation("people", "play", "volleyball")
            .build();
        let t = match_relations(&g, &r, RelationMode::TripleString, &m);
        assert_eq!(
            t.counts,
            Counts {
                matched: 1,
                candidate: 2,
                reference: 1
            }
        );
        assert_eq!(t.pairs[0].candidate.flattened(), "people play volleyball");
    }
}
