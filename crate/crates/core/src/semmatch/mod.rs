//! Three-stage semantic matching and BASIC-H scoring.

mod assignment;
mod embedding;
mod graph;
mod lexicon;
mod matcher;
mod score;

pub use assignment::{max_weight_assignment, max_weight_assignment_masked, quantize};
pub use embedding::{cosine, EmbeddingTable};
pub use graph::{
    match_attributes, match_graphs, match_objects, match_relations, MatchReport, MatchedPair,
    TypeMatch,
};
pub use lexicon::SynonymLexicon;
pub use matcher::{Stage, TermMatcher, TermPair};
pub use score::{basic_h, prf, Counts, Prf};
