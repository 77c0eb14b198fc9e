//! Multigranular scoring of decoded images against their reference stimuli.
//!
//! Two complementary scores are computed for every (candidate, reference) pair:
//!
//! * **BASIC-H** compares semantic graphs (objects, attribute bindings and
//!   relation triples) parsed from captions of both images. Elements are
//!   aligned in three sequential stages (exact, synonym, embedding cosine) and
//!   scored with precision, recall and F1 per element type.
//! * **BASIC-L** compares segmentation masks at five granularities
//!   (foreground, binary, semantic, instance, part) with IoU and AP.
//!
//! The combined **BASIC** score is the mean of the two. The [`report`] module
//! aggregates per-pair scores into per-method tables and runs configuration
//! sweeps with Kendall rank-stability statistics.

pub mod datamodel;
pub mod error;
pub mod maskmatch;
pub mod pipeline;
pub mod report;
pub mod semgraph;
pub mod semmatch;

pub use datamodel::{
    EvalConfig, Granularity, GranularityAnnotation, MaskSet, PairRecord, RunManifest, SemanticGraph,
};
pub use error::{Error, Result};
