//! Domain types, file formats and validated ingestion.

mod annotation;
mod config;
mod graph;
mod json;
mod manifest;
mod mask;
mod maskset;
mod term;

pub use annotation::{
    annotation_to_prompt_labels, load_annotation, BackgroundElement, ForegroundObject,
    GranularityAnnotation, PromptLabels,
};
pub use config::{
    load_config, parse_weights, AggregationMode, AttributeMode, EvalConfig, ForegroundMode,
    RelationMode,
};
pub use graph::{load_graph, save_graph, Attribute, GraphBuilder, Relation, SemanticGraph};
pub use manifest::{load_manifest, PairRecord, RunManifest};
pub use mask::{rle_decode, rle_encode, BinaryMask};
pub use maskset::{load_masks, save_masks, Granularity, MaskEntry, MaskSet};
pub use term::normalize_term;

use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
