use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::datamodel::{GraphBuilder, SemanticGraph};
use crate::error::{Error, Result};

/// Elements an external parser extracted from one sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParse {
    pub sentence_index: usize,
    #[serde(default)]
    pub objects: Vec<String>,
    /// (host, attribute) pairs.
    #[serde(default)]
    pub attributes: Vec<(String, String)>,
    /// (subject, predicate, object) triples.
    #[serde(default)]
    pub relations: Vec<(String, String, String)>,
}

/// Merges sentence parses into one graph.
///
/// Mentions of the same normalized term in different sentences become one
/// object, attributes stay bound to their stated host, relation triples keep
/// their direction, and exact duplicates collapse. The result does not depend
/// on the order of `parses`.
pub fn consolidate(parses: &[RawParse]) -> SemanticGraph {
    let mut b = GraphBuilder::default();
    for p in parses {
        b = b.objects(p.objects.iter().map(String::as_str));
        for (host, attr) in &p.attributes {
            b = b.attribute(host, attr);
        }
        for (s, pred, o) in &p.relations {
            b = b.relation(s, pred, o);
        }
    }
    b.build()
}

/// Reads a JSON array of [`RawParse`] records for one caption.
pub fn load_raw_parses(path: &Path) -> Result<Vec<RawParse>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
