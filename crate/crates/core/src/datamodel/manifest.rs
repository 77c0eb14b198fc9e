use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One (candidate, reference) image pair with the files describing both sides.
/// Relative paths resolve against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub pair_id: String,
    pub method: String,
    pub dataset: String,
    pub candidate_graph: PathBuf,
    pub reference_graph: PathBuf,
    pub candidate_masks: PathBuf,
    pub reference_masks: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestObject {
    #[serde(default)]
    config: Option<PathBuf>,
    #[serde(default)]
    output_dir: Option<PathBuf>,
    pairs: Vec<PairRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum ManifestDoc {
    Pairs(Vec<PairRecord>),
    Full(ManifestObject),
}

/// A batch of pairs plus optional config and output locations. The manifest
/// file is either a bare array of pair records or an object with `pairs`,
/// `config` and `output_dir` keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub config: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub pairs: Vec<PairRecord>,
    /// Directory that relative paths are resolved against.
    pub base_dir: PathBuf,
}

impl RunManifest {
    pub fn from_json_str(path: &Path, text: &str, base_dir: &Path) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::MalformedFile {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        let doc: ManifestDoc = serde_json::from_value(value).map_err(|e| {
            Error::schema(
                path,
                "$",
                format!("not a pair list or manifest object: {e}"),
            )
        })?;
        let (config, output_dir, pairs) = match doc {
            ManifestDoc::Pairs(p) => (None, None, p),
            ManifestDoc::Full(m) => (m.config, m.output_dir, m.pairs),
        };
        let mut seen = HashSet::new();
        for (i, p) in pairs.iter().enumerate() {
            if !seen.insert(p.pair_id.as_str()) {
                return Err(Error::DuplicateEntry {
                    path: path.to_path_buf(),
                    location: format!("pairs[{i}].pair_id"),
                    key: p.pair_id.clone(),
                });
            }
        }
        Ok(RunManifest {
            config: config.map(|c| base_dir.join(c)),
            output_dir: output_dir.map(|o| base_dir.join(o)),
            pairs,
            base_dir: base_dir.to_path_buf(),
        })
    }

    /// Resolves a path from a pair record against `root`, defaulting to the
    /// manifest directory.
    pub fn resolve(&self, rel: &Path, root: Option<&Path>) -> PathBuf {
        root.unwrap_or(&self.base_dir).join(rel)
    }
}

pub fn load_manifest(path: &Path) -> Result<RunManifest> {
    let text = super::read_text(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    RunManifest::from_json_str(path, &text, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = r#"{"pair_id":"p1","method":"m","dataset":"d",
        "candidate_graph":"c.json","reference_graph":"r.json",
        "candidate_masks":"cm.json","reference_masks":"rm.json"}"#;

    #[test]
    fn bare_array_and_object_forms() {
        let base = Path::new("/runs");
        let a = RunManifest::from_json_str(Path::new("m"), &format!("[{PAIR}]"), base).unwrap();
        assert_eq!(a.pairs.len(), 1);
        assert_eq!(
            a.resolve(&a.pairs[0].candidate_graph, None),
            Path::new("/runs/c.json")
        );
        let o = RunManifest::from_json_str(
            Path::new("m"),
            &format!(r#"{{"config":"cfg.json","pairs":[{PAIR}]}}"#),
            base,
        )
        .unwrap();
        assert_eq!(o.config.unwrap(), Path::new("/runs/cfg.json"));
    }

    #[test]
    fn duplicate_pair_ids() {
        let err =
            RunManifest::from_json_str(Path::new("m"), &format!("[{PAIR},{PAIR}]"), Path::new("."))
                .unwrap_err();
        assert!(matches!(err, Error::DuplicateEntry { .. }));
    }
}
