use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttributeMode {
    /// Attributes are comparable only when their hosts are matched.
    #[default]
    HostConditioned,
    /// Attribute terms are matched globally, ignoring hosts.
    Unconditioned,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationMode {
    /// Triples are comparable only when subject and object endpoints match.
    #[default]
    EndpointConsistent,
    /// Each triple is flattened to "s p o" and matched as one term.
    TripleString,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForegroundMode {
    /// Foreground IoU averaged over matched foreground categories.
    #[default]
    PerCategory,
    /// Foreground IoU of the union of all foreground masks.
    Union,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationMode {
    /// Mean of per-pair scores.
    #[default]
    PerPair,
    /// Counts pooled across pairs before computing precision/recall/F1.
    Pooled,
}

/// Scoring configuration. Weights are stored as given and normalized on use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Object, attribute and relation F1 weights.
    pub alpha: [f64; 3],
    /// Foreground, semantic, instance and part IoU weights.
    pub beta: [f64; 4],
    /// Minimum cosine similarity for embedding-stage matches.
    pub tau_sem: f64,
    /// IoU a matched mask pair needs to count as a hit in AP.
    pub ap_iou_threshold: f64,
    pub box_threshold: f64,
    pub text_threshold: f64,
    pub attribute_mode: AttributeMode,
    pub relation_mode: RelationMode,
    pub foreground_mode: ForegroundMode,
    pub aggregation: AggregationMode,
    pub lexicon_path: Option<PathBuf>,
    pub embeddings_path: Option<PathBuf>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            alpha: [4.0, 4.0, 2.0],
            beta: [3.0, 2.5, 2.5, 2.0],
            tau_sem: 0.80,
            ap_iou_threshold: 0.50,
            box_threshold: 0.25,
            text_threshold: 0.30,
            attribute_mode: AttributeMode::default(),
            relation_mode: RelationMode::default(),
            foreground_mode: ForegroundMode::default(),
            aggregation: AggregationMode::default(),
            lexicon_path: None,
            embeddings_path: None,
        }
    }
}

fn normalized<const N: usize>(w: [f64; N]) -> [f64; N] {
    let sum: f64 = w.iter().sum();
    w.map(|x| x / sum)
}

impl EvalConfig {
    pub fn normalized_alpha(&self) -> [f64; 3] {
        normalized(self.alpha)
    }

    pub fn normalized_beta(&self) -> [f64; 4] {
        normalized(self.beta)
    }

    pub fn validate(&self) -> Result<()> {
        let weights_ok = |name: &str, w: &[f64]| {
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} weights must be non-negative"
                )));
            }
            if w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} weights must sum to a positive value"
                )));
            }
            Ok(())
        };
        weights_ok("alpha", &self.alpha)?;
        weights_ok("beta", &self.beta)?;
        for (name, v) in [
            ("tau_sem", self.tau_sem),
            ("ap_iou_threshold", self.ap_iou_threshold),
            ("box_threshold", self.box_threshold),
            ("text_threshold", self.text_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Parses a flat JSON config; relative resource paths resolve against `base`.
    pub fn from_json_str(path: &Path, text: &str, base: &Path) -> Result<Self> {
        let mut cfg: EvalConfig = serde_json::from_str(text).map_err(|e| {
            if e.is_syntax() || e.is_eof() {
                Error::MalformedFile {
                    path: path.to_path_buf(),
                    message: e.to_string(),
                }
            } else {
                Error::schema(path, format!("line {}", e.line()), e.to_string())
            }
        })?;
        for p in [&mut cfg.lexicon_path, &mut cfg.embeddings_path]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn load_config(path: &Path) -> Result<EvalConfig> {
    let text = super::read_text(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    EvalConfig::from_json_str(path, &text, base)
}

/// Parses a ratio such as `4:4:2` into its components.
pub fn parse_weights(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(':')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad weight {part:?} in {s:?}: {e}"))
        })
        .collect()
}
