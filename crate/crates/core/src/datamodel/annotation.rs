use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForegroundObject {
    pub object: String,
    pub semantic_category: String,
    #[serde(default)]
    pub parts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackgroundElement {
    pub element: String,
    pub semantic_category: String,
}

/// Structured scene categorization: foreground objects with their parts and
/// background elements, as returned by the categorization prompt.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GranularityAnnotation {
    #[serde(default)]
    pub foreground_objects: Vec<ForegroundObject>,
    #[serde(default)]
    pub background_elements: Vec<BackgroundElement>,
}

impl GranularityAnnotation {
    pub fn from_json_str(path: &Path, text: &str) -> Result<Self> {
        let ann: GranularityAnnotation = serde_json::from_str(text).map_err(|e| {
            if e.is_syntax() || e.is_eof() {
                Error::MalformedFile {
                    path: path.to_path_buf(),
                    message: e.to_string(),
                }
            } else {
                Error::schema(path, format!("line {}", e.line()), e.to_string())
            }
        })?;
        ann.validate(path)?;
        Ok(ann)
    }

    fn validate(&self, path: &Path) -> Result<()> {
        fn unique<'a>(path: &Path, loc: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
            let mut seen = HashSet::new();
            for (i, name) in names.enumerate() {
                let key = name.trim().to_lowercase();
                if key.is_empty() {
                    return Err(Error::schema(path, format!("{loc}[{i}]"), "empty name"));
                }
                if !seen.insert(key) {
                    return Err(Error::DuplicateEntry {
                        path: path.to_path_buf(),
                        location: format!("{loc}[{i}]"),
                        key: name.to_string(),
                    });
                }
            }
            Ok(())
        }
        unique(
            path,
            "foreground_objects",
            self.foreground_objects.iter().map(|o| o.object.as_str()),
        )?;
        unique(
            path,
            "background_elements",
            self.background_elements.iter().map(|b| b.element.as_str()),
        )?;
        for (i, o) in self.foreground_objects.iter().enumerate() {
            unique(
                path,
                &format!("foreground_objects[{i}].parts"),
                o.parts.iter().map(String::as_str),
            )?;
        }
        Ok(())
    }
}

pub fn load_annotation(path: &Path) -> Result<GranularityAnnotation> {
    let text = super::read_text(path)?;
    GranularityAnnotation::from_json_str(path, &text)
}

/// Text prompts for the segmenter at each granularity.
///
/// Labels keep their surface form (trimmed only) since they are prompts, not
/// matching keys.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PromptLabels {
    pub foreground: Vec<String>,
    pub semantic: Vec<String>,
    pub instance: Vec<String>,
    /// Part prompts keyed by owning object, in annotation order.
    pub parts: Vec<(String, Vec<String>)>,
}

impl PromptLabels {
    pub fn parts_of(&self, object: &str) -> Option<&[String]> {
        self.parts
            .iter()
            .find(|(o, _)| o == object)
            .map(|(_, p)| p.as_slice())
    }
}

pub fn annotation_to_prompt_labels(a: &GranularityAnnotation) -> PromptLabels {
    let foreground: Vec<String> = a
        .foreground_objects
        .iter()
        .map(|o| o.object.trim().to_string())
        .collect();
    let mut semantic = foreground.clone();
    for b in &a.background_elements {
        let e = b.element.trim().to_string();
        if !semantic.contains(&e) {
            semantic.push(e);
        }
    }
    let parts = a
        .foreground_objects
        .iter()
        .filter(|o| !o.parts.is_empty())
        .map(|o| {
            (
                o.object.trim().to_string(),
                o.parts.iter().map(|p| p.trim().to_string()).collect(),
            )
        })
        .collect();
    PromptLabels {
        instance: foreground.clone(),
        foreground,
        semantic,
        parts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AIRPLANE: &str = r#"{
      "foreground_objects": [
        {"object": "airplane", "semantic_category": "vehicle",
         "parts": ["fuselage", "wings", "engines", "tail"]}
      ],
      "background_elements": [
        {"element": "sky", "semantic_category": "natural"},
        {"element": "runway", "semantic_category": "infrastructure"},
        {"element": "grass", "semantic_category": "plant"},
        {"element": "trees", "semantic_category": "plant"}
      ]
    }"#;

    #[test]
    fn airplane_row() {
        let a = GranularityAnnotation::from_json_str(Path::new("a.json"), AIRPLANE).unwrap();
        let labels = annotation_to_prompt_labels(&a);
        assert_eq!(labels.foreground, ["airplane"]);
        assert_eq!(labels.instance, ["airplane"]);
        assert_eq!(
            labels.semantic,
            ["airplane", "sky", "runway", "grass", "trees"]
        );
        assert_eq!(
            labels.parts_of("airplane").unwrap(),
            ["fuselage", "wings", "engines", "tail"]
        );
    }

    #[test]
    fn empty_annotation() {
        let a = GranularityAnnotation::from_json_str(Path::new("a.json"), "{}").unwrap();
        assert_eq!(annotation_to_prompt_labels(&a), PromptLabels::default());
    }

    #[test]
    fn duplicate_parts_rejected() {
        let text = r#"{"foreground_objects":[{"object":"dog","semantic_category":"animal","parts":["leg","Leg"]}]}"#;
        let err = GranularityAnnotation::from_json_str(Path::new("a.json"), text).unwrap_err();
        assert!(matches!(err, Error::DuplicateEntry { .. }));
    }

    #[test]
    fn unknown_key_is_schema_error() {
        let err = GranularityAnnotation::from_json_str(Path::new("a.json"), r#"{"objects":[]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::SchemaViolation { .. }), "{err}");
    }
}
