use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::json;
use super::term::normalize_term;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Attribute {
    pub host: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Relation {
    pub subject: String,
    pub predicate: String,
    pub object: String,
}

impl Relation {
    /// The triple as one space-separated phrase.
    pub fn flattened(&self) -> String {
        format!("{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// Objects, attribute bindings, relation triples and scene/camera descriptors
/// extracted from one caption.
///
/// Every list is kept sorted and free of duplicates, so two graphs holding the
/// same elements compare equal regardless of extraction order. Attribute hosts
/// and relation endpoints are free terms and need not appear in `objects`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SemanticGraph {
    objects: Vec<String>,
    attributes: Vec<Attribute>,
    relations: Vec<Relation>,
    scene: Vec<String>,
    camera: Vec<String>,
}

impl SemanticGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn scene(&self) -> &[String] {
        &self.scene
    }

    pub fn camera(&self) -> &[String] {
        &self.camera
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
            && self.attributes.is_empty()
            && self.relations.is_empty()
            && self.scene.is_empty()
            && self.camera.is_empty()
    }

    /// Distinct attribute hosts in sorted order.
    pub fn attribute_hosts(&self) -> Vec<String> {
        let mut hosts: Vec<String> = self.attributes.iter().map(|a| a.host.clone()).collect();
        hosts.dedup();
        hosts
    }

    /// Distinct relation endpoints (subjects and objects) in sorted order.
    pub fn relation_endpoints(&self) -> Vec<String> {
        let mut ends: Vec<String> = self
            .relations
            .iter()
            .flat_map(|r| [r.subject.clone(), r.object.clone()])
            .collect();
        ends.sort();
        ends.dedup();
        ends
    }

    pub fn to_json(&self) -> Value {
        let mut attrs: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for a in &self.attributes {
            attrs.entry(&a.host).or_default().push(&a.value);
        }
        let relations: Vec<[&str; 3]> = self
            .relations
            .iter()
            .map(|r| [r.subject.as_str(), r.predicate.as_str(), r.object.as_str()])
            .collect();
        json!({
            "objects": self.objects,
            "attributes": attrs,
            "relations": relations,
            "scene": self.scene,
            "camera": self.camera,
        })
    }

    /// Parses a graph document. `path` is only used for error messages.
    pub fn from_json_str(path: &Path, text: &str) -> Result<Self> {
        let doc = json::parse(path, text)?;
        let root = json::as_object(path, "$", &doc)?;
        json::reject_unknown(
            path,
            root,
            &["objects", "attributes", "relations", "scene", "camera"],
        )?;

        let mut b = GraphBuilder::default();
        let term = |loc: &str, raw: &str| -> Result<String> {
            normalize_term(raw).ok_or_else(|| Error::schema(path, loc, "empty term"))
        };

        let objects = json::string_list(path, "objects", json::required(path, root, "objects")?)?;
        for (i, o) in objects.iter().enumerate() {
            b.objects.push(term(&format!("objects[{i}]"), o)?);
        }

        let attrs = json::as_object(
            path,
            "attributes",
            json::required(path, root, "attributes")?,
        )?;
        for (host, values) in attrs {
            let loc = format!("attributes.{host}");
            let host = term(&loc, host)?;
            for (i, v) in json::string_list(path, &loc, values)?.iter().enumerate() {
                b.attributes.push(Attribute {
                    host: host.clone(),
                    value: term(&format!("{loc}[{i}]"), v)?,
                });
            }
        }

        let rels = json::as_array(path, "relations", json::required(path, root, "relations")?)?;
        for (i, r) in rels.iter().enumerate() {
            let loc = format!("relations[{i}]");
            let parts = json::string_list(path, &loc, r)?;
            if parts.len() != 3 {
                return Err(Error::schema(
                    path,
                    loc,
                    format!("relation must have 3 elements, found {}", parts.len()),
                ));
            }
            b.relations.push(Relation {
                subject: term(&loc, &parts[0])?,
                predicate: term(&loc, &parts[1])?,
                object: term(&loc, &parts[2])?,
            });
        }

        for key in ["scene", "camera"] {
            if let Some(v) = root.get(key) {
                for (i, s) in json::string_list(path, key, v)?.iter().enumerate() {
                    let t = term(&format!("{key}[{i}]"), s)?;
                    if key == "scene" {
                        b.scene.push(t);
                    } else {
                        b.camera.push(t);
                    }
                }
            }
        }
        Ok(b.build())
    }
}

/// Collects raw terms, normalizing them on insertion. Empty terms are dropped.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    objects: Vec<String>,
    attributes: Vec<Attribute>,
    relations: Vec<Relation>,
    scene: Vec<String>,
    camera: Vec<String>,
}

impl GraphBuilder {
    pub fn object(mut self, raw: &str) -> Self {
        self.objects.extend(normalize_term(raw));
        self
    }

    pub fn objects<'a>(mut self, raw: impl IntoIterator<Item = &'a str>) -> Self {
        self.objects
            .extend(raw.into_iter().filter_map(normalize_term));
        self
    }

    pub fn attribute(mut self, host: &str, value: &str) -> Self {
        if let (Some(host), Some(value)) = (normalize_term(host), normalize_term(value)) {
            self.attributes.push(Attribute { host, value });
        }
        self
    }

    pub fn relation(mut self, subject: &str, predicate: &str, object: &str) -> Self {
        if let (Some(subject), Some(predicate), Some(object)) = (
            normalize_term(subject),
            normalize_term(predicate),
            normalize_term(object),
        ) {
            self.relations.push(Relation {
                subject,
                predicate,
                object,
            });
        }
        self
    }

    pub fn scene(mut self, raw: &str) -> Self {
        self.scene.extend(normalize_term(raw));
        self
    }

    pub fn camera(mut self, raw: &str) -> Self {
        self.camera.extend(normalize_term(raw));
        self
    }

    /// Merges already-normalized elements of another graph.
    pub fn merge(mut self, g: &SemanticGraph) -> Self {
        self.objects.extend_from_slice(&g.objects);
        self.attributes.extend_from_slice(&g.attributes);
        self.relations.extend_from_slice(&g.relations);
        self.scene.extend_from_slice(&g.scene);
        self.camera.extend_from_slice(&g.camera);
        self
    }

    pub fn build(self) -> SemanticGraph {
        fn canon<T: Ord>(mut v: Vec<T>) -> Vec<T> {
            v.sort();
            v.dedup();
            v
        }
        SemanticGraph {
            objects: canon(self.objects),
            attributes: canon(self.attributes),
            relations: canon(self.relations),
            scene: canon(self.scene),
            camera: canon(self.camera),
        }
    }
}

pub fn load_graph(path: &Path) -> Result<SemanticGraph> {
    let text = super::read_text(path)?;
    SemanticGraph::from_json_str(path, &text)
}

pub fn save_graph(graph: &SemanticGraph, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&graph.to_json()).expect("graph serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}
