use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::json;
use super::mask::{rle_decode, rle_encode, BinaryMask};
use super::term::normalize_term;
use crate::error::{Error, Result};

/// Segmentation granularity: foreground categories, binary foreground vs
/// background, all semantic categories, per-instance, and part level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Granularity {
    F,
    B,
    S,
    I,
    P,
}

impl Granularity {
    pub const ALL: [Granularity; 5] = [
        Granularity::F,
        Granularity::B,
        Granularity::S,
        Granularity::I,
        Granularity::P,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Granularity::F => "F",
            Granularity::B => "B",
            Granularity::S => "S",
            Granularity::I => "I",
            Granularity::P => "P",
        }
    }

    /// Whether entries at this granularity enumerate instances per label.
    pub fn is_instanced(self) -> bool {
        matches!(self, Granularity::I | Granularity::P)
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Granularity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Granularity::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| format!("unknown granularity {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskEntry {
    pub granularity: Granularity,
    pub label: String,
    pub instance: usize,
    pub mask: BinaryMask,
}

/// Label used for a synthesized binary-foreground entry.
pub const SYNTHETIC_B_LABEL: &str = "foreground";

/// All labeled masks of one image. Entries are kept sorted by
/// (granularity, label, instance).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    height: usize,
    width: usize,
    entries: Vec<MaskEntry>,
}

impl MaskSet {
    /// Validates the entries and appends a synthetic B mask (union of all F
    /// masks) when none is present. Labels are normalized like graph terms.
    pub fn new(height: usize, width: usize, entries: Vec<MaskEntry>) -> Result<Self> {
        Self::build(Path::new("<memory>"), height, width, entries)
    }

    fn build(
        path: &Path,
        height: usize,
        width: usize,
        mut entries: Vec<MaskEntry>,
    ) -> Result<Self> {
        for e in &mut entries {
            let loc = format!("granularities.{}.{}", e.granularity, e.label);
            if e.mask.dims() != (height, width) {
                return Err(Error::schema(
                    path,
                    loc,
                    format!(
                        "mask is {}x{}, image is {height}x{width}",
                        e.mask.height(),
                        e.mask.width()
                    ),
                ));
            }
            e.label =
                normalize_term(&e.label).ok_or_else(|| Error::schema(path, loc, "empty label"))?;
        }
        entries.sort_by(|a, b| {
            (a.granularity, &a.label, a.instance).cmp(&(b.granularity, &b.label, b.instance))
        });
        for pair in entries.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if (a.granularity, &a.label, a.instance) == (b.granularity, &b.label, b.instance) {
                return Err(Error::DuplicateEntry {
                    path: path.to_path_buf(),
                    location: format!("granularities.{}", a.granularity),
                    key: format!("{}/{}#{}", a.granularity, a.label, a.instance),
                });
            }
        }

        let mut per_label: BTreeMap<(Granularity, &str), Vec<usize>> = BTreeMap::new();
        for e in &entries {
            per_label
                .entry((e.granularity, &e.label))
                .or_default()
                .push(e.instance);
        }
        for ((g, label), instances) in &per_label {
            let loc = format!("granularities.{g}.{label}");
            if g.is_instanced() {
                // sorted, unique, so gapless iff it is exactly 0..n
                if instances.iter().enumerate().any(|(i, &n)| i != n) {
                    return Err(Error::schema(
                        path,
                        loc,
                        format!("instance indices must run 0..n without gaps, found {instances:?}"),
                    ));
                }
            } else if instances != &[0] {
                return Err(Error::schema(
                    path,
                    loc,
                    format!("{g} entries must use instance 0, found {instances:?}"),
                ));
            }
        }

        let mut set = MaskSet {
            height,
            width,
            entries,
        };
        if !set.entries.iter().any(|e| e.granularity == Granularity::B) {
            let union = set.union_of(Granularity::F);
            set.entries.push(MaskEntry {
                granularity: Granularity::B,
                label: SYNTHETIC_B_LABEL.to_string(),
                instance: 0,
                mask: union,
            });
            set.entries.sort_by(|a, b| {
                (a.granularity, &a.label, a.instance).cmp(&(b.granularity, &b.label, b.instance))
            });
        }
        Ok(set)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn entries(&self) -> &[MaskEntry] {
        &self.entries
    }

    pub fn at(&self, g: Granularity) -> impl Iterator<Item = &MaskEntry> {
        self.entries.iter().filter(move |e| e.granularity == g)
    }

    /// Distinct labels at a granularity, sorted.
    pub fn labels(&self, g: Granularity) -> Vec<&str> {
        let mut labels: Vec<&str> = self.at(g).map(|e| e.label.as_str()).collect();
        labels.dedup();
        labels
    }

    /// Instance masks of one label ordered by instance index.
    pub fn instances(&self, g: Granularity, label: &str) -> Vec<&BinaryMask> {
        self.at(g)
            .filter(|e| e.label == label)
            .map(|e| &e.mask)
            .collect()
    }

    /// Pixelwise union of every mask at a granularity.
    pub fn union_of(&self, g: Granularity) -> BinaryMask {
        let mut union = BinaryMask::empty(self.height, self.width);
        for e in self.at(g) {
            union
                .union_with(&e.mask)
                .expect("dimensions validated on construction");
        }
        union
    }

    pub fn to_json(&self) -> Value {
        let mut grans: BTreeMap<&str, Vec<Value>> = BTreeMap::new();
        for e in &self.entries {
            grans
                .entry(e.granularity.as_str())
                .or_default()
                .push(json!({
                    "label": e.label,
                    "instance": e.instance,
                    "rle": rle_encode(&e.mask),
                }));
        }
        json!({
            "height": self.height,
            "width": self.width,
            "granularities": grans,
        })
    }

    pub fn from_json_str(path: &Path, text: &str) -> Result<Self> {
        let doc = json::parse(path, text)?;
        let root = json::as_object(path, "$", &doc)?;
        json::reject_unknown(path, root, &["height", "width", "granularities"])?;
        let height = json::as_usize(path, "height", json::required(path, root, "height")?)?;
        let width = json::as_usize(path, "width", json::required(path, root, "width")?)?;
        let grans = json::as_object(
            path,
            "granularities",
            json::required(path, root, "granularities")?,
        )?;

        let mut entries = Vec::new();
        for (key, list) in grans {
            let loc = format!("granularities.{key}");
            let granularity: Granularity = key
                .parse()
                .map_err(|msg: String| Error::schema(path, &loc, msg))?;
            for (i, item) in json::as_array(path, &loc, list)?.iter().enumerate() {
                let loc = format!("{loc}[{i}]");
                let obj = json::as_object(path, &loc, item)?;
                json::reject_unknown(path, obj, &["label", "instance", "rle"])?;
                let field = |k: &str| {
                    obj.get(k).ok_or_else(|| {
                        Error::schema(path, format!("{loc}.{k}"), format!("missing field `{k}`"))
                    })
                };
                let label = json::as_str(path, &format!("{loc}.label"), field("label")?)?;
                let instance = match obj.get("instance") {
                    Some(v) => json::as_usize(path, &format!("{loc}.instance"), v)?,
                    None => 0,
                };
                let rle_loc = format!("{loc}.rle");
                let runs = json::as_array(path, &rle_loc, field("rle")?)?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| json::as_usize(path, &format!("{rle_loc}[{j}]"), v))
                    .collect::<Result<Vec<_>>>()?;
                let mask = rle_decode(&runs, height, width).map_err(|actual| {
                    Error::RleLengthMismatch {
                        path: path.to_path_buf(),
                        location: rle_loc.clone(),
                        expected: height * width,
                        actual,
                    }
                })?;
                entries.push(MaskEntry {
                    granularity,
                    label: label.to_string(),
                    instance,
                    mask,
                });
            }
        }
        Self::build(path, height, width, entries)
    }
}

pub fn load_masks(path: &Path) -> Result<MaskSet> {
    let text = super::read_text(path)?;
    MaskSet::from_json_str(path, &text)
}

pub fn save_masks(masks: &MaskSet, path: &Path) -> Result<()> {
    let text = serde_json::to_string(&masks.to_json()).expect("mask set serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MaskSet> {
        MaskSet::from_json_str(Path::new("m.json"), text)
    }

    #[test]
    fn synthesizes_binary_mask_from_single_foreground() {
        let m = parse(
            r#"{"height":4,"width":4,"granularities":{"F":[{"label":"dog","instance":0,"rle":[5,2,9]}]}}"#,
        )
        .unwrap();
        let b: Vec<_> = m.at(Granularity::B).collect();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].label, SYNTHETIC_B_LABEL);
        assert_eq!(b[0].mask, m.instances(Granularity::F, "dog")[0].clone());
    }

    #[test]
    fn synthesized_binary_is_union_of_foregrounds() {
        let a = BinaryMask::from_fn(3, 3, |r, _| r == 0);
        let c = BinaryMask::from_fn(3, 3, |_, c| c == 2);
        let entry = |label: &str, mask: &BinaryMask| MaskEntry {
            granularity: Granularity::F,
            label: label.into(),
            instance: 0,
            mask: mask.clone(),
        };
        let m = MaskSet::new(3, 3, vec![entry("a", &a), entry("c", &c)]).unwrap();
        let expected = BinaryMask::from_fn(3, 3, |r, c| r == 0 || c == 2);
        assert_eq!(m.union_of(Granularity::B), expected);
    }

    #[test]
    fn rle_mismatch_reports_location() {
        let err = parse(
            r#"{"height":2,"width":3,"granularities":{"S":[{"label":"sky","instance":0,"rle":[2,3]}]}}"#,
        )
        .unwrap_err();
        match err {
            Error::RleLengthMismatch {
                location,
                expected,
                actual,
                ..
            } => {
                assert_eq!(location, "granularities.S[0].rle");
                assert_eq!((expected, actual), (6, 5));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn duplicates_rejected_after_normalization() {
        let err = parse(
            r#"{"height":1,"width":2,"granularities":{"F":[
                {"label":"Boats","instance":0,"rle":[2]},
                {"label":"boat","instance":0,"rle":[1,1]}]}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateEntry { .. }), "{err}");
    }

    #[test]
    fn instance_numbering_rules() {
        let gap = parse(
            r#"{"height":1,"width":1,"granularities":{"I":[
                {"label":"dog","instance":0,"rle":[1]},
                {"label":"dog","instance":2,"rle":[1]}]}}"#,
        );
        assert!(matches!(gap, Err(Error::SchemaViolation { .. })));
        let nonzero_f = parse(
            r#"{"height":1,"width":1,"granularities":{"F":[{"label":"dog","instance":1,"rle":[1]}]}}"#,
        );
        assert!(matches!(nonzero_f, Err(Error::SchemaViolation { .. })));
        let bad_key = parse(r#"{"height":1,"width":1,"granularities":{"Q":[]}}"#);
        assert!(matches!(bad_key, Err(Error::SchemaViolation { .. })));
    }

    #[test]
    fn json_round_trip() {
        let m = parse(
            r#"{"height":2,"width":2,"granularities":{
                "F":[{"label":"dog","instance":0,"rle":[1,2,1]}],
                "I":[{"label":"dog","instance":0,"rle":[1,1,2]},{"label":"dog","instance":1,"rle":[2,1,1]}]}}"#,
        )
        .unwrap();
        let again = parse(&m.to_json().to_string()).unwrap();
        assert_eq!(again, m);
        assert_eq!(m.instances(Granularity::I, "dog").len(), 2);
    }
}
