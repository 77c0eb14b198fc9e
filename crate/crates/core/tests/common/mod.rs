//! Generators and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use basic_eval::datamodel::{save_graph, save_masks, BinaryMask, Granularity, MaskEntry};
use basic_eval::semmatch::{EmbeddingTable, Stage, SynonymLexicon};
use basic_eval::{MaskSet, SemanticGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
}

pub fn resources() -> (SynonymLexicon, EmbeddingTable) {
    (
        SynonymLexicon::load(&fixture("lexicon.json")).unwrap(),
        EmbeddingTable::load(&fixture("embeddings.txt")).unwrap(),
    )
}

/// Small clusters of related words so that random draws hit every stage.
pub const NOUNS: &[&str] = &[
    "sea",
    "ocean",
    "wave",
    "water",
    "lake",
    "beach",
    "shore",
    "sand",
    "boat",
    "ship",
    "vessel",
    "dock",
    "pier",
    "people",
    "person",
    "man",
    "woman",
    "tree",
    "palm",
    "sky",
    "cloud",
    "dog",
    "puppy",
    "cat",
    "building",
    "edifice",
    "house",
    "umbrella",
    "parasol",
    "volleyball",
];
pub const ADJECTIVES: &[&str] = &[
    "blue",
    "turquoise",
    "azure",
    "white",
    "ivory",
    "red",
    "crimson",
    "large",
    "big",
    "small",
    "tiny",
    "calm",
    "serene",
    "peaceful",
    "bright",
    "vivid",
];
pub const PREDICATES: &[&str] = &[
    "on", "atop", "upon", "under", "below", "near", "by", "beside", "in", "inside", "with", "hold",
    "carry", "play", "compete",
];

pub fn pick<'a, R: Rng>(rng: &mut R, words: &[&'a str]) -> &'a str {
    words.choose(rng).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_per_type: usize) -> SemanticGraph {
    let mut b = SemanticGraph::builder();
    let objects: Vec<&str> = (0..rng.gen_range(0..=max_per_type))
        .map(|_| pick(rng, NOUNS))
        .collect();
    b = b.objects(objects.iter().copied());
    for _ in 0..rng.gen_range(0..=max_per_type) {
        b = b.attribute(pick(rng, NOUNS), pick(rng, ADJECTIVES));
    }
    for _ in 0..rng.gen_range(0..=max_per_type) {
        b = b.relation(pick(rng, NOUNS), pick(rng, PREDICATES), pick(rng, NOUNS));
    }
    b.build()
}

pub fn rect(h: usize, w: usize, r0: usize, r1: usize, c0: usize, c1: usize) -> BinaryMask {
    BinaryMask::from_fn(h, w, |r, c| (r0..r1).contains(&r) && (c0..c1).contains(&c))
}

pub fn random_rect<R: Rng>(rng: &mut R, h: usize, w: usize) -> BinaryMask {
    let (a, b) = (rng.gen_range(0..=h), rng.gen_range(0..=h));
    let (c, d) = (rng.gen_range(0..=w), rng.gen_range(0..=w));
    rect(h, w, a.min(b), a.max(b), c.min(d), c.max(d))
}

pub fn random_bits<R: Rng>(rng: &mut R, h: usize, w: usize) -> BinaryMask {
    let bits: Vec<bool> = (0..h * w).map(|_| rng.gen_bool(0.4)).collect();
    BinaryMask::from_bits(h, w, &bits)
}

const MASK_LABELS: &[&str] = &[
    "boat", "ship", "dock", "zebra", "sky", "water", "tree", "dog",
];
const PART_LABELS: &[&str] = &["hull", "mast", "sail", "head", "tail", "leg"];

fn distinct<'a, R: Rng>(rng: &mut R, pool: &[&'a str], max: usize) -> Vec<&'a str> {
    let n = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, n).copied().collect()
}

/// Random mask set with up to `max_labels` labels per granularity and up to
/// `max_instances` instances per instanced label.
pub fn random_masks<R: Rng>(
    rng: &mut R,
    h: usize,
    w: usize,
    max_labels: usize,
    max_instances: usize,
) -> MaskSet {
    let mut entries = Vec::new();
    for g in [Granularity::F, Granularity::S] {
        for label in distinct(rng, MASK_LABELS, max_labels) {
            entries.push(MaskEntry {
                granularity: g,
                label: label.into(),
                instance: 0,
                mask: random_rect(rng, h, w),
            });
        }
    }
    for (g, pool) in [(Granularity::I, MASK_LABELS), (Granularity::P, PART_LABELS)] {
        for label in distinct(rng, pool, max_labels) {
            for instance in 0..rng.gen_range(1..=max_instances) {
                entries.push(MaskEntry {
                    granularity: g,
                    label: label.into(),
                    instance,
                    mask: random_rect(rng, h, w),
                });
            }
        }
    }
    MaskSet::new(h, w, entries).unwrap()
}

pub fn q(w: f64) -> i64 {
    (w * 1e9).round() as i64
}

/// Exhaustive maximum-weight partial matching. Rows are decided in order,
/// each trying columns in ascending order before staying unpaired, so the
/// first optimum found is the lexicographically smallest one.
pub fn brute_assign(weights: &[Vec<i64>]) -> (i64, Vec<(usize, usize)>) {
    fn go(
        w: &[Vec<i64>],
        r: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        total: i64,
        best: &mut (i64, Vec<(usize, usize)>),
    ) {
        if r == w.len() {
            if total > best.0 {
                *best = (total, cur.clone());
            }
            return;
        }
        for c in 0..used.len() {
            if !used[c] && w[r][c] > 0 {
                used[c] = true;
                cur.push((r, c));
                go(w, r + 1, used, cur, total + w[r][c], best);
                cur.pop();
                used[c] = false;
            }
        }
        go(w, r + 1, used, cur, total, best);
    }
    let cols = weights.first().map_or(0, Vec::len);
    let mut best = (-1, Vec::new());
    go(
        weights,
        0,
        &mut vec![false; cols],
        &mut Vec::new(),
        0,
        &mut best,
    );
    best
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Reference three-stage alignment: each stage is solved exhaustively over
/// the terms left free by the earlier stages.
pub fn oracle_match(
    cand: &[String],
    refs: &[String],
    eligible: &dyn Fn(usize, usize) -> bool,
    lex: &SynonymLexicon,
    emb: Option<&EmbeddingTable>,
    tau: f64,
) -> Vec<(usize, usize, Stage)> {
    let mut cand_free = vec![true; cand.len()];
    let mut ref_free = vec![true; refs.len()];
    let mut out = Vec::new();
    let semantic = |i: usize, j: usize| -> i64 {
        let Some(e) = emb else { return 0 };
        match (e.embed_term(&cand[i]), e.embed_term(&refs[j])) {
            (Some(a), Some(b)) => {
                let s = cosine(&a, &b).clamp(0.0, 1.0);
                if s >= tau && s > 0.0 {
                    q(s)
                } else {
                    0
                }
            }
            _ => 0,
        }
    };
    type Weight<'a> = &'a dyn Fn(usize, usize) -> i64;
    let stages: [(Stage, Weight); 3] = [
        (Stage::Exact, &|i, j| {
            q(f64::from(u8::from(cand[i] == refs[j])))
        }),
        (Stage::Synonym, &|i, j| {
            q(f64::from(u8::from(lex.are_synonyms(&cand[i], &refs[j]))))
        }),
        (Stage::Semantic, &semantic),
    ];
    for (stage, weight) in stages {
        let rows: Vec<usize> = (0..cand.len()).filter(|&i| cand_free[i]).collect();
        let cols: Vec<usize> = (0..refs.len()).filter(|&j| ref_free[j]).collect();
        let w: Vec<Vec<i64>> = rows
            .iter()
            .map(|&i| {
                cols.iter()
                    .map(|&j| if eligible(i, j) { weight(i, j) } else { 0 })
                    .collect()
            })
            .collect();
        for (r, c) in brute_assign(&w).1 {
            cand_free[rows[r]] = false;
            ref_free[cols[c]] = false;
            out.push((rows[r], cols[c], stage));
        }
    }
    out.sort();
    out
}

/// Writes one pair's four input files and returns its manifest record.
pub fn write_pair(
    dir: &Path,
    id: &str,
    method: &str,
    dataset: &str,
    graphs: (&SemanticGraph, &SemanticGraph),
    masks: (&MaskSet, &MaskSet),
) -> serde_json::Value {
    let name = |kind: &str| format!("{id}_{kind}.json");
    save_graph(graphs.0, &dir.join(name("cg"))).unwrap();
    save_graph(graphs.1, &dir.join(name("rg"))).unwrap();
    save_masks(masks.0, &dir.join(name("cm"))).unwrap();
    save_masks(masks.1, &dir.join(name("rm"))).unwrap();
    serde_json::json!({
        "pair_id": id,
        "method": method,
        "dataset": dataset,
        "candidate_graph": name("cg"),
        "reference_graph": name("rg"),
        "candidate_masks": name("cm"),
        "reference_masks": name("rm"),
    })
}
