use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Token vectors of a fixed dimension, each stored with unit norm.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        EmbeddingTable {
            dim,
            vectors: HashMap::new(),
        }
    }

    /// Stores `vector` normalized to unit length. Zero vectors and wrong
    /// dimensions are rejected.
    pub fn insert(&mut self, token: &str, vector: Vec<f64>) -> std::result::Result<(), String> {
        if vector.len() != self.dim {
            return Err(format!(
                "expected {} values, found {}",
                self.dim,
                vector.len()
            ));
        }
        let v = unit(vector).ok_or("zero or non-finite vector")?;
        self.vectors.insert(token.to_lowercase(), v);
        Ok(())
    }

    /// Text format: first line holds the dimension alone, then one line per
    /// token: the token followed by its values, whitespace separated.
    pub fn from_text(path: &Path, text: &str) -> Result<Self> {
        let malformed = |line: usize, message: String| Error::MalformedFile {
            path: path.to_path_buf(),
            message: format!("line {line}: {message}"),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| malformed(1, "missing dimension header".into()))?;
        let dim: usize = header
            .trim()
            .parse()
            .map_err(|e| malformed(1, format!("bad dimension header: {e}")))?;
        let mut table = EmbeddingTable::new(dim);
        for (i, line) in lines {
            let mut fields = line.split_whitespace();
            let token = fields.next().expect("line is non-empty");
            let values = fields
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| malformed(i + 1, e.to_string()))?;
            table
                .insert(token, values)
                .map_err(|msg| malformed(i + 1, format!("{token}: {msg}")))?;
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(path, &text)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.vectors.get(token).map(Vec::as_slice)
    }

    /// Unit vector for a term. Multi-word terms average their known tokens;
    /// `None` when no token is known.
    pub fn embed_term(&self, term: &str) -> Option<Vec<f64>> {
        let known: Vec<&[f64]> = term
            .split_whitespace()
            .filter_map(|t| self.get(t))
            .collect();
        match known.as_slice() {
            [] => None,
            [single] => Some(single.to_vec()),
            many => {
                let mut sum = vec![0.0; self.dim];
                for v in many {
                    for (s, x) in sum.iter_mut().zip(v.iter()) {
                        *s += x;
                    }
                }
                unit(sum)
            }
        }
    }
}

fn unit(mut v: Vec<f64>) -> Option<Vec<f64>> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    Some(v)
}

/// Cosine of two unit vectors.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn table() -> EmbeddingTable {
        EmbeddingTable::from_text(Path::new("e.txt"), "2\nbright 3 4\nblue 0 2\nboat 1 1\n")
            .unwrap()
    }

    #[test]
    fn stored_unit_norm() {
        let t = table();
        assert_eq!(t.get("bright").unwrap(), &[0.6, 0.8]);
        assert_eq!(t.embed_term("boat").unwrap(), t.get("boat").unwrap());
    }

    #[test]
    fn multi_word_mean() {
        let t = table();
        let v = t.embed_term("bright blue").unwrap();
        let (x, y): (f64, f64) = (0.6 + 0.0, 0.8 + 1.0);
        let n = (x * x + y * y).sqrt();
        assert_abs_diff_eq!(v[0], x / n, epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], y / n, epsilon = 1e-12);
        // unknown tokens are skipped
        assert_eq!(t.embed_term("zxqv blue").unwrap(), t.get("blue").unwrap());
    }

    #[test]
    fn unknown_is_absent() {
        assert!(table().embed_term("zxqv").is_none());
    }

    #[test]
    fn format_errors() {
        let p = Path::new("e.txt");
        assert!(EmbeddingTable::from_text(p, "").is_err());
        assert!(EmbeddingTable::from_text(p, "2\nx 1\n").is_err());
        assert!(EmbeddingTable::from_text(p, "2\nx 0 0\n").is_err());
        assert!(EmbeddingTable::from_text(p, "2\nx 1 y\n").is_err());
    }

    #[test]
    fn shipped_fixture() {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/embeddings.txt");
        let t = EmbeddingTable::load(&path).unwrap();
        assert_eq!(t.len(), 300);
        let norm: f64 = t.get("boat").unwrap().iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }
}
