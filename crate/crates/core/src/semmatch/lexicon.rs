use std::collections::HashMap;
use std::path::Path;

use crate::datamodel::normalize_term;
use crate::error::{Error, Result};

/// Sets of mutually synonymous terms. Membership is reflexive and symmetric.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    synsets: Vec<Vec<String>>,
    index: HashMap<String, Vec<usize>>,
}

impl SynonymLexicon {
    pub fn from_synsets<I, S>(synsets: I) -> Self
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut lex = SynonymLexicon::default();
        for set in synsets {
            let mut terms: Vec<String> = set
                .into_iter()
                .filter_map(|t| normalize_term(t.as_ref()))
                .collect();
            terms.sort();
            terms.dedup();
            if terms.is_empty() {
                continue;
            }
            let id = lex.synsets.len();
            for t in &terms {
                lex.index.entry(t.clone()).or_default().push(id);
            }
            lex.synsets.push(terms);
        }
        lex
    }

    /// Reads a JSON array of string arrays.
    pub fn from_json_str(path: &Path, text: &str) -> Result<Self> {
        let sets: Vec<Vec<String>> =
            serde_json::from_str(text).map_err(|e| Error::MalformedFile {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        Ok(Self::from_synsets(sets))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(path, &text)
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synsets(&self) -> &[Vec<String>] {
        &self.synsets
    }

    pub fn are_synonyms(&self, a: &str, b: &str) -> bool {
        if a == b {
            return true;
        }
        match (self.index.get(a), self.index.get(b)) {
            (Some(x), Some(y)) => x.iter().any(|id| y.contains(id)),
            _ => false,
        }
    }
}
