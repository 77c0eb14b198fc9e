use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {}", path.display(), io_message(source))]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Syntax error: the document could not be parsed at all.
    #[error("{}: malformed file: {message}", path.display())]
    MalformedFile { path: PathBuf, message: String },

    /// The document parsed but does not follow the expected structure.
    #[error("{}: {location}: {message}", path.display())]
    SchemaViolation {
        path: PathBuf,
        location: String,
        message: String,
    },

    #[error("{}: {location}: run lengths sum to {actual}, expected {expected}", path.display())]
    RleLengthMismatch {
        path: PathBuf,
        location: String,
        expected: usize,
        actual: usize,
    },

    #[error("{}: {location}: duplicate entry {key}", path.display())]
    DuplicateEntry {
        path: PathBuf,
        location: String,
        key: String,
    },

    #[error("mask dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid counts: matched={matched}, candidate={candidate}, reference={reference}")]
    InvalidCounts {
        matched: usize,
        candidate: usize,
        reference: usize,
    },

    #[error("sentence outside the fallback grammar: {0:?}")]
    UnparsableSentence(String),

    #[error("rankings cover different item sets: {0}")]
    MismatchedSets(String),
}

fn io_message(e: &std::io::Error) -> String {
    match e.kind() {
        std::io::ErrorKind::NotFound => "file not found".into(),
        _ => e.to_string(),
    }
}

impl Error {
    pub(crate) fn schema(
        path: impl Into<PathBuf>,
        location: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::SchemaViolation {
            path: path.into(),
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
