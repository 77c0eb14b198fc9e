//! Semantic graph construction from per-sentence parses.

mod consolidate;
mod fallback;
mod sentences;

pub use consolidate::{consolidate, load_raw_parses, RawParse};
pub use fallback::{fallback_parse, parse_caption, WordClass, VOCABULARY};
pub use sentences::split_sentences;
