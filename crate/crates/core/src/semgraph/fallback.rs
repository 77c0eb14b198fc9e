//! Rule-based parser for a controlled caption grammar:
//!
//! ```text
//! DET? ADJ* NOUN (VERB PREP? DET? ADJ* NOUN)?
//! ```
//!
//! It stands in for the neural caption parser in hermetic tests. Nouns become
//! objects, adjectives bind to the noun that follows them, and a verb clause
//! yields one relation triple whose predicate is the verb lemma plus the
//! optional preposition.

use log::warn;

use super::consolidate::{consolidate, RawParse};
use super::sentences::split_sentences;
use crate::datamodel::{normalize_term, SemanticGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordClass {
    Determiner,
    Adjective,
    Noun,
    /// Verb forms, the first entry of each row being the lemma.
    Verb,
    Preposition,
}

pub const DETERMINERS: &[&str] = &[
    "a", "an", "the", "some", "several", "many", "two", "three", "four", "one", "this", "that",
    "these", "those", "its", "their", "his", "her",
];

pub const PREPOSITIONS: &[&str] = &[
    "on", "in", "at", "under", "over", "near", "beside", "behind", "with", "into", "onto", "along",
    "across", "through", "by", "from", "toward", "above", "below", "around", "inside",
];

pub const ADJECTIVES: &[&str] = &[
    "white",
    "black",
    "red",
    "blue",
    "green",
    "yellow",
    "brown",
    "gray",
    "orange",
    "pink",
    "large",
    "small",
    "big",
    "little",
    "tall",
    "short",
    "old",
    "young",
    "wooden",
    "calm",
    "bright",
    "dark",
    "soft",
    "tropical",
    "lush",
    "sandy",
    "colorless",
    "peaceful",
    "busy",
    "round",
    "striped",
    "furry",
    "shiny",
    "quiet",
    "sleepy",
    "happy",
    "wet",
    "dry",
];

pub const NOUNS: &[&str] = &[
    "dog",
    "cat",
    "ball",
    "boat",
    "ship",
    "water",
    "sky",
    "tree",
    "man",
    "woman",
    "child",
    "people",
    "bird",
    "car",
    "road",
    "house",
    "beach",
    "sand",
    "wave",
    "sea",
    "umbrella",
    "volleyball",
    "table",
    "chair",
    "mat",
    "fence",
    "field",
    "horse",
    "zebra",
    "airplane",
    "runway",
    "grass",
    "idea",
    "kite",
    "bench",
    "river",
    "bridge",
    "train",
    "bus",
    "dock",
    "cloud",
    "hill",
    "flower",
    "girl",
    "boy",
    "rock",
    "lake",
    "truck",
    "sign",
    "window",
];

/// Inflected verb forms; the first form is the lemma used as predicate.
pub const VERBS: &[&[&str]] = &[
    &["chase", "chases", "chased", "chasing"],
    &["sit", "sits", "sat", "sitting"],
    &["sleep", "sleeps", "slept", "sleeping"],
    &["run", "runs", "ran", "running"],
    &["stand", "stands", "stood", "standing"],
    &["lie", "lies", "lay", "lying"],
    &["hold", "holds", "held", "holding"],
    &["ride", "rides", "rode", "riding"],
    &["eat", "eats", "ate", "eating"],
    &["watch", "watches", "watched", "watching"],
    &["float", "floats", "floated", "floating"],
    &["fly", "flies", "flew", "flying"],
    &["cross", "crosses", "crossed", "crossing"],
    &["play", "plays", "played", "playing"],
    &["carry", "carries", "carried", "carrying"],
    &["cover", "covers", "covered", "covering"],
    &["pull", "pulls", "pulled", "pulling"],
    &["walk", "walks", "walked", "walking"],
    &["swim", "swims", "swam", "swimming"],
    &["jump", "jumps", "jumped", "jumping"],
    &["hang", "hangs", "hung", "hanging"],
    &["rest", "rests", "rested", "resting"],
];

/// Every word class with its word list, for generators and documentation.
pub const VOCABULARY: &[(WordClass, &[&str])] = &[
    (WordClass::Determiner, DETERMINERS),
    (WordClass::Adjective, ADJECTIVES),
    (WordClass::Noun, NOUNS),
    (WordClass::Preposition, PREPOSITIONS),
];

fn noun(word: &str) -> Option<String> {
    let n = normalize_term(word)?;
    NOUNS.contains(&n.as_str()).then_some(n)
}

fn verb_lemma(word: &str) -> Option<&'static str> {
    VERBS
        .iter()
        .find(|forms| forms.contains(&word))
        .map(|forms| forms[0])
}

struct Cursor<'a> {
    words: &'a [String],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.words.get(self.pos).map(String::as_str)
    }

    fn eat_if(&mut self, list: &[&str]) -> Option<&'a str> {
        let w = self.peek().filter(|w| list.contains(w))?;
        self.pos += 1;
        Some(w)
    }

    /// DET? ADJ* NOUN, returning the noun and its adjectives.
    fn noun_phrase(&mut self) -> Option<(String, Vec<&'a str>)> {
        self.eat_if(DETERMINERS);
        let mut adjectives = Vec::new();
        while let Some(a) = self.eat_if(ADJECTIVES) {
            adjectives.push(a);
        }
        let n = noun(self.peek()?)?;
        self.pos += 1;
        Some((n, adjectives))
    }
}

pub fn fallback_parse(sentence: &str) -> Result<RawParse> {
    let unparsable = || Error::UnparsableSentence(sentence.to_string());
    let words: Vec<String> = sentence
        .trim()
        .trim_end_matches(['.', '!', '?'])
        .split_whitespace()
        .map(|w| w.trim_matches(',').to_lowercase())
        .collect();
    let mut cur = Cursor {
        words: &words,
        pos: 0,
    };
    let mut parse = RawParse::default();

    let (subject, adjs) = cur.noun_phrase().ok_or_else(unparsable)?;
    parse.objects.push(subject.clone());
    parse
        .attributes
        .extend(adjs.iter().map(|a| (subject.clone(), a.to_string())));

    if let Some(word) = cur.peek() {
        let lemma = verb_lemma(word).ok_or_else(unparsable)?;
        cur.pos += 1;
        let predicate = match cur.eat_if(PREPOSITIONS) {
            Some(prep) => format!("{lemma} {prep}"),
            None => lemma.to_string(),
        };
        let (object, adjs) = cur.noun_phrase().ok_or_else(unparsable)?;
        if cur.peek().is_some() {
            return Err(unparsable());
        }
        parse.objects.push(object.clone());
        parse
            .attributes
            .extend(adjs.iter().map(|a| (object.clone(), a.to_string())));
        parse.relations.push((subject, predicate, object));
    }
    Ok(parse)
}

/// Splits a caption, parses each sentence with [`fallback_parse`] and
/// consolidates. Sentences outside the grammar are logged and skipped.
pub fn parse_caption(text: &str) -> SemanticGraph {
    let parses: Vec<RawParse> = split_sentences(text)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut p = fallback_parse(s).unwrap_or_else(|e| {
                warn!("{e}; using an empty parse");
                RawParse::default()
            });
            p.sentence_index = i;
            p
        })
        .collect();
    consolidate(&parses)
}
