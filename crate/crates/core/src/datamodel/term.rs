/// Canonical form of a term: lowercase, trimmed, internal whitespace collapsed
/// to single spaces, and the last word singularized.
///
/// Singularization strips `-es` after `ss`, `x`, `z`, `ch` or `sh`, otherwise a
/// trailing `-s` on words longer than three letters. Words ending in `ss`,
/// `us` or `is` are left alone. The rule is idempotent.
///
/// Returns `None` when nothing is left after trimming.
pub fn normalize_term(raw: &str) -> Option<String> {
    let mut words: Vec<String> = raw.split_whitespace().map(str::to_lowercase).collect();
    let last = words.last_mut()?;
    *last = singularize(last);
    Some(words.join(" "))
}

fn singularize(word: &str) -> String {
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return word.to_string();
    }
    if let Some(stem) = word.strip_suffix("es") {
        if ["ss", "x", "z", "ch", "sh"]
            .iter()
            .any(|s| stem.ends_with(s))
        {
            return stem.to_string();
        }
    }
    if word.chars().count() > 3 {
        if let Some(stem) = word.strip_suffix('s') {
            return stem.to_string();
        }
    }
    word.to_string()
}
