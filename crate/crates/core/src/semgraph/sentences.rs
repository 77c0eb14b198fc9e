/// Lowercased words that may precede a period without ending a sentence.
const ABBREVIATIONS: &[&str] = &[
    "e.g", "i.e", "etc", "vs", "mr", "mrs", "ms", "dr", "st", "jr", "sr", "prof", "approx", "fig",
    "cf", "al",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Splits a caption into sentences at `.`, `!` and `?` followed by whitespace
/// or end of text. A single period after a known abbreviation does not split.
/// Terminators are dropped and sentences trimmed.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < chars.len() && is_terminator(chars[j].1) {
            j += 1;
        }
        let at_boundary = j == chars.len() || chars[j].1.is_whitespace();
        let body = &text[start..pos];
        let last_word = body
            .rsplit(char::is_whitespace)
            .next()
            .unwrap_or("")
            .to_lowercase();
        let abbreviation = j - i == 1 && c == '.' && ABBREVIATIONS.contains(&last_word.as_str());
        if at_boundary && !abbreviation {
            let s = body.trim();
            if !s.is_empty() {
                sentences.push(s.to_string());
            }
            start = if j == chars.len() {
                text.len()
            } else {
                chars[j].0
            };
        }
        i = j;
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}
