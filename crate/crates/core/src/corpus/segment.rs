use crate::error::{Error, Result};

/// Tokens ending in `.` that never close a sentence. Compared lowercase.
pub const ABBREVIATIONS: &[&str] = &[
    "e.g.", "i.e.", "etc.", "mr.", "mrs.", "ms.", "dr.", "st.", "vs.", "no.", "approx.", "f.", "c.",
];

/// A sentence-sized slice of a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Byte offsets into the document, excluding surrounding whitespace.
    pub start: usize,
    pub end: usize,
    /// The slice with internal whitespace runs collapsed to one space.
    pub text: String,
}

/// Decodes document bytes as UTF-8.
pub fn decode_document(source_name: &str, bytes: Vec<u8>) -> Result<String> {
    String::from_utf8(bytes).map_err(|e| Error::Decode {
        source_name: source_name.to_owned(),
        offset: e.utf8_error().valid_up_to(),
    })
}

pub fn normalize_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '”' | '’')
}

fn ends_with_abbreviation(text: &str, dot: usize) -> bool {
    let word_start = text[..dot]
        .rfind(char::is_whitespace)
        .map_or(0, |i| i + text[i..].chars().next().map_or(1, char::len_utf8));
    let token = text[word_start..=dot].trim_start_matches(|c: char| !c.is_alphanumeric());
    let token = token.to_lowercase();
    ABBREVIATIONS.contains(&token.as_str())
}

/// Splits a document into sentences.
///
/// A boundary follows a run of `.`, `!` or `?` (plus closing quotes or
/// brackets) when whitespace or the end of text comes next, unless the run
/// is a single `.` closing a listed abbreviation. A blank line is always a
/// boundary. Segments never include leading or trailing whitespace.
pub fn break_sentences(text: &str) -> Vec<Segment> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut cuts = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if is_terminator(c) {
            let mut j = i + 1;
            while j < chars.len() && (is_terminator(chars[j].1) || is_closer(chars[j].1)) {
                j += 1;
            }
            let at_break = j == chars.len() || chars[j].1.is_whitespace();
            let single_dot = c == '.' && !chars[i + 1..j].iter().any(|&(_, d)| is_terminator(d));
            if at_break && !(single_dot && ends_with_abbreviation(text, pos)) {
                cuts.push(chars.get(j).map_or(text.len(), |&(p, _)| p));
            }
            i = j;
            continue;
        }
        if c == '\n' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1 != '\n' && chars[j].1.is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j].1 == '\n' {
                cuts.push(pos);
                i = j;
                continue;
            }
        }
        i += 1;
    }
    cuts.push(text.len());

    let mut segments = Vec::new();
    let mut from = 0;
    for cut in cuts {
        let slice = &text[from..cut];
        let trimmed = slice.trim_start();
        let start = from + (slice.len() - trimmed.len());
        let end = start + trimmed.trim_end().len();
        if end > start {
            segments.push(Segment {
                start,
                end,
                text: normalize_whitespace(&text[start..end]),
            });
        }
        from = cut;
    }
    segments
}
