use super::patterns::{PatternId, PatternSet};
use super::Utterance;

/// One pattern hit inside an utterance's text, as byte offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub pattern: PatternId,
    pub start: usize,
    pub end: usize,
}

/// Case-folded characters with the byte offset each came from.
struct Folded {
    chars: Vec<char>,
    offsets: Vec<usize>,
    len: usize,
}

fn fold_char(c: char) -> char {
    match c {
        '’' | '‘' => '\'',
        _ => {
            let mut lower = c.to_lowercase();
            match (lower.next(), lower.next()) {
                (Some(l), None) => l,
                _ => c,
            }
        }
    }
}

fn fold(text: &str) -> Folded {
    let (offsets, chars) = text.char_indices().map(|(i, c)| (i, fold_char(c))).unzip();
    Folded {
        chars,
        offsets,
        len: text.len(),
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\''
}

/// Every word-bounded, case-insensitive occurrence of every pattern in
/// `text`, sorted by start offset.
pub fn find_occurrences(text: &str, patterns: &PatternSet) -> Vec<Occurrence> {
    let folded = fold(text);
    let hay = &folded.chars;
    let mut out = Vec::new();
    for pattern in patterns.iter() {
        for variant in pattern.variants() {
            let needle: Vec<char> = variant.chars().collect();
            if needle.len() > hay.len() {
                continue;
            }
            for at in 0..=hay.len() - needle.len() {
                let end = at + needle.len();
                if hay[at..end] != needle[..] {
                    continue;
                }
                let left_ok = at == 0 || !is_word_char(hay[at - 1]);
                let right_ok = end == hay.len() || !is_word_char(hay[end]);
                if left_ok && right_ok {
                    out.push(Occurrence {
                        pattern: pattern.id,
                        start: folded.offsets[at],
                        end: folded.offsets.get(end).copied().unwrap_or(folded.len),
                    });
                }
            }
        }
    }
    out.sort_by_key(|o| (o.start, o.pattern));
    out.dedup();
    out
}

/// Pattern ids in order of first occurrence, without repeats.
pub fn matched_ids(occurrences: &[Occurrence]) -> Vec<PatternId> {
    let mut ids = Vec::new();
    for o in occurrences {
        if !ids.contains(&o.pattern) {
            ids.push(o.pattern);
        }
    }
    ids
}

/// Keeps the utterances containing at least one pattern, recording every
/// pattern that hit. Input order is preserved.
pub fn probe(utterances: &[Utterance], patterns: &PatternSet) -> Vec<Utterance> {
    utterances
        .iter()
        .filter_map(|u| {
            let ids = matched_ids(&find_occurrences(&u.text, patterns));
            (!ids.is_empty()).then(|| Utterance {
                matched: ids,
                ..u.clone()
            })
        })
        .collect()
}
