//! Pruning probe hits that are not negative imperatives, and form
//! classification of the survivors.
//!
//! Two shallow tests approximate hand filtering:
//!
//! * **not imperative**: every occurrence is directly preceded, inside its
//!   clause, by an overt subject: a subject pronoun or a determiner plus one
//!   word. A clause opens at the sentence start, after `;`, after `if`,
//!   `when` or `that`, and after a subordinator that follows a comma.
//! * **not negative**: the remaining occurrences are all of the *take care*
//!   family and none has `not` or `never` within the next ten words.
//!
//! An override entry always wins.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use crate::annotation::FormClass;
use crate::error::{Error, Result};

use super::patterns::PatternSet;
use super::probe::{find_occurrences, Occurrence};
use super::Utterance;

const SUBJECT_PRONOUNS: &[&str] = &["i", "you", "he", "she", "it", "we", "they"];
const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "these", "those", "my", "your", "his", "her", "its", "our", "their",
    "some", "any", "each", "every", "no",
];
const CLAUSE_OPENERS: &[&str] = &["if", "when", "that"];
const SUBORDINATORS: &[&str] = &[
    "if", "when", "that", "because", "since", "while", "although", "though", "unless", "until",
    "before", "after", "as", "where", "whereas", "once", "so",
];
const NEGATORS: &[&str] = &["not", "never"];
const NEGATION_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    NotImperative,
    NotNegative,
    Manual,
}

impl RejectReason {
    pub fn token(self) -> &'static str {
        match self {
            RejectReason::NotImperative => "NOT_IMPERATIVE",
            RejectReason::NotNegative => "NOT_NEGATIVE",
            RejectReason::Manual => "MANUAL",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterVerdict {
    pub utterance_id: String,
    pub keep: bool,
    /// Present exactly when `keep` is false.
    pub reject_reason: Option<RejectReason>,
    pub overridden: bool,
}

/// Manual keep/reject decisions keyed by utterance id.
pub type Overrides = HashMap<String, bool>;

/// Parses an overrides file with header `id,keep`.
pub fn read_overrides<R: Read>(file: &str, reader: R) -> Result<Overrides> {
    let mut csv = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv.headers().map_err(|e| Error::csv(file, e))?.clone();
    if headers.iter().ne(["id", "keep"]) {
        return Err(Error::Validation {
            file: file.to_owned(),
            row: 1,
            column: "header".into(),
            message: "expected `id,keep`".into(),
        });
    }
    let mut out = Overrides::new();
    for result in csv.records() {
        let rec = result.map_err(|e| Error::csv(file, e))?;
        let row = rec.position().map_or(0, |p| p.line() as usize);
        let keep = match &rec[1] {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Validation {
                    file: file.to_owned(),
                    row,
                    column: "keep".into(),
                    message: format!("expected true or false, found `{other}`"),
                })
            }
        };
        out.insert(rec[0].to_owned(), keep);
    }
    Ok(out)
}

pub fn load_overrides(path: impl AsRef<Path>) -> Result<Overrides> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_overrides(&path.display().to_string(), file)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TokenKind {
    Word,
    Punct,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    start: usize,
    lower: String,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '\'' | '’' | '-')
}

/// Words (letters, digits, inner apostrophes and hyphens) and single
/// punctuation characters.
fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if c.is_alphanumeric() {
            let mut end = start + c.len_utf8();
            while let Some(&(i, d)) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            tokens.push(Token {
                kind: TokenKind::Word,
                start,
                lower: text[start..end].to_lowercase(),
            });
        } else {
            tokens.push(Token {
                kind: TokenKind::Punct,
                start,
                lower: c.to_string(),
            });
        }
    }
    tokens
}

fn clause_start(tokens: &[Token], before: usize) -> usize {
    for k in (0..before).rev() {
        let t = &tokens[k];
        let opener = match t.kind {
            TokenKind::Punct => t.lower == ";",
            TokenKind::Word => {
                CLAUSE_OPENERS.contains(&t.lower.as_str())
                    || (SUBORDINATORS.contains(&t.lower.as_str())
                        && k > 0
                        && tokens[k - 1].lower == ",")
            }
        };
        if opener {
            return k + 1;
        }
    }
    0
}

fn has_overt_subject(tokens: &[Token], at: usize) -> bool {
    let floor = clause_start(tokens, at);
    let word = |k: usize| tokens[k].kind == TokenKind::Word;
    if at == 0 || at - 1 < floor || !word(at - 1) {
        return false;
    }
    let prev = tokens[at - 1].lower.as_str();
    if SUBJECT_PRONOUNS.contains(&prev) {
        return true;
    }
    at >= 2
        && at - 2 >= floor
        && word(at - 2)
        && DETERMINERS.contains(&tokens[at - 2].lower.as_str())
}

fn has_negative_complement(tokens: &[Token], after: usize) -> bool {
    tokens
        .iter()
        .filter(|t| t.start >= after && t.kind == TokenKind::Word)
        .take(NEGATION_WINDOW)
        .any(|t| NEGATORS.contains(&t.lower.as_str()))
}

/// Per-occurrence outcome of the two shallow tests.
#[derive(Debug, Clone, Copy)]
struct Assessed {
    occurrence: Occurrence,
    imperative: bool,
    negative: bool,
}

/// Filter and classifier over one pattern table.
#[derive(Debug, Clone, Default)]
pub struct Filter {
    patterns: PatternSet,
}

impl Filter {
    pub fn new(patterns: PatternSet) -> Self {
        Filter { patterns }
    }

    fn assess(&self, u: &Utterance) -> Result<Vec<Assessed>> {
        if u.matched.is_empty() {
            return Err(Error::Argument(format!("utterance `{}` has no matched pattern", u.id)));
        }
        let occurrences: Vec<Occurrence> = find_occurrences(&u.text, &self.patterns)
            .into_iter()
            .filter(|o| u.matched.contains(&o.pattern))
            .collect();
        if occurrences.is_empty() {
            return Err(Error::Argument(format!(
                "utterance `{}` lists patterns {:?} but none occur in its text",
                u.id,
                u.matched.iter().map(|p| p.name()).collect::<Vec<_>>()
            )));
        }
        let tokens = tokenize(&u.text);
        Ok(occurrences
            .into_iter()
            .map(|occurrence| {
                let at = tokens
                    .iter()
                    .position(|t| t.start >= occurrence.start)
                    .unwrap_or(tokens.len());
                let negative = occurrence.pattern.family() == FormClass::Dont
                    || has_negative_complement(&tokens, occurrence.end);
                Assessed {
                    occurrence,
                    imperative: !has_overt_subject(&tokens, at),
                    negative,
                }
            })
            .collect())
    }

    pub fn verdict(&self, u: &Utterance, overrides: &Overrides) -> Result<FilterVerdict> {
        let assessed = self.assess(u)?;
        let verdict = |keep: bool, reject_reason, overridden| FilterVerdict {
            utterance_id: u.id.clone(),
            keep,
            reject_reason,
            overridden,
        };
        if let Some(&keep) = overrides.get(&u.id) {
            let reason = (!keep).then_some(RejectReason::Manual);
            return Ok(verdict(keep, reason, true));
        }
        if !assessed.iter().any(|a| a.imperative) {
            return Ok(verdict(false, Some(RejectReason::NotImperative), false));
        }
        if !assessed.iter().any(|a| a.imperative && a.negative) {
            return Ok(verdict(false, Some(RejectReason::NotNegative), false));
        }
        Ok(verdict(true, None, false))
    }

    /// Form of a kept utterance: the family of its earliest occurrence that
    /// passes both tests, or of its earliest occurrence when it was kept by
    /// override alone.
    pub fn classify(&self, u: &Utterance, verdict: &FilterVerdict) -> Result<FormClass> {
        if verdict.utterance_id != u.id {
            return Err(Error::Argument(format!(
                "verdict for `{}` applied to utterance `{}`",
                verdict.utterance_id, u.id
            )));
        }
        if !verdict.keep {
            return Err(Error::Argument(format!(
                "utterance `{}` was rejected and has no form",
                u.id
            )));
        }
        let assessed = self.assess(u)?;
        let decisive = assessed
            .iter()
            .find(|a| a.imperative && a.negative)
            .unwrap_or(&assessed[0]);
        Ok(decisive.occurrence.pattern.family())
    }
}

/// Verdict under the built-in pattern table.
pub fn filter_candidate(u: &Utterance, overrides: &Overrides) -> Result<FilterVerdict> {
    Filter::default().verdict(u, overrides)
}

/// Form under the built-in pattern table.
pub fn classify_form(u: &Utterance, verdict: &FilterVerdict) -> Result<FormClass> {
    Filter::default().classify(u, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{probe, PatternId};

    fn hit(text: &str) -> Utterance {
        let u = Utterance::new("doc.txt", 0, 0, text);
        probe(&[u], &PatternSet::builtin())
            .pop()
            .unwrap_or_else(|| panic!("no pattern in {text:?}"))
    }

    fn check(text: &str) -> (bool, Option<RejectReason>) {
        let v = filter_candidate(&hit(text), &Overrides::new()).unwrap();
        (v.keep, v.reject_reason)
    }

    #[test]
    fn subject_before_dont_is_not_imperative() {
        assert_eq!(
            check("If you don't see the Mail Tool window"),
            (false, Some(RejectReason::NotImperative))
        );
        assert_eq!(
            check("The paint does not dry, so the walls do not peel."),
            (false, Some(RejectReason::NotImperative))
        );
    }

    #[test]
    fn ensurative_is_not_negative() {
        assert_eq!(
            check("Make sure to lock the bit tightly in the collar."),
            (false, Some(RejectReason::NotNegative))
        );
    }

    #[test]
    fn negative_tc_kept() {
        assert_eq!(check("Be careful not to burn the garlic."), (true, None));
        assert_eq!(check("Be sure you never leave it running."), (true, None));
    }

    #[test]
    fn negation_window_is_ten_words() {
        assert_eq!(
            check("Take care one two three four five six seven eight nine not"),
            (true, None)
        );
        assert_eq!(
            check("Take care one two three four five six seven eight nine ten not"),
            (false, Some(RejectReason::NotNegative))
        );
    }

    #[test]
    fn comma_breaks_subject_adjacency() {
        assert_eq!(
            check("If your plans call for vinyl cove molding, be careful not to damage the walls."),
            (true, None)
        );
    }

    #[test]
    fn subordinator_after_comma_opens_clause() {
        assert_eq!(
            check("Stir well, because you don't want lumps."),
            (false, Some(RejectReason::NotImperative))
        );
        assert_eq!(check("Stir well, and don't stop."), (true, None));
    }

    #[test]
    fn determiner_phrase_subject() {
        assert_eq!(
            check("These tools do not work when wet."),
            (false, Some(RejectReason::NotImperative))
        );
    }

    #[test]
    fn overrides_win() {
        let u = hit("Don't sand it.");
        let mut overrides = Overrides::new();
        overrides.insert(u.id.clone(), false);
        let v = filter_candidate(&u, &overrides).unwrap();
        assert_eq!((v.keep, v.reject_reason, v.overridden), (false, Some(RejectReason::Manual), true));

        let u = hit("If you don't see the window");
        overrides.insert(u.id.clone(), true);
        let v = filter_candidate(&u, &overrides).unwrap();
        assert_eq!((v.keep, v.reject_reason, v.overridden), (true, None, true));
        assert_eq!(classify_form(&u, &v).unwrap(), FormClass::Dont);
    }

    #[test]
    fn empty_match_set_is_an_error() {
        let u = Utterance::new("doc.txt", 0, 0, "Fold it.");
        assert!(matches!(filter_candidate(&u, &Overrides::new()), Err(Error::Argument(_))));
    }

    #[test]
    fn classification() {
        for (text, form) in [
            ("Don't sand it or tear it up", FormClass::Dont),
            ("taking care not to crease the wallpaper sharply at the fold", FormClass::NegTc),
            ("Be careful not to drill through the pattern line.", FormClass::NegTc),
            ("Be careful: do not drill through the line.", FormClass::NegTc),
            ("If you do not want stains, be careful not to spill.", FormClass::NegTc),
        ] {
            let u = hit(text);
            let v = filter_candidate(&u, &Overrides::new()).unwrap();
            assert!(v.keep, "{text}");
            assert_eq!(classify_form(&u, &v).unwrap(), form, "{text}");
        }
    }

    #[test]
    fn rejected_has_no_form() {
        let u = hit("If you don't see the Mail Tool window");
        let v = filter_candidate(&u, &Overrides::new()).unwrap();
        assert!(classify_form(&u, &v).is_err());
        assert_eq!(u.matched, [PatternId::Dont]);
    }

    #[test]
    fn overrides_file() {
        let o = read_overrides("o.csv", "id,keep\na:1,true\nb:2,false\n".as_bytes()).unwrap();
        assert!(o["a:1"]);
        assert!(!o["b:2"]);
        assert!(read_overrides("o.csv", "id,keep\na:1,yes\n".as_bytes()).is_err());
    }
}
