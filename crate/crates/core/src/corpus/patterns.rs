use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::annotation::FormClass;
use crate::error::{Error, Result};

/// The eight probe forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    Dont,
    DoNot,
    TakeCare,
    MakeSure,
    BeCareful,
    BeSure,
    Ensure,
    BeCertain,
}

impl PatternId {
    pub const ALL: [PatternId; 8] = [
        PatternId::Dont,
        PatternId::DoNot,
        PatternId::TakeCare,
        PatternId::MakeSure,
        PatternId::BeCareful,
        PatternId::BeSure,
        PatternId::Ensure,
        PatternId::BeCertain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::Dont => "dont",
            PatternId::DoNot => "do_not",
            PatternId::TakeCare => "take_care",
            PatternId::MakeSure => "make_sure",
            PatternId::BeCareful => "be_careful",
            PatternId::BeSure => "be_sure",
            PatternId::Ensure => "ensure",
            PatternId::BeCertain => "be_certain",
        }
    }

    /// Family the form belongs to when it carries a negative complement.
    pub fn family(self) -> FormClass {
        match self {
            PatternId::Dont | PatternId::DoNot => FormClass::Dont,
            _ => FormClass::NegTc,
        }
    }

    fn default_surface(self) -> &'static str {
        match self {
            PatternId::Dont => "don't",
            PatternId::DoNot => "do not",
            PatternId::TakeCare => "take care",
            PatternId::MakeSure => "make sure",
            PatternId::BeCareful => "be careful",
            PatternId::BeSure => "be sure",
            PatternId::Ensure => "ensure",
            PatternId::BeCertain => "be certain",
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PatternId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pattern id `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbePattern {
    pub id: PatternId,
    /// Lowercase match string, words separated by single spaces.
    pub surface: String,
    pub form_class_hint: FormClass,
}

impl ProbePattern {
    pub fn new(id: PatternId, surface: &str, form_class_hint: FormClass) -> Result<Self> {
        let canonical = surface.split_whitespace().collect::<Vec<_>>().join(" ");
        if canonical.is_empty() || canonical != surface {
            return Err(Error::Argument(format!(
                "pattern surface `{surface}` must be nonempty words separated by single spaces"
            )));
        }
        if canonical.to_lowercase() != canonical {
            return Err(Error::Argument(format!("pattern surface `{surface}` must be lowercase")));
        }
        Ok(ProbePattern {
            id,
            surface: canonical,
            form_class_hint,
        })
    }

    /// Surface strings accepted for this pattern: the surface itself plus,
    /// for multiword patterns, the first word inflected with `-s` / `-ing`
    /// (`taking care`, `makes sure`).
    pub fn variants(&self) -> Vec<String> {
        let mut out = vec![self.surface.clone()];
        if let Some((head, rest)) = self.surface.split_once(' ') {
            let mut heads = vec![format!("{head}s"), format!("{head}ing")];
            if let Some(stem) = head.strip_suffix('e') {
                heads.push(format!("{stem}ing"));
            }
            for h in heads {
                let v = format!("{h} {rest}");
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// An immutable table of probe patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<ProbePattern>,
}

impl Default for PatternSet {
    fn default() -> Self {
        Self::builtin()
    }
}

impl PatternSet {
    pub fn builtin() -> Self {
        PatternSet {
            patterns: PatternId::ALL
                .iter()
                .map(|&id| ProbePattern {
                    id,
                    surface: id.default_surface().to_owned(),
                    form_class_hint: id.family(),
                })
                .collect(),
        }
    }

    pub fn new(patterns: Vec<ProbePattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Argument("pattern set is empty".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &patterns {
            if !seen.insert(p.id) {
                return Err(Error::Argument(format!("pattern `{}` defined twice", p.id)));
            }
        }
        Ok(PatternSet { patterns })
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProbePattern> {
        self.patterns.iter()
    }

    pub fn get(&self, id: PatternId) -> Option<&ProbePattern> {
        self.patterns.iter().find(|p| p.id == id)
    }

    /// Parses a pattern file with header `id,surface,family`.
    pub fn from_reader<R: Read>(file: &str, reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = csv.headers().map_err(|e| Error::csv(file, e))?.clone();
        if headers.iter().ne(["id", "surface", "family"]) {
            return Err(Error::Validation {
                file: file.to_owned(),
                row: 1,
                column: "header".into(),
                message: "expected `id,surface,family`".into(),
            });
        }
        let mut patterns = Vec::new();
        for result in csv.records() {
            let rec = result.map_err(|e| Error::csv(file, e))?;
            let row = rec.position().map_or(0, |p| p.line() as usize);
            let invalid = |column: &str, message: String| Error::Validation {
                file: file.to_owned(),
                row,
                column: column.to_owned(),
                message,
            };
            let id: PatternId = rec[0].parse().map_err(|m| invalid("id", m))?;
            let family: FormClass = rec[2].parse().map_err(|m| invalid("family", m))?;
            let pattern = ProbePattern::new(id, &rec[1], family)
                .map_err(|e| invalid("surface", e.to_string()))?;
            patterns.push(pattern);
        }
        Self::new(patterns)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(&path.display().to_string(), file)
    }
}
