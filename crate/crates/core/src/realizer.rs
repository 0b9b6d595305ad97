//! Template realization of preventative imperatives.
//!
//! | form     | variant      | template                        |
//! |----------|--------------|---------------------------------|
//! | `DONT`   | `FULL`       | `Do not {action}.`              |
//! | `DONT`   | `CONTRACTED` | `Don't {action}.`               |
//! | `NEG_TC` | `BE_CAREFUL` | `Be careful not to {action}.`   |
//! | `NEG_TC` | `TAKE_CARE`  | `Take care not to {action}.`    |
//!
//! The caller supplies the action as a base-form verb phrase; no inflection
//! is attempted.

use std::fmt;
use std::str::FromStr;

use crate::annotation::{Awareness, FormClass, Intentionality};
use crate::error::{Error, Result};
use crate::induction::DecisionTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Full,
    Contracted,
    BeCareful,
    TakeCare,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Full,
        Variant::Contracted,
        Variant::BeCareful,
        Variant::TakeCare,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Variant::Full => "FULL",
            Variant::Contracted => "CONTRACTED",
            Variant::BeCareful => "BE_CAREFUL",
            Variant::TakeCare => "TAKE_CARE",
        }
    }

    pub fn form(self) -> FormClass {
        match self {
            Variant::Full | Variant::Contracted => FormClass::Dont,
            Variant::BeCareful | Variant::TakeCare => FormClass::NegTc,
        }
    }

    fn opener(self) -> &'static str {
        match self {
            Variant::Full => "Do not",
            Variant::Contracted => "Don't",
            Variant::BeCareful => "Be careful not to",
            Variant::TakeCare => "Take care not to",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.token().eq_ignore_ascii_case(&s.replace('-', "_")))
            .ok_or_else(|| format!("unknown variant `{s}` (expected FULL|CONTRACTED|BE_CAREFUL|TAKE_CARE)"))
    }
}

/// How a trailing clause attaches to the imperative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailingKind {
    /// Reason or purpose clause, joined with a space.
    Reason,
    /// Participial clause, joined with a comma.
    Participial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trailing {
    pub text: String,
    pub kind: TrailingKind,
}

impl Trailing {
    pub fn reason(text: impl Into<String>) -> Self {
        Trailing {
            text: text.into(),
            kind: TrailingKind::Reason,
        }
    }

    pub fn participial(text: impl Into<String>) -> Self {
        Trailing {
            text: text.into(),
            kind: TrailingKind::Participial,
        }
    }

    /// Participial when the clause opens with an `-ing` word, reason otherwise.
    pub fn infer(text: impl Into<String>) -> Self {
        let text = text.into();
        let participial = text
            .split_whitespace()
            .next()
            .is_some_and(|w| w.len() > 4 && w.to_lowercase().ends_with("ing"));
        Trailing {
            text,
            kind: if participial {
                TrailingKind::Participial
            } else {
                TrailingKind::Reason
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationRequest {
    pub form: FormClass,
    pub variant: Variant,
    pub action: String,
    pub trailing: Option<Trailing>,
}

impl RealizationRequest {
    pub fn new(form: FormClass, variant: Variant, action: impl Into<String>) -> Self {
        RealizationRequest {
            form,
            variant,
            action: action.into(),
            trailing: None,
        }
    }

    pub fn with_trailing(mut self, trailing: Trailing) -> Self {
        self.trailing = Some(trailing);
        self
    }
}

fn clean(text: &str) -> String {
    crate::corpus::normalize_whitespace(text.trim_end_matches(|c: char| c == '.' || c.is_whitespace()))
}

/// Renders one stand-alone preventative sentence with a single final period.
pub fn realize(req: &RealizationRequest) -> Result<String> {
    if req.variant.form() != req.form {
        return Err(Error::Argument(format!(
            "variant {} does not realize form {}",
            req.variant, req.form
        )));
    }
    let action = clean(&req.action);
    if action.is_empty() {
        return Err(Error::Argument("action phrase is empty".into()));
    }
    let mut out = format!("{} {action}", req.variant.opener());
    if let Some(trailing) = &req.trailing {
        let text = clean(&trailing.text);
        if !text.is_empty() {
            out.push_str(match trailing.kind {
                TrailingKind::Reason => " ",
                TrailingKind::Participial => ", ",
            });
            out.push_str(&text);
        }
    }
    out.push('.');
    Ok(out)
}

/// Variant chosen for each predicted form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantPreference {
    pub dont: Variant,
    pub neg_tc: Variant,
}

impl Default for VariantPreference {
    fn default() -> Self {
        VariantPreference {
            dont: Variant::Full,
            neg_tc: Variant::BeCareful,
        }
    }
}

impl VariantPreference {
    pub fn for_form(&self, form: FormClass) -> Variant {
        match form {
            FormClass::Dont => self.dont,
            FormClass::NegTc => self.neg_tc,
        }
    }
}

/// Predicts the form from the function features, then realizes it.
pub fn plan_and_realize(
    tree: &DecisionTree,
    intentionality: Intentionality,
    awareness: Awareness,
    action: &str,
    preference: VariantPreference,
) -> Result<String> {
    let form = tree.predict(intentionality, awareness).form;
    realize(&RealizationRequest::new(form, preference.for_form(form), action))
}
