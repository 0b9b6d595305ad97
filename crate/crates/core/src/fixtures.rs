//! Bundled data sets used by the tests, the examples and the CLI docs.
//!
//! * [`CODINGS_239`]: a synthetic two-coder coding set of 239 examples, 165
//!   of which have full agreement on the function features. The agreed
//!   subset carries the joint counts of [`JOINT_COUNTS`], whose marginals
//!   are the form × intentionality table (61, 45, 0, 59) and the
//!   form × awareness table (3, 103, 32, 27). The 74 conflicted examples
//!   are arranged so the set also has raw agreement of 182/239 and 221/239.
//! * [`AGREED_165`]: just the 165 agreed examples.
//! * [`CODINGS_10`]: ten items where the coders agree on awareness for 8.
//! * [`corpus_documents`]: nine instruction sentences in three files (two
//!   of them false positives of the probe) plus surrounding context.

use crate::annotation::{Awareness, CodingSet, FormClass, Intentionality};
use crate::corpus::Document;
use crate::induction::TrainingInstance;

pub const CODINGS_239: &str = include_str!("../fixtures/codings239.csv");
pub const AGREED_165: &str = include_str!("../fixtures/agreed165.csv");
pub const CODINGS_10: &str = include_str!("../fixtures/codings10.csv");

const CORPUS: [(&str, &str); 3] = [
    ("cooking.txt", include_str!("../fixtures/corpus/cooking.txt")),
    ("home_repair.txt", include_str!("../fixtures/corpus/home_repair.txt")),
    ("openwindows.txt", include_str!("../fixtures/corpus/openwindows.txt")),
];

/// Weighted (intentionality, awareness, form) counts of the agreed subset.
/// Cells absent from the list have zero weight.
pub const JOINT_COUNTS: [(Intentionality, Awareness, FormClass, u64); 5] = [
    (Intentionality::Con, Awareness::Aw, FormClass::Dont, 3),
    (Intentionality::Con, Awareness::Unaw, FormClass::Dont, 58),
    (Intentionality::Unc, Awareness::Unaw, FormClass::Dont, 45),
    (Intentionality::Unc, Awareness::Aw, FormClass::NegTc, 32),
    (Intentionality::Unc, Awareness::Unaw, FormClass::NegTc, 27),
];

pub fn joint_instances() -> Vec<TrainingInstance> {
    JOINT_COUNTS
        .iter()
        .map(|&(intentionality, awareness, label, weight)| TrainingInstance {
            intentionality,
            awareness,
            label,
            weight,
        })
        .collect()
}

pub fn codings_239() -> CodingSet {
    CodingSet::parse(CODINGS_239).expect("bundled fixture is valid")
}

pub fn agreed_165() -> CodingSet {
    CodingSet::parse(AGREED_165).expect("bundled fixture is valid")
}

pub fn codings_10() -> CodingSet {
    CodingSet::parse(CODINGS_10).expect("bundled fixture is valid")
}

pub fn corpus_documents() -> Vec<Document> {
    CORPUS
        .iter()
        .map(|(name, text)| Document::new(*name, *text))
        .collect()
}

/// Directory holding the bundled fixture files on disk.
pub fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
