//! Coding schema, multi-coder coding sets and the form × feature tables.
//!
//! Every example is coded for one form feature and two function features:
//!
//! * **form**: `DONT` (negative auxiliary *do not* / *don't*) or `NEG_TC`
//!   (*take care*, *be careful*, *make sure*, *ensure*, *be sure*,
//!   *be certain* with a negative complement).
//! * **intentionality**: `CON` when the writer expects the reader to intend
//!   the negated action, `UNC` when the reader would stumble into it or
//!   overlook a crucial aspect of it.
//! * **awareness**: `AW` when the reader is presumed to know the negated
//!   action has bad consequences, `UNAW` otherwise.
//!
//! A coding file is CSV with header `example_id,coder,form,intentionality,awareness`;
//! lines starting with `#` are comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

macro_rules! coded_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $token:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// The exact token used in coding files.
            pub fn token(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.token())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
                match s {
                    $($token => Ok($name::$variant),)+
                    _ => Err(format!(
                        "unknown {} token `{}` (expected one of {})",
                        stringify!($name),
                        s,
                        [$($token),+].join("|")
                    )),
                }
            }
        }
    };
}

coded_enum!(
    /// Grammatical surface class of a preventative expression.
    FormClass { Dont => "DONT", NegTc => "NEG_TC" }
);
coded_enum!(
    /// Whether the reader is expected to consciously intend the negated action.
    Intentionality { Con => "CON", Unc => "UNC" }
);
coded_enum!(
    /// Whether the reader is presumed aware that the negated action is bad.
    Awareness { Aw => "AW", Unaw => "UNAW" }
);

/// A coded feature, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Form,
    Intentionality,
    Awareness,
}

impl Feature {
    pub const ALL: [Feature; 3] = [Feature::Form, Feature::Intentionality, Feature::Awareness];
    pub const FUNCTION: [Feature; 2] = [Feature::Intentionality, Feature::Awareness];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Form => "form",
            Feature::Intentionality => "intentionality",
            Feature::Awareness => "awareness",
        }
    }

    /// Category tokens in their canonical order.
    pub fn categories(self) -> [&'static str; 2] {
        match self {
            Feature::Form => [FormClass::Dont.token(), FormClass::NegTc.token()],
            Feature::Intentionality => [Intentionality::Con.token(), Intentionality::Unc.token()],
            Feature::Awareness => [Awareness::Aw.token(), Awareness::Unaw.token()],
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "form" => Ok(Feature::Form),
            "intentionality" => Ok(Feature::Intentionality),
            "awareness" => Ok(Feature::Awareness),
            _ => Err(format!(
                "unknown feature `{s}` (expected form, intentionality or awareness)"
            )),
        }
    }
}

/// One coder's judgment of one example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingRecord {
    pub example_id: String,
    pub coder: String,
    pub form: FormClass,
    pub intentionality: Intentionality,
    pub awareness: Awareness,
}

impl CodingRecord {
    pub fn label(&self, feature: Feature) -> &'static str {
        match feature {
            Feature::Form => self.form.token(),
            Feature::Intentionality => self.intentionality.token(),
            Feature::Awareness => self.awareness.token(),
        }
    }
}

const HEADER: [&str; 5] = ["example_id", "coder", "form", "intentionality", "awareness"];

/// A validated set of coding records.
///
/// Every `(example_id, coder)` pair is unique and every example carries
/// records from the same coder roster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingSet {
    records: Vec<CodingRecord>,
    roster: BTreeSet<String>,
}

impl CodingSet {
    /// Validates records built in memory.
    pub fn from_records(records: Vec<CodingRecord>) -> Result<Self> {
        let rows: Vec<usize> = (1..=records.len()).collect();
        Self::validate("<records>", records, &rows)
    }

    fn validate(file: &str, records: Vec<CodingRecord>, rows: &[usize]) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut by_example: BTreeMap<&str, (usize, BTreeSet<&str>)> = BTreeMap::new();
        for (record, &row) in records.iter().zip(rows) {
            let key = (record.example_id.as_str(), record.coder.as_str());
            if let Some(first) = seen.insert(key, row) {
                return Err(Error::Validation {
                    file: file.to_owned(),
                    row,
                    column: "coder".into(),
                    message: format!(
                        "duplicate coding of `{}` by `{}` (first seen on row {first})",
                        record.example_id, record.coder
                    ),
                });
            }
            by_example
                .entry(record.example_id.as_str())
                .or_insert_with(|| (row, BTreeSet::new()))
                .1
                .insert(record.coder.as_str());
        }

        let roster: BTreeSet<String> = records.iter().map(|r| r.coder.clone()).collect();
        for (example, (row, coders)) in &by_example {
            if coders.len() != roster.len() {
                let missing: Vec<&str> = roster
                    .iter()
                    .map(String::as_str)
                    .filter(|c| !coders.contains(c))
                    .collect();
                return Err(Error::Validation {
                    file: file.to_owned(),
                    row: *row,
                    column: "coder".into(),
                    message: format!(
                        "example `{example}` is missing codings from {}",
                        missing.join(", ")
                    ),
                });
            }
        }

        Ok(CodingSet { records, roster })
    }

    /// Parses a coding file from any reader.
    pub fn from_reader<R: Read>(file: &str, reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers = csv.headers().map_err(|e| Error::csv(file, e))?.clone();
        if headers.iter().ne(HEADER.iter().copied()) {
            return Err(Error::Validation {
                file: file.to_owned(),
                row: 1,
                column: "header".into(),
                message: format!(
                    "expected `{}`, found `{}`",
                    HEADER.join(","),
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }

        let mut records = Vec::new();
        let mut rows = Vec::new();
        for result in csv.records() {
            let raw = result.map_err(|e| Error::csv(file, e))?;
            let row = raw.position().map_or(0, |p| p.line() as usize);
            let field = |i: usize| raw.get(i).unwrap_or("");
            fn parse<T: FromStr<Err = String>>(
                file: &str,
                row: usize,
                column: &str,
                value: &str,
            ) -> Result<T> {
                value.parse().map_err(|message| Error::Validation {
                    file: file.to_owned(),
                    row,
                    column: column.to_owned(),
                    message,
                })
            }
            for (i, column) in HEADER[..2].iter().enumerate() {
                if field(i).is_empty() {
                    return Err(Error::Validation {
                        file: file.to_owned(),
                        row,
                        column: (*column).to_owned(),
                        message: "empty value".into(),
                    });
                }
            }
            records.push(CodingRecord {
                example_id: field(0).to_owned(),
                coder: field(1).to_owned(),
                form: parse(file, row, HEADER[2], field(2))?,
                intentionality: parse(file, row, HEADER[3], field(3))?,
                awareness: parse(file, row, HEADER[4], field(4))?,
            });
            rows.push(row);
        }
        Self::validate(file, records, &rows)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader("<string>", text.as_bytes())
    }

    /// Writes the set back out in coding-file format, records in stored order.
    pub fn write<W: Write>(&self, writer: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        let wrap = |e| Error::csv("<output>", e);
        csv.write_record(HEADER).map_err(wrap)?;
        for r in &self.records {
            csv.write_record([
                r.example_id.as_str(),
                r.coder.as_str(),
                r.form.token(),
                r.intentionality.token(),
                r.awareness.token(),
            ])
            .map_err(wrap)?;
        }
        csv.flush()
            .map_err(|e| Error::io("<output>", e))
    }

    pub fn records(&self) -> &[CodingRecord] {
        &self.records
    }

    pub fn roster(&self) -> &BTreeSet<String> {
        &self.roster
    }

    /// Distinct example ids in sorted order.
    pub fn example_ids(&self) -> BTreeSet<&str> {
        self.records.iter().map(|r| r.example_id.as_str()).collect()
    }

    pub fn example_count(&self) -> usize {
        self.example_ids().len()
    }

    /// Records grouped by example id, each group ordered by coder name.
    pub fn by_example(&self) -> BTreeMap<&str, Vec<&CodingRecord>> {
        let mut groups: BTreeMap<&str, Vec<&CodingRecord>> = BTreeMap::new();
        for r in &self.records {
            groups.entry(r.example_id.as_str()).or_default().push(r);
        }
        for group in groups.values_mut() {
            group.sort_by(|a, b| a.coder.cmp(&b.coder));
        }
        groups
    }

    /// Per-example label pairs for one feature, first coder in roster order
    /// on the left. Requires a roster of exactly two coders.
    pub fn paired_labels(&self, feature: Feature) -> Result<Vec<(&'static str, &'static str)>> {
        if self.roster.len() != 2 {
            return Err(Error::UnsupportedRoster(self.roster.len()));
        }
        Ok(self
            .by_example()
            .values()
            .map(|group| (group[0].label(feature), group[1].label(feature)))
            .collect())
    }
}

/// Loads and validates a coding file.
pub fn load_codings(path: impl AsRef<Path>) -> Result<CodingSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    CodingSet::from_reader(&path.display().to_string(), std::io::BufReader::new(file))
}

/// An example on which every coder agreed on both function features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreedExample {
    pub example_id: String,
    pub intentionality: Intentionality,
    pub awareness: Awareness,
    pub form: FormClass,
}

/// Keeps the examples on which all coders agree on intentionality and on
/// awareness, sorted by example id.
///
/// Form coding is expected to be unanimous; a form disagreement is reported
/// as corrupt input rather than silently dropped.
pub fn agreement_subset(codings: &CodingSet) -> Result<Vec<AgreedExample>> {
    if codings.roster().len() < 2 {
        return Err(Error::Argument(format!(
            "agreement subset needs at least 2 coders per example, roster has {}",
            codings.roster().len()
        )));
    }
    let mut out = Vec::new();
    for (example_id, group) in codings.by_example() {
        let first = group[0];
        if let Some(other) = group.iter().find(|r| r.form != first.form) {
            return Err(Error::Data(format!(
                "form disagreement on `{example_id}`: {} coded {}, {} coded {}",
                first.coder, first.form, other.coder, other.form
            )));
        }
        let unanimous = group.iter().all(|r| {
            r.intentionality == first.intentionality && r.awareness == first.awareness
        });
        if unanimous {
            out.push(AgreedExample {
                example_id: example_id.to_owned(),
                intentionality: first.intentionality,
                awareness: first.awareness,
                form: first.form,
            });
        }
    }
    Ok(out)
}

/// A 2×2 cross-tabulation.
///
/// ```text
///              col[0]  col[1]
///   row[0]       A       B
///   row[1]       C       D
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable2x2 {
    cells: [[u64; 2]; 2],
    pub row_labels: [String; 2],
    pub column_labels: [String; 2],
}

impl ContingencyTable2x2 {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        ContingencyTable2x2 {
            cells: [[a, b], [c, d]],
            row_labels: ["row1".into(), "row2".into()],
            column_labels: ["col1".into(), "col2".into()],
        }
    }

    pub fn with_labels(mut self, rows: [&str; 2], columns: [&str; 2]) -> Self {
        self.row_labels = rows.map(str::to_owned);
        self.column_labels = columns.map(str::to_owned);
        self
    }

    pub fn a(&self) -> u64 {
        self.cells[0][0]
    }

    pub fn b(&self) -> u64 {
        self.cells[0][1]
    }

    pub fn c(&self) -> u64 {
        self.cells[1][0]
    }

    pub fn d(&self) -> u64 {
        self.cells[1][1]
    }

    pub fn cells(&self) -> [[u64; 2]; 2] {
        self.cells
    }

    pub fn n(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    pub fn row_totals(&self) -> [u64; 2] {
        [self.a() + self.b(), self.c() + self.d()]
    }

    pub fn column_totals(&self) -> [u64; 2] {
        [self.a() + self.c(), self.b() + self.d()]
    }

    /// Swaps the roles of rows and columns (`B` ↔ `C`).
    pub fn transposed(&self) -> Self {
        ContingencyTable2x2 {
            cells: [[self.a(), self.c()], [self.b(), self.d()]],
            row_labels: self.column_labels.clone(),
            column_labels: self.row_labels.clone(),
        }
    }
}

/// Cross-tabulates form (rows `DONT`, `NEG_TC`) against one function feature
/// (columns `CON`, `UNC` or `AW`, `UNAW`).
pub fn build_contingency(subset: &[AgreedExample], feature: Feature) -> Result<ContingencyTable2x2> {
    if subset.is_empty() {
        return Err(Error::Argument("contingency table of an empty subset".into()));
    }
    let mut cells = [[0u64; 2]; 2];
    for ex in subset {
        let row = match ex.form {
            FormClass::Dont => 0,
            FormClass::NegTc => 1,
        };
        let col = match feature {
            Feature::Intentionality => (ex.intentionality == Intentionality::Unc) as usize,
            Feature::Awareness => (ex.awareness == Awareness::Unaw) as usize,
            Feature::Form => {
                return Err(Error::Argument(
                    "contingency tables cross form with a function feature; `form` is not one".into(),
                ))
            }
        };
        cells[row][col] += 1;
    }
    Ok(ContingencyTable2x2::new(cells[0][0], cells[0][1], cells[1][0], cells[1][1])
        .with_labels(Feature::Form.categories(), feature.categories()))
}
