//! Corpus ingestion: sentence breaking, pattern probing, reproducible
//! sampling, negative-imperative filtering and per-stage counts.

mod filter;
mod patterns;
mod probe;
mod report;
mod sample;
mod segment;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::annotation::FormClass;
use crate::error::{Error, Result};

pub use filter::{
    classify_form, filter_candidate, load_overrides, read_overrides, Filter, FilterVerdict,
    Overrides, RejectReason,
};
pub use patterns::{PatternId, PatternSet, ProbePattern};
pub use probe::{find_occurrences, matched_ids, probe, Occurrence};
pub use report::{stage_report, PatternRow, StageReport};
pub use sample::{sample, sample_indices, sample_per_pattern, Minstd};
pub use segment::{break_sentences, decode_document, normalize_whitespace, Segment, ABBREVIATIONS};

/// One extracted segment of a corpus document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    /// `<source>:<segment index>`.
    pub id: String,
    /// Document path relative to the corpus root.
    pub source: String,
    /// Byte span into the source document.
    pub start: usize,
    pub end: usize,
    pub text: String,
    /// Pattern ids in order of first occurrence; empty before probing.
    pub matched: Vec<PatternId>,
}

impl Utterance {
    pub fn new(source: &str, index: usize, start: usize, text: &str) -> Self {
        Utterance {
            id: format!("{source}:{index}"),
            source: source.to_owned(),
            start,
            end: start + text.len(),
            text: text.to_owned(),
            matched: Vec::new(),
        }
    }

    fn from_segment(source: &str, index: usize, seg: Segment) -> Self {
        Utterance {
            id: format!("{source}:{index}"),
            source: source.to_owned(),
            start: seg.start,
            end: seg.end,
            text: seg.text,
            matched: Vec::new(),
        }
    }

    /// The pattern that occurs first in the text.
    pub fn primary_pattern(&self) -> Option<PatternId> {
        self.matched.first().copied()
    }
}

/// A decoded corpus file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub source: String,
    pub text: String,
}

impl Document {
    pub fn new(source: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            source: source.into(),
            text: text.into(),
        }
    }

    pub fn utterances(&self) -> Vec<Utterance> {
        break_sentences(&self.text)
            .into_iter()
            .enumerate()
            .map(|(i, seg)| Utterance::from_segment(&self.source, i, seg))
            .collect()
    }
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if entry.file_name().to_string_lossy().starts_with('.') {
            continue;
        }
        let kind = entry.file_type().map_err(|e| Error::io(&path, e))?;
        if kind.is_dir() {
            collect_files(&path, out)?;
        } else if kind.is_file() {
            out.push(path);
        }
    }
    Ok(())
}

fn relative_name(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Reads every non-hidden file under `dir` as UTF-8, sorted by relative path.
pub fn read_corpus(dir: impl AsRef<Path>) -> Result<Vec<Document>> {
    let root = dir.as_ref();
    if !root.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "corpus directory not found"),
        ));
    }
    let mut files = Vec::new();
    collect_files(root, &mut files)?;
    let mut named: Vec<(String, PathBuf)> =
        files.into_iter().map(|p| (relative_name(root, &p), p)).collect();
    named.sort();
    named
        .into_par_iter()
        .map(|(name, path)| {
            let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            Ok(Document::new(name.clone(), decode_document(&name, bytes)?))
        })
        .collect()
}

/// Segments and probes documents; output ordered by (source, start).
pub fn extract(documents: &[Document], patterns: &PatternSet) -> (usize, Vec<Utterance>) {
    let per_doc: Vec<(usize, Vec<Utterance>)> = documents
        .par_iter()
        .map(|doc| {
            let utterances = doc.utterances();
            (utterances.len(), probe(&utterances, patterns))
        })
        .collect();
    let total = per_doc.iter().map(|(n, _)| n).sum();
    let mut hits: Vec<Utterance> = per_doc.into_iter().flat_map(|(_, h)| h).collect();
    hits.sort_by(|a, b| (&a.source, a.start).cmp(&(&b.source, b.start)));
    (total, hits)
}

const MATCHES_HEADER: [&str; 6] = ["id", "source", "start", "end", "patterns", "text"];

/// Writes utterances as CSV `id,source,start,end,patterns,text`.
pub fn write_matches<W: Write>(writer: W, utterances: &[Utterance]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let wrap = |e| Error::csv("<output>", e);
    csv.write_record(MATCHES_HEADER).map_err(wrap)?;
    for u in utterances {
        let patterns = u.matched.iter().map(|p| p.name()).collect::<Vec<_>>().join(";");
        csv.write_record([
            u.id.as_str(),
            u.source.as_str(),
            &u.start.to_string(),
            &u.end.to_string(),
            &patterns,
            u.text.as_str(),
        ])
        .map_err(wrap)?;
    }
    csv.flush().map_err(|e| Error::io("<output>", e))
}

pub fn read_matches<R: Read>(file: &str, reader: R) -> Result<Vec<Utterance>> {
    let mut csv = csv::Reader::from_reader(reader);
    let headers = csv.headers().map_err(|e| Error::csv(file, e))?.clone();
    if headers.iter().ne(MATCHES_HEADER) {
        return Err(Error::Validation {
            file: file.to_owned(),
            row: 1,
            column: "header".into(),
            message: format!("expected `{}`", MATCHES_HEADER.join(",")),
        });
    }
    let mut out = Vec::new();
    for result in csv.records() {
        let rec = result.map_err(|e| Error::csv(file, e))?;
        let row = rec.position().map_or(0, |p| p.line() as usize);
        let invalid = |column: &str, message: String| Error::Validation {
            file: file.to_owned(),
            row,
            column: column.to_owned(),
            message,
        };
        let offset = |i: usize, column: &str| {
            rec[i]
                .parse::<usize>()
                .map_err(|e| invalid(column, e.to_string()))
        };
        let matched = rec[4]
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<PatternId>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| invalid("patterns", m))?;
        let (start, end) = (offset(2, "start")?, offset(3, "end")?);
        if end < start {
            return Err(invalid("end", format!("end {end} precedes start {start}")));
        }
        out.push(Utterance {
            id: rec[0].to_owned(),
            source: rec[1].to_owned(),
            start,
            end,
            text: rec[5].to_owned(),
            matched,
        });
    }
    Ok(out)
}

pub fn load_matches(path: impl AsRef<Path>) -> Result<Vec<Utterance>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_matches(&path.display().to_string(), file)
}

/// Settings for one corpus run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub patterns: PatternSet,
    pub cap: usize,
    pub seed: u64,
    pub overrides: Overrides,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            patterns: PatternSet::builtin(),
            cap: 100,
            seed: 0,
            overrides: Overrides::new(),
        }
    }
}

/// A filtered utterance together with its verdict and, when kept, its form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judged {
    pub utterance: Utterance,
    pub verdict: FilterVerdict,
    pub form: Option<FormClass>,
}

/// Every intermediate collection of a probe → sample → filter run.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub total_segments: usize,
    pub hits: Vec<Utterance>,
    pub sampled: Vec<Utterance>,
    pub judged: Vec<Judged>,
}

impl PipelineRun {
    pub fn kept(&self) -> Vec<&Utterance> {
        self.judged
            .iter()
            .filter(|j| j.verdict.keep)
            .map(|j| &j.utterance)
            .collect()
    }

    pub fn report(&self) -> StageReport {
        let kept: Vec<Utterance> = self.kept().into_iter().cloned().collect();
        stage_report(self.total_segments, &self.hits, &self.sampled, &kept)
    }
}

/// Judges each sampled utterance.
pub fn judge(filter: &Filter, sampled: &[Utterance], overrides: &Overrides) -> Result<Vec<Judged>> {
    sampled
        .iter()
        .map(|u| {
            let verdict = filter.verdict(u, overrides)?;
            let form = if verdict.keep {
                Some(filter.classify(u, &verdict)?)
            } else {
                None
            };
            Ok(Judged {
                utterance: u.clone(),
                verdict,
                form,
            })
        })
        .collect()
}

pub fn run_pipeline(documents: &[Document], config: &PipelineConfig) -> Result<PipelineRun> {
    let (total_segments, hits) = extract(documents, &config.patterns);
    let sampled = sample_per_pattern(&hits, config.cap, config.seed)?;
    let filter = Filter::new(config.patterns.clone());
    let judged = judge(&filter, &sampled, &config.overrides)?;
    Ok(PipelineRun {
        total_segments,
        hits,
        sampled,
        judged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn utterance_spans_match_document() {
        let doc = Document::new("d.txt", "Do  not\nenter.   Stay out.\n\nDon't   run!");
        let us = doc.utterances();
        assert_eq!(us.len(), 3);
        for (i, u) in us.iter().enumerate() {
            assert_eq!(u.id, format!("d.txt:{i}"));
            assert_eq!(normalize_whitespace(&doc.text[u.start..u.end]), u.text);
        }
    }

    #[test]
    fn matches_csv_round_trip() {
        let doc = Document::new("a/b.txt", "Don't go, \"do not\" stay. Fine.");
        let (_, hits) = extract(&[doc], &PatternSet::builtin());
        let mut buf = Vec::new();
        write_matches(&mut buf, &hits).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("id,source,start,end,patterns,text\n"));
        assert!(text.contains("dont;do_not"));
        assert_eq!(read_matches("m.csv", &buf[..]).unwrap(), hits);
    }

    #[test]
    fn missing_corpus_dir_names_path() {
        let err = read_corpus("does-not-exist/").unwrap_err();
        assert!(err.to_string().contains("does-not-exist"));
    }
}
