use std::fmt::Write as _;

use crate::annotation::FormClass;

use super::patterns::PatternId;
use super::Utterance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternRow {
    pub pattern: PatternId,
    pub raw: usize,
    pub sampled: usize,
    pub kept: usize,
}

/// Per-pattern counts at each pipeline stage. Each utterance is counted once,
/// under its primary pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub total_segments: usize,
    pub rows: Vec<PatternRow>,
}

fn count(items: &[Utterance], id: PatternId) -> usize {
    items.iter().filter(|u| u.primary_pattern() == Some(id)).count()
}

pub fn stage_report(
    total_segments: usize,
    raw_hits: &[Utterance],
    sampled: &[Utterance],
    kept: &[Utterance],
) -> StageReport {
    StageReport {
        total_segments,
        rows: PatternId::ALL
            .iter()
            .map(|&pattern| PatternRow {
                pattern,
                raw: count(raw_hits, pattern),
                sampled: count(sampled, pattern),
                kept: count(kept, pattern),
            })
            .collect(),
    }
}

impl StageReport {
    /// `(raw, sampled, kept)` summed over one family.
    pub fn family_totals(&self, family: FormClass) -> (usize, usize, usize) {
        self.rows
            .iter()
            .filter(|r| r.pattern.family() == family)
            .fold((0, 0, 0), |(a, b, c), r| (a + r.raw, b + r.sampled, c + r.kept))
    }

    pub fn totals(&self) -> (usize, usize, usize) {
        let (a, b, c) = self.family_totals(FormClass::Dont);
        let (d, e, f) = self.family_totals(FormClass::NegTc);
        (a + d, b + e, c + f)
    }

    /// Share of all segments that the probe returned, in percent.
    pub fn probed_percent(&self) -> f64 {
        if self.total_segments == 0 {
            0.0
        } else {
            100.0 * self.totals().0 as f64 / self.total_segments as f64
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<12} {:>8} {:>8} {:>8}", "pattern", "raw", "sampled", "kept");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>8}",
                r.pattern.name(),
                r.raw,
                r.sampled,
                r.kept
            );
        }
        for family in FormClass::ALL {
            let (a, b, c) = self.family_totals(*family);
            let _ = writeln!(out, "{:<12} {:>8} {:>8} {:>8}", family.token(), a, b, c);
        }
        let (a, b, c) = self.totals();
        let _ = writeln!(out, "{:<12} {:>8} {:>8} {:>8}", "total", a, b, c);
        let _ = writeln!(
            out,
            "segments={} probed={:.1}%",
            self.total_segments,
            self.probed_percent()
        );
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,raw,sampled,kept\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.pattern.name(), r.raw, r.sampled, r.kept);
        }
        for family in FormClass::ALL {
            let (a, b, c) = self.family_totals(*family);
            let _ = writeln!(out, "{},{},{},{}", family.token(), a, b, c);
        }
        let (a, b, c) = self.totals();
        let _ = writeln!(out, "total,{a},{b},{c}");
        let _ = writeln!(out, "segments,{},,", self.total_segments);
        out
    }
}
