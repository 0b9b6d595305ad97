//! Coder agreement and form/feature association statistics.
//!
//! Agreement uses the K coefficient with chance agreement estimated from the
//! category proportions pooled over both coders:
//!
//! ```text
//! K = (P(A) - P(E)) / (1 - P(E)),    P(E) = Σ_j p_j²
//! ```
//!
//! Association uses the continuity-corrected 2×2 χ² statistic
//!
//! ```text
//! χ² = N (max(|AD - BC| - N/2, 0))² / ((A+B)(C+D)(A+C)(B+D))
//! ```
//!
//! with significance read off the df = 1 critical values.

use std::collections::BTreeMap;
use std::fmt;

use crate::annotation::{CodingSet, ContingencyTable2x2, Feature};
use crate::error::{Error, Result};

/// Qualitative reliability label for a K value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReliabilityBand {
    BelowSlight,
    Slight,
    Fair,
    Moderate,
    Substantial,
    AlmostPerfect,
}

impl ReliabilityBand {
    pub fn token(self) -> &'static str {
        match self {
            ReliabilityBand::BelowSlight => "BELOW_SLIGHT",
            ReliabilityBand::Slight => "SLIGHT",
            ReliabilityBand::Fair => "FAIR",
            ReliabilityBand::Moderate => "MODERATE",
            ReliabilityBand::Substantial => "SUBSTANTIAL",
            ReliabilityBand::AlmostPerfect => "ALMOST_PERFECT",
        }
    }
}

impl fmt::Display for ReliabilityBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Upper-inclusive band boundaries: `(0.20, SLIGHT)` means `0 ≤ K ≤ 0.20`.
const BAND_UPPER_BOUNDS: [(f64, ReliabilityBand); 4] = [
    (0.20, ReliabilityBand::Slight),
    (0.40, ReliabilityBand::Fair),
    (0.60, ReliabilityBand::Moderate),
    (0.80, ReliabilityBand::Substantial),
];

/// Maps a K value to its reliability band. Comparisons are at full precision.
pub fn reliability_band(kappa: f64) -> Result<ReliabilityBand> {
    if kappa.is_nan() || kappa > 1.0 {
        return Err(Error::Argument(format!("kappa {kappa} is not ≤ 1")));
    }
    if kappa < 0.0 {
        return Ok(ReliabilityBand::BelowSlight);
    }
    Ok(BAND_UPPER_BOUNDS
        .iter()
        .find(|(upper, _)| kappa <= *upper)
        .map_or(ReliabilityBand::AlmostPerfect, |&(_, band)| band))
}

/// Agreement statistics for one feature coded by two coders.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub feature: String,
    pub n_items: usize,
    pub p_a: f64,
    pub p_e: f64,
    /// Proportion of the `2 · n_items` pooled assignments per category.
    pub category_proportions: BTreeMap<String, f64>,
    pub kappa: f64,
    pub band: ReliabilityBand,
}

fn check_items<T>(pairs: &[(T, T)]) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::Argument("agreement over an empty item set".into()));
    }
    Ok(())
}

/// Fraction of items on which both coders chose the same label.
pub fn percent_agreement<T: PartialEq>(pairs: &[(T, T)]) -> Result<f64> {
    check_items(pairs)?;
    let agreed = pairs.iter().filter(|(a, b)| a == b).count();
    Ok(agreed as f64 / pairs.len() as f64)
}

/// K coefficient over per-item label pairs.
pub fn kappa<T>(feature: &str, pairs: &[(T, T)]) -> Result<AgreementReport>
where
    T: Ord + fmt::Display,
{
    let p_a = percent_agreement(pairs)?;

    let mut counts: BTreeMap<&T, u64> = BTreeMap::new();
    for (a, b) in pairs {
        *counts.entry(a).or_default() += 1;
        *counts.entry(b).or_default() += 1;
    }
    if counts.len() < 2 {
        return Err(Error::DegenerateMarginals(feature.to_owned()));
    }

    let assignments = (2 * pairs.len()) as f64;
    let category_proportions: BTreeMap<String, f64> = counts
        .iter()
        .map(|(cat, &n)| (cat.to_string(), n as f64 / assignments))
        .collect();
    let p_e: f64 = category_proportions.values().map(|p| p * p).sum();

    // With a agreements over n items and pooled category counts c_j,
    // K = (4na − Σc_j²) / (4n² − Σc_j²); one rounding instead of four keeps
    // rational K values (0.6, 0.8, ...) exact for the band comparison.
    let n = pairs.len() as i128;
    let agreed = pairs.iter().filter(|(a, b)| a == b).count() as i128;
    let squares: i128 = counts.values().map(|&c| (c as i128) * (c as i128)).sum();
    let kappa = (4 * n * agreed - squares) as f64 / (4 * n * n - squares) as f64;

    Ok(AgreementReport {
        feature: feature.to_owned(),
        n_items: pairs.len(),
        p_a,
        p_e,
        category_proportions,
        kappa,
        band: reliability_band(kappa)?,
    })
}

/// K coefficient for one feature of a two-coder coding set.
pub fn agreement(codings: &CodingSet, feature: Feature) -> Result<AgreementReport> {
    let pairs = codings.paired_labels(feature)?;
    kappa(feature.name(), &pairs)
}

/// Significance level of a df = 1 χ² statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Significance {
    NotSignificant,
    P05,
    P01,
    P001,
}

impl Significance {
    pub fn token(self) -> &'static str {
        match self {
            Significance::NotSignificant => "NS",
            Significance::P05 => "0.05",
            Significance::P01 => "0.01",
            Significance::P001 => "0.001",
        }
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Upper-tail critical values of the χ² distribution with one degree of
/// freedom, strictest last.
pub const CRITICAL_VALUES_DF1: [(f64, Significance); 3] = [
    (3.841, Significance::P05),
    (6.635, Significance::P01),
    (10.828, Significance::P001),
];

/// Strictest df = 1 level whose critical value the statistic meets.
pub fn significance_level(statistic: f64) -> Significance {
    CRITICAL_VALUES_DF1
        .iter()
        .rev()
        .find(|(critical, _)| statistic >= *critical)
        .map_or(Significance::NotSignificant, |&(_, level)| level)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub significance: Significance,
    /// Set when `N ≤ 40` or some expected cell count is below 5.
    pub n_warning: bool,
}

/// Continuity-corrected χ² for a 2×2 table, correction clamped at zero.
pub fn chi_square_yates(table: &ContingencyTable2x2) -> Result<ChiSquareResult> {
    let [r1, r2] = table.row_totals();
    let [c1, c2] = table.column_totals();
    for (total, name) in [(r1, "A+B"), (r2, "C+D"), (c1, "A+C"), (c2, "B+D")] {
        if total == 0 {
            return Err(Error::UndefinedStatistic(name));
        }
    }

    let n = table.n() as f64;
    let ad = table.a() as i128 * table.d() as i128;
    let bc = table.b() as i128 * table.c() as i128;
    let corrected = ((ad - bc).unsigned_abs() as f64 - n / 2.0).max(0.0);
    let denominator = r1 as f64 * r2 as f64 * c1 as f64 * c2 as f64;
    let statistic = n * corrected * corrected / denominator;

    let min_expected = [r1, r2]
        .iter()
        .flat_map(|&r| [c1, c2].map(|c| r as f64 * c as f64 / n))
        .fold(f64::INFINITY, f64::min);

    Ok(ChiSquareResult {
        statistic,
        significance: significance_level(statistic),
        n_warning: table.n() <= 40 || min_expected < 5.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // coder1 = XXXXX YYYYY, coder2 = XXXX Y YYYY X
    fn ten_items() -> Vec<(char, char)> {
        "XXXXXYYYYY".chars().zip("XXXXYYYYYX".chars()).collect()
    }

    #[test]
    fn percent_agreement_cases() {
        let same: Vec<_> = (0..50).map(|i| (i % 3, i % 3)).collect();
        assert_eq!(percent_agreement(&same).unwrap(), 1.0);
        assert_eq!(percent_agreement(&ten_items()).unwrap(), 0.8);
        let disjoint: Vec<_> = (0..7).map(|_| ('X', 'Y')).collect();
        assert_eq!(percent_agreement(&disjoint).unwrap(), 0.0);
        assert!(percent_agreement::<u8>(&[]).is_err());
    }

    #[test]
    fn kappa_ten_item_case() {
        let report = kappa("awareness", &ten_items()).unwrap();
        assert_eq!(report.category_proportions["X"], 0.5);
        assert_eq!(report.category_proportions["Y"], 0.5);
        assert_eq!(report.p_e, 0.5);
        assert!((report.kappa - 0.6).abs() < 1e-12);
        assert_eq!(report.band, ReliabilityBand::Moderate);
    }

    #[test]
    fn kappa_total_agreement_is_one() {
        let pairs: Vec<_> = "XYYXYX".chars().map(|c| (c, c)).collect();
        assert_eq!(kappa("f", &pairs).unwrap().kappa, 1.0);
    }

    #[test]
    fn kappa_constant_codings_degenerate() {
        let pairs = vec![('X', 'X'); 12];
        assert!(matches!(kappa("f", &pairs), Err(Error::DegenerateMarginals(_))));
    }

    #[test]
    fn bands() {
        use ReliabilityBand::*;
        let cases = [
            (-0.3, BelowSlight),
            (0.0, Slight),
            (0.20, Slight),
            (0.2000001, Fair),
            (0.40, Fair),
            (0.51, Moderate),
            (0.60, Moderate),
            (0.75, Substantial),
            (0.80, Substantial),
            (0.81, AlmostPerfect),
            (1.0, AlmostPerfect),
        ];
        for (k, band) in cases {
            assert_eq!(reliability_band(k).unwrap(), band, "k = {k}");
        }
        assert!(reliability_band(1.01).is_err());
        assert!(reliability_band(f64::NAN).is_err());
    }

    #[test]
    fn chi_square_hand_computed() {
        // 20 · (100 − 10)² / 10⁴ = 16.2
        let r = chi_square_yates(&ContingencyTable2x2::new(10, 0, 0, 10)).unwrap();
        assert!((r.statistic - 16.2).abs() < 1e-12);
        assert_eq!(r.significance, Significance::P001);
        assert!(r.n_warning);
    }

    #[test]
    fn chi_square_clamp() {
        let r = chi_square_yates(&ContingencyTable2x2::new(25, 25, 25, 25)).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.significance, Significance::NotSignificant);
        assert!(!r.n_warning);
    }

    #[test]
    fn chi_square_zero_marginal() {
        let err = chi_square_yates(&ContingencyTable2x2::new(0, 0, 4, 5)).unwrap_err();
        assert!(matches!(err, Error::UndefinedStatistic("A+B")));
    }

    #[test]
    fn expected_cell_warning_with_large_n() {
        let r = chi_square_yates(&ContingencyTable2x2::new(3, 103, 32, 27)).unwrap();
        assert!(!r.n_warning);
        let r = chi_square_yates(&ContingencyTable2x2::new(1, 60, 2, 60)).unwrap();
        assert!(r.n_warning);
    }

    #[test]
    fn significance_levels() {
        assert_eq!(significance_level(51.4), Significance::P001);
        assert_eq!(significance_level(3.0), Significance::NotSignificant);
        assert_eq!(significance_level(3.841), Significance::P05);
        assert_eq!(significance_level(6.7), Significance::P01);
        assert_eq!(significance_level(10.828), Significance::P001);
    }
}
