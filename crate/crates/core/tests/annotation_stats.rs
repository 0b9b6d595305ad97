mod common;

use std::collections::BTreeMap;

use preventkit::annotation::{
    agreement_subset, build_contingency, CodingRecord, CodingSet, ContingencyTable2x2, Feature,
};
use preventkit::fixtures;
use preventkit::stats::{
    agreement, chi_square_yates, kappa, percent_agreement, significance_level, CRITICAL_VALUES_DF1,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counts agreed examples straight from the CSV text, without the loader.
fn brute_force_agreed(csv: &str) -> usize {
    let mut by_id: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
    for line in csv.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        by_id.entry(f[0]).or_default().push((f[3], f[4]));
    }
    by_id
        .values()
        .filter(|codes| codes.iter().all(|c| *c == codes[0]))
        .count()
}

#[test]
fn synthetic_fixture_has_165_agreed_examples() {
    assert_eq!(brute_force_agreed(fixtures::CODINGS_239), 165);
    let set = fixtures::codings_239();
    assert_eq!(set.example_count(), 239);
    let subset = agreement_subset(&set).unwrap();
    assert_eq!(subset.len(), 165);
    assert!(subset.windows(2).all(|w| w[0].example_id < w[1].example_id));
}

#[test]
fn fixture_reproduces_both_contingency_tables() {
    let subset = agreement_subset(&fixtures::codings_239()).unwrap();
    let intent = build_contingency(&subset, Feature::Intentionality).unwrap();
    assert_eq!(intent.cells(), [[61, 45], [0, 59]]);
    assert_eq!(intent.n(), 165);
    let aware = build_contingency(&subset, Feature::Awareness).unwrap();
    assert_eq!(aware.cells(), [[3, 103], [32, 27]]);
    assert_eq!(aware.row_totals(), intent.row_totals());
    assert_eq!(aware.column_totals(), [35, 130]);
    assert_eq!(intent.column_totals(), [61, 104]);
}

#[test]
fn agreed_165_file_is_the_agreed_subset() {
    let from_full = agreement_subset(&fixtures::codings_239()).unwrap();
    let from_file = agreement_subset(&fixtures::agreed_165()).unwrap();
    assert_eq!(from_full, from_file);
    assert_eq!(fixtures::agreed_165().example_count(), 165);
}

#[test]
fn fixture_is_consistent_with_reported_agreement() {
    let set = fixtures::codings_239();
    let intent = agreement(&set, Feature::Intentionality).unwrap();
    let aware = agreement(&set, Feature::Awareness).unwrap();
    let form = agreement(&set, Feature::Form).unwrap();
    // 182/239 and 221/239 are the closest counts to the reported 76.1% and 92.5%.
    assert_eq!(intent.p_a, 182.0 / 239.0);
    assert_eq!(aware.p_a, 221.0 / 239.0);
    assert!((intent.p_a * 100.0 - 76.1).abs() < 0.1);
    assert!((aware.p_a * 100.0 - 92.5).abs() < 0.1);
    assert_eq!(format!("{:.2}", intent.kappa), "0.51");
    assert_eq!(format!("{:.2}", aware.kappa), "0.75");
    assert_eq!(form.kappa, 1.0);
}

#[test]
fn ten_item_fixture_kappa() {
    let r = agreement(&fixtures::codings_10(), Feature::Awareness).unwrap();
    assert_eq!(r.n_items, 10);
    assert!((r.p_a - 0.8).abs() < 1e-12);
    assert!((r.p_e - 0.5).abs() < 1e-12);
    assert!((r.kappa - 0.6).abs() < 1e-12);
}

#[test]
fn coding_set_round_trip() {
    let set = fixtures::codings_239();
    let mut buf = Vec::new();
    set.write(&mut buf).unwrap();
    assert_eq!(CodingSet::from_reader("rt", &buf[..]).unwrap(), set);
}

#[test]
fn random_coders_have_near_zero_kappa() {
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(bool, bool)> = (0..1000).map(|_| (rng.gen(), rng.gen())).collect();
        let k = kappa("random", &pairs).unwrap().kappa;
        assert!(k.abs() < 0.15, "seed {seed}: K = {k}");
    }
}

#[test]
fn critical_values_match_quadrature_oracle() {
    for (critical, alpha) in CRITICAL_VALUES_DF1.iter().map(|&(c, _)| c).zip([0.05, 0.01, 0.001]) {
        let tail = common::chi2_df1_upper_tail(critical);
        assert!((tail - alpha).abs() / alpha < 1e-3, "P(X ≥ {critical}) = {tail}");
        assert_eq!(format!("{tail:.3}"), format!("{alpha:.3}"));
        assert_eq!(format!("{:.3}", common::chi2_df1_critical(alpha)), format!("{critical:.3}"));
    }
}

#[test]
fn paper_tables_scaled_keep_significance() {
    for (a, b, c, d) in [(61, 45, 0, 59), (3, 103, 32, 27)] {
        let base = chi_square_yates(&ContingencyTable2x2::new(a, b, c, d)).unwrap();
        for k in [2, 3] {
            let t = ContingencyTable2x2::new(k * a, k * b, k * c, k * d);
            let scaled = chi_square_yates(&t).unwrap();
            assert_eq!(t.n(), k * 165);
            assert!(scaled.significance >= base.significance);
            assert!(scaled.statistic > base.statistic);
        }
    }
}

fn labels(n: usize) -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..3, 0u8..3), n)
}

proptest! {
    #[test]
    fn kappa_invariant_under_reorder_and_swap(pairs in labels(40), rot in 0usize..40) {
        prop_assume!(pairs.iter().flat_map(|(a, b)| [a, b]).any(|x| *x != pairs[0].0));
        let k = kappa("f", &pairs).unwrap().kappa;
        let mut rotated = pairs.clone();
        rotated.rotate_left(rot);
        let swapped: Vec<_> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        prop_assert!((kappa("f", &rotated).unwrap().kappa - k).abs() < 1e-12);
        prop_assert!((kappa("f", &swapped).unwrap().kappa - k).abs() < 1e-12);
        prop_assert!(k <= 1.0);
    }

    #[test]
    fn kappa_one_iff_total_agreement(pairs in labels(25)) {
        prop_assume!(pairs.iter().flat_map(|(a, b)| [a, b]).any(|x| *x != pairs[0].0));
        let r = kappa("f", &pairs).unwrap();
        prop_assert_eq!(r.kappa == 1.0, r.p_a == 1.0);
        prop_assert!((r.kappa - (r.p_a - r.p_e) / (1.0 - r.p_e)).abs() < 1e-12);
        let total: f64 = r.category_proportions.values().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chance_agreement_matches_pair_enumeration(pairs in prop::collection::vec((0u8..4, 0u8..4), 1..80)) {
        prop_assume!(pairs.iter().flat_map(|(a, b)| [a, b]).any(|x| *x != pairs[0].0));
        let r = kappa("f", &pairs).unwrap();
        prop_assert!((r.p_e - common::chance_agreement_by_pairs(&pairs)).abs() < 1e-12);
        prop_assert_eq!(percent_agreement(&pairs).unwrap(), r.p_a);
    }

    #[test]
    fn chi_square_transpose_symmetric(a in 0u64..200, b in 0u64..200, c in 0u64..200, d in 0u64..200) {
        let t = ContingencyTable2x2::new(a, b, c, d);
        match (chi_square_yates(&t), chi_square_yates(&t.transposed())) {
            (Ok(x), Ok(y)) => {
                prop_assert!((x.statistic - y.statistic).abs() <= 1e-12 * x.statistic.max(1.0));
                prop_assert!(x.statistic >= 0.0);
                prop_assert_eq!(x.significance, significance_level(x.statistic));
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "only one orientation defined"),
        }
    }

    #[test]
    fn agreement_subset_permutation_invariant(seed: u64) {
        let set = fixtures::codings_239();
        let mut records: Vec<CodingRecord> = set.records().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..records.len()).rev() {
            records.swap(i, rng.gen_range(0..=i));
        }
        let shuffled = CodingSet::from_records(records).unwrap();
        prop_assert_eq!(agreement_subset(&shuffled).unwrap(), agreement_subset(&set).unwrap());
    }
}
