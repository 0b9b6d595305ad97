//! Chi-square association between form and the function features.

use preventkit::annotation::{agreement_subset, build_contingency, ContingencyTable2x2, Feature};
use preventkit::fixtures;
use preventkit::stats::chi_square_yates;

fn main() -> preventkit::Result<()> {
    let subset = agreement_subset(&fixtures::codings_239())?;
    println!("{} examples with full agreement", subset.len());
    for feature in Feature::FUNCTION {
        let table = build_contingency(&subset, feature)?;
        let r = chi_square_yates(&table)?;
        println!("{feature}: {:?} chi2={:.2} sig={}", table.cells(), r.statistic, r.significance);
    }

    let small = chi_square_yates(&ContingencyTable2x2::new(6, 2, 1, 7))?;
    println!("small table: chi2={:.3} sig={} warning={}", small.statistic, small.significance, small.n_warning);
    match chi_square_yates(&ContingencyTable2x2::new(4, 0, 3, 0)) {
        Ok(r) => println!("unexpected: {}", r.statistic),
        Err(e) => println!("empty column: {e}"),
    }
    Ok(())
}
