//! Raw agreement, chance agreement, kappa and reliability band per feature.
//!
//! `cargo run --example agreement [CODINGS.csv]`

use preventkit::annotation::{load_codings, Feature};
use preventkit::fixtures;
use preventkit::stats::agreement;

fn main() -> preventkit::Result<()> {
    let codings = match std::env::args().nth(1) {
        Some(path) => load_codings(path)?,
        None => fixtures::codings_239(),
    };
    println!("{} examples, coders {:?}", codings.example_count(), codings.roster());
    for feature in Feature::ALL {
        let r = agreement(&codings, feature)?;
        println!(
            "{:<15} P(A)={:.4} P(E)={:.4} K={:.4} {}",
            feature.name(),
            r.p_a,
            r.p_e,
            r.kappa,
            r.band
        );
    }
    Ok(())
}
