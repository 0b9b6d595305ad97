//! Corpus to generated text: probe, sample, filter, code, induce, realize.
//!
//! `cargo run --example full_pipeline [CORPUS_DIR]`

use preventkit::annotation::{agreement_subset, Awareness, Intentionality};
use preventkit::corpus::{read_corpus, run_pipeline, PipelineConfig};
use preventkit::fixtures;
use preventkit::induction::{induce, instances_from_subset};
use preventkit::realizer::{plan_and_realize, VariantPreference};

fn main() -> preventkit::Result<()> {
    let documents = match std::env::args().nth(1) {
        Some(dir) => read_corpus(dir)?,
        None => fixtures::corpus_documents(),
    };
    let run = run_pipeline(&documents, &PipelineConfig::default())?;
    print!("{}", run.report().to_text());
    for j in &run.judged {
        let label = j.form.map_or_else(
            || j.verdict.reject_reason.map_or("", |r| r.token()).to_owned(),
            |f| f.to_string(),
        );
        println!("  {:<15} {}", label, j.utterance.text);
    }

    let tree = induce(&instances_from_subset(&agreement_subset(&fixtures::codings_239())?))?;
    let pref = VariantPreference::default();
    for (i, a, action) in [
        (Intentionality::Unc, Awareness::Aw, "burn the garlic"),
        (Intentionality::Con, Awareness::Unaw, "scrub or wet-mop the parquet"),
        (Intentionality::Unc, Awareness::Unaw, "sand it or tear it up"),
    ] {
        println!("{i}/{a}: {}", plan_and_realize(&tree, i, a, action, pref)?);
    }
    Ok(())
}
