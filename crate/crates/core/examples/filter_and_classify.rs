//! Reject hits that are not negative imperatives and classify the rest.

use preventkit::corpus::{probe, Filter, Overrides, PatternSet, Utterance};

fn main() -> preventkit::Result<()> {
    let sentences = [
        "Do not scrub or wet-mop the parquet.",
        "Be careful not to burn the garlic.",
        "If you don't see the Mail Tool window, open it from the menu.",
        "Make sure to lock the bit in the chuck.",
        "Take care never to touch the blade.",
    ];
    let mut overrides = Overrides::new();
    overrides.insert("demo:4".into(), false);
    let raw: Vec<Utterance> = sentences.iter().enumerate().map(|(i, s)| Utterance::new("demo", i, 0, s)).collect();
    let hits = probe(&raw, &PatternSet::builtin());
    let filter = Filter::new(PatternSet::builtin());
    for u in &hits {
        let verdict = filter.verdict(u, &overrides)?;
        let outcome = if verdict.keep {
            filter.classify(u, &verdict)?.to_string()
        } else {
            format!("rejected {}", verdict.reject_reason.map_or("", |r| r.token()))
        };
        println!("{:<24} {}", outcome, u.text);
    }
    Ok(())
}
