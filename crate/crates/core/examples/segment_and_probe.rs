//! Break a document into sentences and find the ones containing a probe form.
//!
//! `cargo run --example segment_and_probe [FILE]`

use preventkit::corpus::{break_sentences, find_occurrences, Document, PatternSet};

const SAMPLE: &str = "Fill gaps with wood putty, e.g. the two-part kind. \
Don't sand it until it has cured! Be careful not to gouge the veneer.\n\n\
Take care that the varnish is dry before you ensure the room is ventilated.";

fn main() -> preventkit::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|e| preventkit::Error::Argument(format!("{path}: {e}")))?,
        None => SAMPLE.to_owned(),
    };
    let patterns = PatternSet::builtin();
    for seg in break_sentences(&text) {
        let hits = find_occurrences(&seg.text, &patterns);
        let names: Vec<_> = hits.iter().map(|o| o.pattern.name()).collect();
        println!("[{:>4}..{:<4}] {:<20} {}", seg.start, seg.end, names.join(","), seg.text);
    }
    let doc = Document::new("sample", text);
    let hits = preventkit::corpus::probe(&doc.utterances(), &patterns);
    println!("{} of {} segments contain a probe form", hits.len(), doc.utterances().len());
    Ok(())
}
