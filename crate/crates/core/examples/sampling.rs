//! Reproducible per-pattern sampling with the MINSTD generator.
//!
//! `cargo run --example sampling -- [SEED]`

use preventkit::corpus::{probe, sample_indices, sample_per_pattern, Minstd, PatternSet, Utterance};

fn main() -> preventkit::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);

    let mut rng = Minstd::new(seed);
    let draws: Vec<u32> = (0..5).map(|_| rng.next_u32()).collect();
    println!("first draws for seed {seed}: {draws:?}");
    println!("5 of 20: {:?}", sample_indices(20, 5, seed)?);

    let raw: Vec<Utterance> = (0..30)
        .map(|k| {
            let text = match k % 3 {
                0 => format!("Make sure not to lose screw {k}."),
                _ => format!("Don't overtighten screw {k}."),
            };
            Utterance::new("demo", k, 0, &text)
        })
        .collect();
    let hits = probe(&raw, &PatternSet::builtin());
    let picked = sample_per_pattern(&hits, 4, seed)?;
    for u in &picked {
        println!("{:<8} {:<10} {}", u.id, u.primary_pattern().map_or("", |p| p.name()), u.text);
    }
    Ok(())
}
