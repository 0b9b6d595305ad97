//! Induce a decision tree from the agreed examples and read its rules.

use preventkit::annotation::{agreement_subset, Awareness, Intentionality};
use preventkit::fixtures;
use preventkit::induction::{induce, instances_from_subset, split_score, Attribute, DecisionTree};

fn main() -> preventkit::Result<()> {
    let instances = instances_from_subset(&agreement_subset(&fixtures::codings_239())?);
    for attribute in Attribute::ALL {
        let s = split_score(&instances, attribute);
        println!("{attribute}: gain={:.4} split={:.4} ratio={:.4}", s.gain, s.split_info, s.gain_ratio);
    }

    let tree = induce(&instances)?;
    let text = tree.serialize();
    print!("{text}");
    assert_eq!(DecisionTree::deserialize(&text)?, tree);

    for i in Intentionality::ALL {
        for a in Awareness::ALL {
            let p = tree.predict(*i, *a);
            println!("{i} {a} -> {} ({:.3})", p.form, p.confidence);
        }
    }
    Ok(())
}
