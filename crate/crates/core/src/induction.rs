//! Decision-tree induction from the two function features to form.
//!
//! Top-down induction in the C4.5 style: at each node the attribute with the
//! largest information gain ratio (gain / split information, in bits) among
//! attributes with positive gain is chosen. A node becomes a leaf when it is
//! pure, when no attribute is left, or when no attribute has positive gain.
//! No pruning is applied.
//!
//! Tree files hold one node per line, root first:
//!
//! ```text
//! node <id> leaf <label> <count_DONT> <count_NEG_TC>
//! node <id> split <feature> <child for CON|AW> <child for UNC|UNAW>
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::annotation::{AgreedExample, Awareness, FormClass, Intentionality};
use crate::error::{Error, Result};

/// Gains at or below this are treated as zero.
const GAIN_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribute {
    Intentionality,
    Awareness,
}

impl Attribute {
    pub const ALL: [Attribute; 2] = [Attribute::Intentionality, Attribute::Awareness];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Intentionality => "intentionality",
            Attribute::Awareness => "awareness",
        }
    }

    pub fn value_names(self) -> [&'static str; 2] {
        match self {
            Attribute::Intentionality => ["CON", "UNC"],
            Attribute::Awareness => ["AW", "UNAW"],
        }
    }

    fn branch(self, intentionality: Intentionality, awareness: Awareness) -> usize {
        match self {
            Attribute::Intentionality => (intentionality == Intentionality::Unc) as usize,
            Attribute::Awareness => (awareness == Awareness::Unaw) as usize,
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attribute {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Attribute::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown feature `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrainingInstance {
    pub intentionality: Intentionality,
    pub awareness: Awareness,
    pub label: FormClass,
    pub weight: u64,
}

impl TrainingInstance {
    fn branch(&self, attribute: Attribute) -> usize {
        attribute.branch(self.intentionality, self.awareness)
    }
}

/// Collapses agreed examples into weighted instances, one per distinct
/// (intentionality, awareness, form) triple.
pub fn instances_from_subset(subset: &[AgreedExample]) -> Vec<TrainingInstance> {
    let mut weights: BTreeMap<(Intentionality, Awareness, FormClass), u64> = BTreeMap::new();
    for ex in subset {
        *weights
            .entry((ex.intentionality, ex.awareness, ex.form))
            .or_default() += 1;
    }
    weights
        .into_iter()
        .map(|((intentionality, awareness, label), weight)| TrainingInstance {
            intentionality,
            awareness,
            label,
            weight,
        })
        .collect()
}

/// Weight per form class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ClassCounts {
    pub dont: u64,
    pub neg_tc: u64,
}

impl ClassCounts {
    fn of<'a>(instances: impl IntoIterator<Item = &'a TrainingInstance>) -> Self {
        let mut c = ClassCounts::default();
        for i in instances {
            c.add(i.label, i.weight);
        }
        c
    }

    fn add(&mut self, label: FormClass, weight: u64) {
        match label {
            FormClass::Dont => self.dont += weight,
            FormClass::NegTc => self.neg_tc += weight,
        }
    }

    pub fn get(&self, label: FormClass) -> u64 {
        match label {
            FormClass::Dont => self.dont,
            FormClass::NegTc => self.neg_tc,
        }
    }

    pub fn total(&self) -> u64 {
        self.dont + self.neg_tc
    }

    pub fn is_pure(&self) -> bool {
        self.dont == 0 || self.neg_tc == 0
    }

    /// Weighted majority; a tie goes to `tie_break`.
    pub fn majority(&self, tie_break: FormClass) -> FormClass {
        match self.dont.cmp(&self.neg_tc) {
            std::cmp::Ordering::Greater => FormClass::Dont,
            std::cmp::Ordering::Less => FormClass::NegTc,
            std::cmp::Ordering::Equal => tie_break,
        }
    }

    /// Entropy of the class distribution in bits.
    pub fn entropy(&self) -> f64 {
        let total = self.total() as f64;
        if total == 0.0 {
            return 0.0;
        }
        [self.dont, self.neg_tc]
            .iter()
            .filter(|&&n| n > 0)
            .map(|&n| {
                let p = n as f64 / total;
                -p * p.log2()
            })
            .sum()
    }

    fn plus(self, other: ClassCounts) -> ClassCounts {
        ClassCounts {
            dont: self.dont + other.dont,
            neg_tc: self.neg_tc + other.neg_tc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitScore {
    pub gain: f64,
    pub split_info: f64,
    /// Zero when `split_info` is zero.
    pub gain_ratio: f64,
}

/// Information gain, split information and gain ratio of splitting
/// `instances` on `attribute`.
pub fn split_score(instances: &[TrainingInstance], attribute: Attribute) -> SplitScore {
    let parent = ClassCounts::of(instances);
    let total = parent.total() as f64;
    let mut branches = [ClassCounts::default(); 2];
    for i in instances {
        branches[i.branch(attribute)].add(i.label, i.weight);
    }
    if total == 0.0 {
        return SplitScore {
            gain: 0.0,
            split_info: 0.0,
            gain_ratio: 0.0,
        };
    }
    let mut remainder = 0.0;
    let mut split_info = 0.0;
    for b in &branches {
        let share = b.total() as f64 / total;
        if share > 0.0 {
            remainder += share * b.entropy();
            split_info -= share * share.log2();
        }
    }
    let gain = parent.entropy() - remainder;
    SplitScore {
        gain,
        split_info,
        gain_ratio: if split_info > 0.0 { gain / split_info } else { 0.0 },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf {
        label: FormClass,
        counts: ClassCounts,
    },
    Split {
        attribute: Attribute,
        /// Children for the first and second attribute value.
        children: Box<[Node; 2]>,
    },
}

impl Node {
    /// Training weight per class routed through this node.
    pub fn class_counts(&self) -> ClassCounts {
        match self {
            Node::Leaf { counts, .. } => *counts,
            Node::Split { children, .. } => children[0].class_counts().plus(children[1].class_counts()),
        }
    }

    /// Difference between the majority and minority class weights.
    pub fn majority_margin(&self) -> u64 {
        let c = self.class_counts();
        c.dont.abs_diff(c.neg_tc)
    }
}

/// A form prediction and the majority share of the leaf that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub form: FormClass,
    /// Label weight over leaf weight; zero for a leaf no training weight reached.
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    pub root: Node,
}

/// Induces a tree; see the module docs for the split and stopping rules.
pub fn induce(instances: &[TrainingInstance]) -> Result<DecisionTree> {
    if instances.is_empty() {
        return Err(Error::Argument("cannot induce a tree from no instances".into()));
    }
    if let Some(bad) = instances.iter().find(|i| i.weight == 0) {
        return Err(Error::Argument(format!("instance {bad:?} has zero weight")));
    }
    let global = ClassCounts::of(instances).majority(FormClass::Dont);
    Ok(DecisionTree {
        root: grow(instances, &Attribute::ALL, global),
    })
}

fn grow(instances: &[TrainingInstance], available: &[Attribute], global: FormClass) -> Node {
    let counts = ClassCounts::of(instances);
    let leaf = Node::Leaf {
        label: counts.majority(global),
        counts,
    };
    if counts.is_pure() || available.is_empty() {
        return leaf;
    }

    let mut best: Option<(Attribute, f64)> = None;
    for &attribute in available {
        let score = split_score(instances, attribute);
        if score.gain > GAIN_EPSILON && best.is_none_or(|(_, r)| score.gain_ratio > r) {
            best = Some((attribute, score.gain_ratio));
        }
    }
    let Some((attribute, _)) = best else {
        return leaf;
    };

    let rest: Vec<Attribute> = available.iter().copied().filter(|&a| a != attribute).collect();
    let child = |value: usize| {
        let part: Vec<TrainingInstance> = instances
            .iter()
            .filter(|i| i.branch(attribute) == value)
            .copied()
            .collect();
        grow(&part, &rest, global)
    };
    Node::Split {
        attribute,
        children: Box::new([child(0), child(1)]),
    }
}

impl DecisionTree {
    pub fn predict(&self, intentionality: Intentionality, awareness: Awareness) -> Prediction {
        let mut node = &self.root;
        loop {
            match node {
                Node::Split { attribute, children } => {
                    node = &children[attribute.branch(intentionality, awareness)];
                }
                Node::Leaf { label, counts } => {
                    let confidence = if counts.total() == 0 {
                        0.0
                    } else {
                        counts.get(*label) as f64 / counts.total() as f64
                    };
                    return Prediction {
                        form: *label,
                        confidence,
                    };
                }
            }
        }
    }

    /// Total training weight, summed over leaves.
    pub fn training_size(&self) -> u64 {
        self.root.class_counts().total()
    }

    pub fn depth(&self) -> usize {
        fn depth(n: &Node) -> usize {
            match n {
                Node::Leaf { .. } => 0,
                Node::Split { children, .. } => 1 + depth(&children[0]).max(depth(&children[1])),
            }
        }
        depth(&self.root)
    }

    /// Checks that no attribute repeats on a root-to-leaf path.
    pub fn validate(&self) -> Result<()> {
        fn walk(n: &Node, path: &mut Vec<Attribute>, trail: &str) -> Result<()> {
            if let Node::Split { attribute, children } = n {
                if path.contains(attribute) {
                    return Err(Error::TreeParse {
                        path: trail.to_owned(),
                        message: format!("feature `{attribute}` repeats on this path"),
                    });
                }
                path.push(*attribute);
                for (child, value) in children.iter().zip(attribute.value_names()) {
                    walk(child, path, &format!("{trail}/{attribute}={value}"))?;
                }
                path.pop();
            }
            Ok(())
        }
        walk(&self.root, &mut Vec::new(), "root")
    }

    /// Renders the tree in the one-node-per-line format, ids in preorder.
    pub fn serialize(&self) -> String {
        fn emit(n: &Node, next: &mut usize, out: &mut String) {
            let id = *next;
            *next += 1;
            match n {
                Node::Leaf { label, counts } => {
                    let _ = writeln!(out, "node {id} leaf {label} {} {}", counts.dont, counts.neg_tc);
                }
                Node::Split { attribute, children } => {
                    let mut body = String::new();
                    let first = *next;
                    emit(&children[0], next, &mut body);
                    let second = *next;
                    emit(&children[1], next, &mut body);
                    let _ = writeln!(out, "node {id} split {attribute} {first} {second}");
                    out.push_str(&body);
                }
            }
        }
        let mut out = String::new();
        emit(&self.root, &mut 0, &mut out);
        out
    }

    /// Parses a tree file. Blank lines and `#` comments are ignored.
    pub fn deserialize(text: &str) -> Result<Self> {
        enum Record {
            Leaf(FormClass, ClassCounts),
            Split(Attribute, usize, usize),
        }

        let line_error = |line: usize, message: String| Error::TreeParse {
            path: format!("line {line}"),
            message,
        };
        let mut records: BTreeMap<usize, Record> = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let number = |i: usize, what: &str| -> Result<u64> {
                fields
                    .get(i)
                    .ok_or_else(|| line_error(line_no, format!("missing {what}")))?
                    .parse()
                    .map_err(|_| line_error(line_no, format!("{what} `{}` is not a number", fields[i])))
            };
            if fields.first() != Some(&"node") {
                return Err(line_error(line_no, format!("expected `node`, found `{line}`")));
            }
            let id = number(1, "node id")? as usize;
            let record = match fields.get(2).copied() {
                Some("leaf") if fields.len() == 6 => {
                    let label = fields[3].parse().map_err(|m| line_error(line_no, m))?;
                    Record::Leaf(
                        label,
                        ClassCounts {
                            dont: number(4, "DONT count")?,
                            neg_tc: number(5, "NEG_TC count")?,
                        },
                    )
                }
                Some("split") if fields.len() == 6 => {
                    let attribute = fields[3].parse().map_err(|m| line_error(line_no, m))?;
                    Record::Split(
                        attribute,
                        number(4, "first child id")? as usize,
                        number(5, "second child id")? as usize,
                    )
                }
                _ => {
                    return Err(line_error(
                        line_no,
                        format!("malformed node record `{line}`"),
                    ))
                }
            };
            if records.insert(id, record).is_some() {
                return Err(line_error(line_no, format!("node {id} defined twice")));
            }
        }

        fn build(
            id: usize,
            trail: String,
            records: &BTreeMap<usize, Record>,
            visited: &mut BTreeSet<usize>,
        ) -> Result<Node> {
            if !visited.insert(id) {
                return Err(Error::TreeParse {
                    path: trail,
                    message: format!("node {id} is reached twice"),
                });
            }
            match records.get(&id) {
                None => Err(Error::TreeParse {
                    path: trail,
                    message: format!("node {id} is missing (truncated file?)"),
                }),
                Some(Record::Leaf(label, counts)) => Ok(Node::Leaf {
                    label: *label,
                    counts: *counts,
                }),
                Some(Record::Split(attribute, first, second)) => {
                    let [v1, v2] = attribute.value_names();
                    let a = build(*first, format!("{trail}/{attribute}={v1}"), records, visited)?;
                    let b = build(*second, format!("{trail}/{attribute}={v2}"), records, visited)?;
                    Ok(Node::Split {
                        attribute: *attribute,
                        children: Box::new([a, b]),
                    })
                }
            }
        }

        let mut visited = BTreeSet::new();
        let root = build(0, "root".into(), &records, &mut visited)?;
        if let Some(orphan) = records.keys().find(|id| !visited.contains(id)) {
            return Err(Error::TreeParse {
                path: "root".into(),
                message: format!("node {orphan} is not reachable from node 0"),
            });
        }
        let tree = DecisionTree { root };
        tree.validate()?;
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Awareness::*;
    use FormClass::*;
    use Intentionality::*;

    fn inst(i: Intentionality, a: Awareness, label: FormClass, weight: u64) -> TrainingInstance {
        TrainingInstance {
            intentionality: i,
            awareness: a,
            label,
            weight,
        }
    }

    #[test]
    fn pure_root_is_single_leaf() {
        let tree = induce(&[inst(Con, Aw, NegTc, 3), inst(Unc, Unaw, NegTc, 2)]).unwrap();
        assert_eq!(
            tree.root,
            Node::Leaf {
                label: NegTc,
                counts: ClassCounts { dont: 0, neg_tc: 5 }
            }
        );
    }

    #[test]
    fn forced_tie_goes_to_dont() {
        let tree = induce(&[inst(Unc, Aw, NegTc, 4), inst(Unc, Aw, Dont, 4)]).unwrap();
        assert_eq!(tree.depth(), 0);
        let p = tree.predict(Con, Unaw);
        assert_eq!(p.form, Dont);
        assert_eq!(p.confidence, 0.5);
    }

    #[test]
    fn tie_prefers_global_majority() {
        // Awareness separates nothing; intentionality sends a 1:1 mix to CON.
        let tree = induce(&[
            inst(Con, Aw, Dont, 1),
            inst(Con, Aw, NegTc, 1),
            inst(Unc, Aw, NegTc, 5),
        ])
        .unwrap();
        assert_eq!(tree.predict(Con, Aw).form, NegTc);
    }

    #[test]
    fn empty_and_zero_weight_rejected() {
        assert!(induce(&[]).is_err());
        assert!(induce(&[inst(Con, Aw, Dont, 0)]).is_err());
    }

    #[test]
    fn unseen_combination_routes_by_split_feature() {
        let tree = induce(&[inst(Con, Aw, Dont, 3), inst(Unc, Aw, NegTc, 2)]).unwrap();
        assert_eq!(tree.depth(), 1);
        assert_eq!(tree.predict(Con, Unaw).form, Dont);
        assert_eq!(tree.predict(Con, Unaw).confidence, 1.0);
        assert_eq!(tree.predict(Unc, Unaw).form, NegTc);
    }

    #[test]
    fn empty_leaf_has_zero_confidence() {
        let tree = DecisionTree::deserialize(
            "node 0 split awareness 1 2\nnode 1 leaf NEG_TC 0 0\nnode 2 leaf DONT 4 1\n",
        )
        .unwrap();
        assert_eq!(tree.predict(Con, Aw).confidence, 0.0);
        assert_eq!(tree.predict(Con, Unaw).confidence, 0.8);
        assert_eq!(tree.training_size(), 5);
    }

    #[test]
    fn round_trip() {
        let tree = induce(&[
            inst(Con, Aw, Dont, 3),
            inst(Con, Unaw, Dont, 58),
            inst(Unc, Unaw, Dont, 45),
            inst(Unc, Aw, NegTc, 32),
            inst(Unc, Unaw, NegTc, 27),
        ])
        .unwrap();
        let text = tree.serialize();
        assert_eq!(DecisionTree::deserialize(&text).unwrap(), tree);
        assert_eq!(DecisionTree::deserialize(&text).unwrap().serialize(), text);
    }

    #[test]
    fn single_leaf_file() {
        let tree = DecisionTree::deserialize("# constant\nnode 0 leaf NEG_TC 0 7\n").unwrap();
        for i in Intentionality::ALL {
            for a in Awareness::ALL {
                assert_eq!(tree.predict(*i, *a).form, NegTc);
            }
        }
    }

    #[test]
    fn truncated_file_names_node_path() {
        let err = DecisionTree::deserialize(
            "node 0 split awareness 1 2\nnode 1 leaf NEG_TC 0 3\n",
        )
        .unwrap_err();
        match err {
            Error::TreeParse { path, .. } => assert_eq!(path, "root/awareness=UNAW"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_records() {
        for text in [
            "",
            "node 0 leaf MAYBE 1 2\n",
            "node 0 leaf DONT 1\n",
            "nod 0 leaf DONT 1 2\n",
            "node 0 split awareness 1 1\nnode 1 leaf DONT 1 0\n",
            "node 0 leaf DONT 1 0\nnode 0 leaf DONT 1 0\n",
            "node 0 leaf DONT 1 0\nnode 5 leaf DONT 1 0\n",
            "node 0 split awareness 1 2\nnode 1 split awareness 3 4\nnode 2 leaf DONT 1 0\nnode 3 leaf DONT 1 0\nnode 4 leaf DONT 1 0\n",
        ] {
            assert!(
                matches!(DecisionTree::deserialize(text), Err(Error::TreeParse { .. })),
                "{text:?}"
            );
        }
    }
}
