//! Analytic model constructions used as audit controls.
//!
//! Each model here is a closed-form extractor/classifier pair with hard
//! scores and exact predictions: the label-encoding (degenerate) classifier
//! for the color-counting task, its class-permuted twin, the faithful
//! majority-color classifier, the motif-anchor variant, and a deliberately
//! broken negative control.

use crate::datasets::{label_bacolorgv, label_motif_anchors, find_anchor_motifs, Motif};
use crate::graph::{Color, Explanation, Graph, NodeId, RelevanceScores, SubgraphRef};
use crate::models::{Prediction, SeGnn};

/// Anchor color encoding class `y` in the color-counting construction:
/// green encodes 0, violet encodes 1.
fn anchor_color(class: usize) -> Color {
    if class == 0 {
        Color::Green
    } else {
        Color::Violet
    }
}

fn indicator_scores(g: &Graph, node: Option<NodeId>) -> RelevanceScores {
    let mut values = vec![0.0; g.n()];
    if let Some(u) = node {
        values[u] = 1.0;
    }
    RelevanceScores::new(values, g).expect("indicator scores are valid")
}

/// The singleton color of an explanation, if it is exactly one node.
fn singleton_color(g: &Graph, sub: &SubgraphRef) -> Option<Color> {
    if sub.node_count() == 1 {
        sub.nodes().iter().next().map(|&u| g.color(u))
    } else {
        None
    }
}

/// Label-encoding construction for the color-counting task: the extractor
/// highlights the green anchor when reds tie or dominate and the violet
/// anchor otherwise, and the classifier just decodes the anchor back into a
/// label. Perfect accuracy, explanations unrelated to the task.
#[derive(Debug, Clone, Copy, Default)]
pub struct DegenerateColorGv;

impl SeGnn for DegenerateColorGv {
    fn name(&self) -> &str {
        "degenerate-colorgv"
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        let class = label_bacolorgv(g);
        indicator_scores(g, g.unique_node_of_color(anchor_color(class)))
    }

    fn classify(&self, g: &Graph, _scores: &RelevanceScores, expl: &Explanation) -> Prediction {
        match singleton_color(g, &expl.subgraph) {
            Some(Color::Green) => Prediction::binary(1.0),
            Some(Color::Violet) => Prediction::binary(0.0),
            _ => Prediction::binary(0.5),
        }
    }
}

/// Class-permuted twin of [`DegenerateColorGv`]: the extractor selects
/// `z_{perm(label)}` and the classifier inverts the permutation, so
/// predictions are unchanged while explanations swap.
#[derive(Debug, Clone)]
pub struct PermutedDegenerate {
    perm: [usize; 2],
    name: String,
}

impl PermutedDegenerate {
    pub fn new(perm: [usize; 2]) -> Self {
        assert!(
            perm == [0, 1] || perm == [1, 0],
            "perm must be a bijection on binary labels"
        );
        PermutedDegenerate {
            perm,
            name: format!("permuted-degenerate-{}{}", perm[0], perm[1]),
        }
    }

    pub fn swap() -> Self {
        PermutedDegenerate::new([1, 0])
    }

    pub fn identity() -> Self {
        PermutedDegenerate::new([0, 1])
    }

    fn inverse(&self, y: usize) -> usize {
        self.perm.iter().position(|&p| p == y).expect("bijection")
    }
}

impl SeGnn for PermutedDegenerate {
    fn name(&self) -> &str {
        &self.name
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        let class = self.perm[label_bacolorgv(g)];
        indicator_scores(g, g.unique_node_of_color(anchor_color(class)))
    }

    fn classify(&self, g: &Graph, _scores: &RelevanceScores, expl: &Explanation) -> Prediction {
        let encoded = match singleton_color(g, &expl.subgraph) {
            Some(Color::Green) => 0,
            Some(Color::Violet) => 1,
            _ => return Prediction::binary(0.5),
        };
        if self.inverse(encoded) == 0 {
            Prediction::binary(1.0)
        } else {
            Prediction::binary(0.0)
        }
    }
}

/// Faithful control: the extractor highlights every majority-color node and
/// the classifier recounts colors on the explanation alone. No perturbation
/// of the complement can flip it, since the majority stays selected.
#[derive(Debug, Clone, Copy, Default)]
pub struct FaithfulColorGv;

impl SeGnn for FaithfulColorGv {
    fn name(&self) -> &str {
        "faithful-colorgv"
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        let majority = if g.count_color(Color::Red) >= g.count_color(Color::Blue) {
            Color::Red
        } else {
            Color::Blue
        };
        let values = g
            .node_ids()
            .map(|u| if g.color(u) == majority { 1.0 } else { 0.0 })
            .collect();
        RelevanceScores::new(values, g).expect("indicator scores are valid")
    }

    fn classify(&self, g: &Graph, _scores: &RelevanceScores, expl: &Explanation) -> Prediction {
        let mut red = 0usize;
        let mut blue = 0usize;
        for &u in expl.subgraph.nodes() {
            match g.color(u) {
                Color::Red => red += 1,
                Color::Blue => blue += 1,
                _ => {}
            }
        }
        if blue > red {
            Prediction::binary(0.0)
        } else {
            Prediction::binary(1.0)
        }
    }
}

/// Shape of an explanation subgraph, when it is exactly one of the anchor
/// motifs (degree multiset is a complete invariant for these three shapes).
pub fn motif_shape(sub: &SubgraphRef) -> Option<Motif> {
    let n = sub.node_count();
    let e = sub.edge_count();
    let mut degrees: std::collections::BTreeMap<NodeId, usize> =
        sub.nodes().iter().map(|&u| (u, 0)).collect();
    for &(u, v) in sub.edges() {
        *degrees.get_mut(&u)? += 1;
        *degrees.get_mut(&v)? += 1;
    }
    let mut ds: Vec<usize> = degrees.values().copied().collect();
    ds.sort_unstable();
    match (n, e, ds.as_slice()) {
        (3, 3, [2, 2, 2]) => Some(Motif::Triangle),
        (5, 4, [1, 1, 1, 1, 4]) => Some(Motif::Star4),
        (6, 15, _) => Some(Motif::Clique6),
        _ => None,
    }
}

/// Subgraph-anchor variant of the label-encoding construction: the extractor
/// locates the smallest anchor motif of the true-label partition present in
/// the graph (triangle before star; the clique for class 0) and the
/// classifier maps the motif shape back to its partition label.
#[derive(Debug, Clone, Copy, Default)]
pub struct DegenerateMotif;

impl SeGnn for DegenerateMotif {
    fn name(&self) -> &str {
        "degenerate-motif"
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        let class = label_motif_anchors(g);
        let found = find_anchor_motifs(g);
        let smallest = found
            .iter()
            .filter(|(m, _)| m.partition_label() == class)
            .min_by_key(|(m, sub)| (m.node_count(), sub.nodes().iter().next().copied()));
        let mut values = vec![0.0; g.n()];
        if let Some((_, sub)) = smallest {
            for &u in sub.nodes() {
                values[u] = 1.0;
            }
        }
        RelevanceScores::new(values, g).expect("indicator scores are valid")
    }

    fn classify(&self, _g: &Graph, _scores: &RelevanceScores, expl: &Explanation) -> Prediction {
        match motif_shape(&expl.subgraph) {
            Some(m) if m.partition_label() == 0 => Prediction::binary(1.0),
            Some(_) => Prediction::binary(0.0),
            None => Prediction::binary(0.5),
        }
    }
}

/// Negative control for the theorem checker: the extractor is the
/// label-encoding one, but the classifier ignores the explanation entirely
/// and keys its confidence on the parity of the input size. Every subgraph
/// preserves the argmax while probabilities wobble, so prime-implicant
/// verdicts coexist with nonzero exact sufficiency values.
#[derive(Debug, Clone, Copy, Default)]
pub struct BrokenParityModel;

impl SeGnn for BrokenParityModel {
    fn name(&self) -> &str {
        "broken-parity"
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        DegenerateColorGv.extract(g)
    }

    fn classify(&self, g: &Graph, _scores: &RelevanceScores, _expl: &Explanation) -> Prediction {
        if g.n() % 2 == 0 {
            Prediction::binary(0.8)
        } else {
            Prediction::binary(0.55)
        }
    }
}
