//! Accuracy and designated-explanation alignment scoring.

use crate::graph::{Designator, Graph};
use crate::models::SeGnn;

/// Map from class label to the node predicate whose matches carry per-node
/// target 1 in graphs of that class (everything else targets 0).
#[derive(Debug, Clone, PartialEq)]
pub struct DesignatedExplanation {
    pub targets: Vec<(usize, Designator)>,
}

impl DesignatedExplanation {
    pub fn new(targets: Vec<(usize, Designator)>) -> Self {
        DesignatedExplanation { targets }
    }

    /// The attack targets: the green anchor for positives, violet for
    /// negatives.
    pub fn green_violet() -> Self {
        use crate::graph::Color;
        DesignatedExplanation::new(vec![
            (1, Designator::Color(Color::Green)),
            (0, Designator::Color(Color::Violet)),
        ])
    }

    /// The sufficiency control targets: all blue nodes for positives, all
    /// red nodes for negatives.
    pub fn majority_colors() -> Self {
        use crate::graph::Color;
        DesignatedExplanation::new(vec![
            (1, Designator::Color(Color::Blue)),
            (0, Designator::Color(Color::Red)),
        ])
    }

    pub fn designator_for(&self, label: usize) -> Option<&Designator> {
        self.targets
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, d)| d)
    }

    /// Per-node binary targets for a graph of class `label`.
    pub fn node_targets(&self, g: &Graph, label: usize) -> Vec<bool> {
        match self.designator_for(label) {
            Some(d) => g.node_ids().map(|u| d.matches(g, u)).collect(),
            None => vec![false; g.n()],
        }
    }
}

/// Fraction of graphs whose argmax prediction equals the label.
pub fn accuracy(model: &dyn SeGnn, graphs: &[(&Graph, usize)]) -> f64 {
    if graphs.is_empty() {
        return 0.0;
    }
    let correct = graphs
        .iter()
        .filter(|(g, label)| model.predict(g).prediction.label() == *label)
        .count();
    correct as f64 / graphs.len() as f64
}

/// Node-level F1 of predicted scores against the designated targets,
/// averaged across classes.
///
/// Scores are binarized asymmetrically — `p > 0.9` counts as a hit on
/// target-1 nodes and `p > 0.1` as a (false) hit on target-0 nodes — so
/// uncertain scores are penalized. Only correctly classified graphs
/// contribute; returns `None` when there are none.
pub fn eval_f1_designated(
    model: &dyn SeGnn,
    graphs: &[(&Graph, usize)],
    designated: &DesignatedExplanation,
) -> Option<f64> {
    // Per class: (true positives, false positives, false negatives).
    let mut counts: std::collections::BTreeMap<usize, (usize, usize, usize)> =
        std::collections::BTreeMap::new();
    for (g, label) in graphs {
        let out = model.predict(g);
        if out.prediction.label() != *label {
            continue;
        }
        let targets = designated.node_targets(g, *label);
        let entry = counts.entry(*label).or_insert((0, 0, 0));
        for (u, &target) in targets.iter().enumerate() {
            let score = out.scores.get(u);
            let predicted = if target { score > 0.9 } else { score > 0.1 };
            match (predicted, target) {
                (true, true) => entry.0 += 1,
                (true, false) => entry.1 += 1,
                (false, true) => entry.2 += 1,
                (false, false) => {}
            }
        }
    }
    if counts.is_empty() {
        return None;
    }
    let mut sum = 0.0;
    for &(tp, fp, fn_) in counts.values() {
        let denom = 2 * tp + fp + fn_;
        sum += if denom == 0 {
            1.0
        } else {
            2.0 * tp as f64 / denom as f64
        };
    }
    Some(sum / counts.len() as f64)
}
