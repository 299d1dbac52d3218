//! Graph representation, subgraph algebra, and explanation selection.
//!
//! Graphs are undirected, simple, node-colored, and immutable after
//! construction. Node ids are dense `0..n`. Every other module builds on the
//! types here: explanations are [`SubgraphRef`]s selected from
//! [`RelevanceScores`], and anchor sets are validated against whole datasets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type NodeId = usize;

/// Undirected edge, stored with endpoints in ascending order.
pub type Edge = (NodeId, NodeId);

/// Normalize an edge so the smaller endpoint comes first.
pub fn edge(u: NodeId, v: NodeId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Green,
    Violet,
    Neutral,
}

impl Color {
    pub const COUNT: usize = 5;

    pub fn index(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
            Color::Green => 2,
            Color::Violet => 3,
            Color::Neutral => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Green => "green",
            Color::Violet => "violet",
            Color::Neutral => "neutral",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, GraphError> {
        match name {
            "red" => Ok(Color::Red),
            "blue" => Ok(Color::Blue),
            "green" => Ok(Color::Green),
            "violet" => Ok(Color::Violet),
            "neutral" => Ok(Color::Neutral),
            other => Err(GraphError::UnknownColor(other.to_string())),
        }
    }
}

/// A node-colored, optionally attributed, undirected simple graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    colors: Vec<Color>,
    attrs: Option<Vec<Vec<f64>>>,
    edges: BTreeSet<Edge>,
    adjacency: Vec<Vec<NodeId>>,
    color_counts: [usize; Color::COUNT],
}

impl Graph {
    /// Build a graph with `colors.len()` nodes. Edges are normalized and
    /// deduplicated; self-loops and out-of-range endpoints are rejected.
    pub fn new(
        colors: Vec<Color>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let n = colors.len();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownNode { node: u, n });
            }
            if v >= n {
                return Err(GraphError::UnknownNode { node: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert(edge(u, v));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut color_counts = [0usize; Color::COUNT];
        for &c in &colors {
            color_counts[c.index()] += 1;
        }
        Ok(Graph {
            colors,
            attrs: None,
            edges: set,
            adjacency,
            color_counts,
        })
    }

    /// Attach per-node feature vectors. The outer length must equal `n`.
    pub fn with_attrs(mut self, attrs: Vec<Vec<f64>>) -> Result<Self, GraphError> {
        if attrs.len() != self.n() {
            return Err(GraphError::ScoreDomainMismatch {
                got: attrs.len(),
                expected: self.n(),
            });
        }
        self.attrs = Some(attrs);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.n()
    }

    pub fn color(&self, u: NodeId) -> Color {
        self.colors[u]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn attrs(&self) -> Option<&Vec<Vec<f64>>> {
        self.attrs.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.color_counts[c.index()]
    }

    /// Nodes of the given color, in ascending id order.
    pub fn nodes_of_color(&self, c: Color) -> impl Iterator<Item = NodeId> + '_ {
        self.node_ids().filter(move |&u| self.colors[u] == c)
    }

    /// The unique node of the given color, if exactly one exists.
    pub fn unique_node_of_color(&self, c: Color) -> Option<NodeId> {
        if self.count_color(c) == 1 {
            self.nodes_of_color(c).next()
        } else {
            None
        }
    }

    /// Subgraph reference covering the whole graph.
    pub fn full_subgraph(&self) -> SubgraphRef {
        SubgraphRef {
            nodes: self.node_ids().collect(),
            edges: self.edges.clone(),
        }
    }
}

/// A subgraph of a parent graph: a node subset plus a subset of the parent's
/// edges internal to it. An empty edge set is valid (isolated-node
/// explanations exist).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphRef {
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
}

impl SubgraphRef {
    /// Build from parts already known to satisfy the subgraph invariants.
    pub(crate) fn from_parts_unchecked(nodes: BTreeSet<NodeId>, edges: BTreeSet<Edge>) -> Self {
        SubgraphRef { nodes, edges }
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains_node(&self, u: NodeId) -> bool {
        self.nodes.contains(&u)
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Size as the lexicographic pair (node count, edge count).
    pub fn size(&self) -> (usize, usize) {
        (self.nodes.len(), self.edges.len())
    }

    /// Materialize the subgraph as a standalone graph with dense ids.
    ///
    /// Kept nodes are re-indexed in ascending order of their original id;
    /// colors and features of kept nodes are carried over. The mapping from
    /// new id to original id is returned alongside.
    pub fn to_graph(&self, parent: &Graph) -> (Graph, Vec<NodeId>) {
        let originals: Vec<NodeId> = self.nodes.iter().copied().collect();
        let mut remap = vec![usize::MAX; parent.n()];
        for (new, &orig) in originals.iter().enumerate() {
            remap[orig] = new;
        }
        let colors = originals.iter().map(|&u| parent.color(u)).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| (remap[u], remap[v]))
            .collect();
        let mut g = Graph::new(colors, edges).expect("subgraph edges are valid by construction");
        if let Some(attrs) = parent.attrs() {
            let kept = originals.iter().map(|&u| attrs[u].clone()).collect();
            g = g.with_attrs(kept).expect("attr arity matches");
        }
        (g, originals)
    }
}

/// Node-induced subgraph: keep `nodes` and every parent edge internal to it.
pub fn node_induced_subgraph(
    g: &Graph,
    nodes: &BTreeSet<NodeId>,
) -> Result<SubgraphRef, GraphError> {
    for &u in nodes {
        if u >= g.n() {
            return Err(GraphError::UnknownNode { node: u, n: g.n() });
        }
    }
    let edges = g
        .edges()
        .filter(|&(u, v)| nodes.contains(&u) && nodes.contains(&v))
        .collect();
    Ok(SubgraphRef {
        nodes: nodes.clone(),
        edges,
    })
}

/// Edge-induced restriction: keep the node set, restrict edges to `keep`.
pub fn edge_induced_restrict(
    s: &SubgraphRef,
    keep: &BTreeSet<Edge>,
) -> Result<SubgraphRef, GraphError> {
    for &(u, v) in keep {
        if !s.edges.contains(&edge(u, v)) {
            return Err(GraphError::EdgeNotInSubgraph(u, v));
        }
    }
    Ok(SubgraphRef {
        nodes: s.nodes.clone(),
        edges: keep.iter().map(|&(u, v)| edge(u, v)).collect(),
    })
}

/// Per-node relevance scores in `[0, 1]`, defined on every node of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevanceScores {
    values: Vec<f64>,
}

impl RelevanceScores {
    pub fn new(values: Vec<f64>, g: &Graph) -> Result<Self, GraphError> {
        if values.len() != g.n() {
            return Err(GraphError::ScoreDomainMismatch {
                got: values.len(),
                expected: g.n(),
            });
        }
        for (node, &value) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(GraphError::ScoreOutOfRange { node, value });
            }
        }
        Ok(RelevanceScores { values })
    }

    pub fn get(&self, u: NodeId) -> f64 {
        self.values[u]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mean score mass `sum(p_u) / |V|`.
    pub fn mass(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// How a discrete explanation is selected from relevance scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SelectionMode {
    /// Keep nodes with score `>= tau`.
    Threshold(f64),
    /// Keep the `ceil(ratio * n)` highest-scored nodes, ties broken by
    /// ascending node id.
    TopK(f64),
}

/// A discrete explanation: the selected subgraph plus the raw scores it was
/// selected from.
#[derive(Debug, Clone, PartialEq)]
pub struct Explanation {
    pub subgraph: SubgraphRef,
    pub scores: RelevanceScores,
    pub selection: SelectionMode,
}

impl Explanation {
    /// True when selection produced no nodes (the `EmptyExplanation` flag).
    pub fn is_empty(&self) -> bool {
        self.subgraph.is_empty()
    }
}

/// Select a discrete explanation from scores.
///
/// Under `Threshold(tau)` the node set is `{u : p_u >= tau}`. When that set
/// is empty and `rescue` is requested, scores are min-max normalized
/// instance-wise and re-thresholded; the rescue declines on constant scores,
/// leaving the explanation empty.
pub fn select_explanation(
    scores: &RelevanceScores,
    mode: SelectionMode,
    g: &Graph,
    rescue: bool,
) -> Result<Explanation, GraphError> {
    if scores.len() != g.n() {
        return Err(GraphError::ScoreDomainMismatch {
            got: scores.len(),
            expected: g.n(),
        });
    }
    let nodes: BTreeSet<NodeId> = match mode {
        SelectionMode::Threshold(tau) => {
            let mut picked: BTreeSet<NodeId> =
                g.node_ids().filter(|&u| scores.get(u) >= tau).collect();
            if picked.is_empty() && rescue && g.n() > 0 {
                let lo = scores.values().iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = scores
                    .values()
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max);
                if hi > lo {
                    picked = g
                        .node_ids()
                        .filter(|&u| (scores.get(u) - lo) / (hi - lo) >= tau)
                        .collect();
                }
            }
            picked
        }
        SelectionMode::TopK(ratio) => {
            if !(ratio > 0.0 && ratio <= 1.0) {
                return Err(GraphError::InvalidTopKRatio(ratio));
            }
            let k = ((ratio * g.n() as f64).ceil() as usize).min(g.n());
            let mut order: Vec<NodeId> = g.node_ids().collect();
            // Highest score first; equal scores resolved by ascending id.
            order.sort_by(|&a, &b| {
                scores
                    .get(b)
                    .partial_cmp(&scores.get(a))
                    .expect("scores are not NaN")
                    .then(a.cmp(&b))
            });
            order.into_iter().take(k).collect()
        }
    };
    let subgraph = node_induced_subgraph(g, &nodes)?;
    Ok(Explanation {
        subgraph,
        scores: scores.clone(),
        selection: mode,
    })
}

/// Identifies the anchor node of one class inside any graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Designator {
    /// The node carrying this color.
    Color(Color),
    /// The node whose feature vector equals this one exactly.
    AttrEquals(Vec<f64>),
}

impl Designator {
    pub fn matches(&self, g: &Graph, u: NodeId) -> bool {
        match self {
            Designator::Color(c) => g.color(u) == *c,
            Designator::AttrEquals(want) => g
                .attrs()
                .map(|attrs| attrs[u] == *want)
                .unwrap_or(false),
        }
    }

    pub fn matched_nodes(&self, g: &Graph) -> Vec<NodeId> {
        g.node_ids().filter(|&u| self.matches(g, u)).collect()
    }
}

/// One single-node designator per class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorSet {
    pub members: Vec<(usize, Designator)>,
}

impl AnchorSet {
    pub fn new(members: Vec<(usize, Designator)>) -> Self {
        AnchorSet { members }
    }

    pub fn designator_for(&self, label: usize) -> Option<&Designator> {
        self.members
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, d)| d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AnchorFailure {
    /// Designator for `label` matched `count != 1` nodes in graph `graph`.
    BadMultiplicity {
        graph: usize,
        label: usize,
        count: usize,
    },
    /// Node `node` of graph `graph` matched designators of two labels.
    Overlap {
        graph: usize,
        node: usize,
        labels: (usize, usize),
    },
    /// Two labels share an identical designator.
    DuplicateDesignator { labels: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub graphs_checked: usize,
    pub failures: Vec<AnchorFailure>,
}

/// Check that every designator matches exactly one node in every graph, and
/// that designators are pairwise disjoint.
pub fn validate_anchor_set(graphs: &[Graph], anchors: &AnchorSet) -> ValidationReport {
    let mut failures = Vec::new();
    for (i, (la, da)) in anchors.members.iter().enumerate() {
        for (lb, db) in anchors.members.iter().skip(i + 1) {
            if da == db {
                failures.push(AnchorFailure::DuplicateDesignator { labels: (*la, *lb) });
            }
        }
    }
    for (gi, g) in graphs.iter().enumerate() {
        let mut matched: Vec<(usize, Vec<NodeId>)> = Vec::new();
        for (label, designator) in &anchors.members {
            let nodes = designator.matched_nodes(g);
            if nodes.len() != 1 {
                failures.push(AnchorFailure::BadMultiplicity {
                    graph: gi,
                    label: *label,
                    count: nodes.len(),
                });
            }
            matched.push((*label, nodes));
        }
        for (i, (la, na)) in matched.iter().enumerate() {
            for (lb, nb) in matched.iter().skip(i + 1) {
                for u in na {
                    if nb.contains(u) {
                        failures.push(AnchorFailure::Overlap {
                            graph: gi,
                            node: *u,
                            labels: (*la, *lb),
                        });
                    }
                }
            }
        }
    }
    ValidationReport {
        pass: failures.is_empty(),
        graphs_checked: graphs.len(),
        failures,
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    colors: Vec<String>,
    edges: Vec<[usize; 2]>,
    label: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    attrs: Option<Vec<Vec<f64>>>,
}

/// Serialize a graph (and optional label) to the canonical JSON object
/// `{"n", "colors", "edges", "label", "attrs"?}`. Edges are emitted sorted
/// with ascending endpoints so the encoding round-trips byte-exactly.
pub fn graph_to_json(g: &Graph, label: Option<usize>) -> String {
    let doc = GraphJson {
        n: g.n(),
        colors: g.colors().iter().map(|c| c.name().to_string()).collect(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        label: label.map(|l| l as i64),
        attrs: g.attrs().cloned(),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

/// Parse the canonical JSON graph object.
pub fn graph_from_json(text: &str) -> Result<(Graph, Option<usize>), GraphError> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    if doc.colors.len() != doc.n {
        return Err(GraphError::Json(format!(
            "n={} but {} colors given",
            doc.n,
            doc.colors.len()
        )));
    }
    let colors = doc
        .colors
        .iter()
        .map(|s| Color::from_name(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut g = Graph::new(colors, doc.edges.iter().map(|e| (e[0], e[1])))?;
    if let Some(attrs) = doc.attrs {
        g = g.with_attrs(attrs)?;
    }
    let label = match doc.label {
        Some(l) if l >= 0 => Some(l as usize),
        Some(l) => return Err(GraphError::Json(format!("negative label {l}"))),
        None => None,
    };
    Ok((g, label))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(vec![Color::Red, Color::Blue, Color::Red], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        let err = Graph::new(vec![Color::Red; 2], [(0, 2)]).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode { node: 2, n: 2 });
        let err = Graph::new(vec![Color::Red; 2], [(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(1));
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse() {
        let g = Graph::new(vec![Color::Red; 3], [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn induced_subgraph_of_path() {
        let g = path3();
        let s = node_induced_subgraph(&g, &BTreeSet::from([0, 1])).unwrap();
        assert_eq!(s.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn induced_subgraph_identity() {
        let g = path3();
        let s = node_induced_subgraph(&g, &g.node_ids().collect()).unwrap();
        assert_eq!(s, g.full_subgraph());
    }

    #[test]
    fn induced_subgraph_unknown_node() {
        let g = path3();
        let err = node_induced_subgraph(&g, &BTreeSet::from([7])).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode { node: 7, n: 3 });
    }

    #[test]
    fn edge_restrict_keeps_nodes() {
        let g = path3();
        let s = g.full_subgraph();
        let kept = edge_induced_restrict(&s, &BTreeSet::from([(0, 1)])).unwrap();
        assert_eq!(kept.node_count(), 3);
        assert_eq!(kept.edge_count(), 1);

        let same = edge_induced_restrict(&s, s.edges()).unwrap();
        assert_eq!(same, s);

        let bare = edge_induced_restrict(&s, &BTreeSet::new()).unwrap();
        assert_eq!(bare.edge_count(), 0);
        assert_eq!(bare.node_count(), 3);
    }

    #[test]
    fn edge_restrict_rejects_foreign_edges() {
        let g = path3();
        let s = node_induced_subgraph(&g, &BTreeSet::from([0, 1])).unwrap();
        let err = edge_induced_restrict(&s, &BTreeSet::from([(1, 2)])).unwrap_err();
        assert_eq!(err, GraphError::EdgeNotInSubgraph(1, 2));
    }

    #[test]
    fn threshold_selection() {
        let g = path3();
        let scores = RelevanceScores::new(vec![1.0, 0.0, 0.0], &g).unwrap();
        let e = select_explanation(&scores, SelectionMode::Threshold(0.5), &g, false).unwrap();
        assert_eq!(e.subgraph.nodes(), &BTreeSet::from([0]));
        assert!(e.subgraph.edges().is_empty());
    }

    #[test]
    fn rescue_declines_on_constant_scores() {
        let g = path3();
        let scores = RelevanceScores::new(vec![0.3, 0.3, 0.3], &g).unwrap();
        let e = select_explanation(&scores, SelectionMode::Threshold(0.5), &g, true).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn rescue_rethresholds_normalized_scores() {
        let g = path3();
        let scores = RelevanceScores::new(vec![0.1, 0.4, 0.2], &g).unwrap();
        let e = select_explanation(&scores, SelectionMode::Threshold(0.5), &g, true).unwrap();
        // min-max maps 0.4 -> 1.0 and 0.2 -> 1/3.
        assert_eq!(e.subgraph.nodes(), &BTreeSet::from([1]));
    }

    #[test]
    fn topk_selection_with_tie_break() {
        let g = path3();
        let scores = RelevanceScores::new(vec![0.9, 0.8, 0.1], &g).unwrap();
        let e = select_explanation(&scores, SelectionMode::TopK(1.0 / 3.0), &g, false).unwrap();
        assert_eq!(e.subgraph.nodes(), &BTreeSet::from([0]));

        let tied = RelevanceScores::new(vec![0.5, 0.5, 0.5], &g).unwrap();
        let e = select_explanation(&tied, SelectionMode::TopK(2.0 / 3.0), &g, false).unwrap();
        assert_eq!(e.subgraph.nodes(), &BTreeSet::from([0, 1]));
    }

    #[test]
    fn topk_rejects_bad_ratio() {
        let g = path3();
        let scores = RelevanceScores::new(vec![0.5, 0.5, 0.5], &g).unwrap();
        for ratio in [0.0, -0.5, 1.5] {
            let err =
                select_explanation(&scores, SelectionMode::TopK(ratio), &g, false).unwrap_err();
            assert_eq!(err, GraphError::InvalidTopKRatio(ratio));
        }
    }

    #[test]
    fn threshold_selection_is_idempotent() {
        let g = path3();
        let scores = RelevanceScores::new(vec![0.9, 0.2, 0.7], &g).unwrap();
        for tau in [0.1, 0.5, 0.8, 1.0] {
            let first =
                select_explanation(&scores, SelectionMode::Threshold(tau), &g, false).unwrap();
            let indicator: Vec<f64> = g
                .node_ids()
                .map(|u| {
                    if first.subgraph.contains_node(u) {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect();
            let indicator = RelevanceScores::new(indicator, &g).unwrap();
            let second =
                select_explanation(&indicator, SelectionMode::Threshold(tau), &g, false).unwrap();
            assert_eq!(first.subgraph.nodes(), second.subgraph.nodes());
        }
    }

    #[test]
    fn anchor_validation_passes_and_fails() {
        let ok = Graph::new(
            vec![Color::Red, Color::Blue, Color::Green, Color::Violet],
            [(0, 1)],
        )
        .unwrap();
        let anchors = AnchorSet::new(vec![
            (0, Designator::Color(Color::Green)),
            (1, Designator::Color(Color::Violet)),
        ]);
        let report = validate_anchor_set(std::slice::from_ref(&ok), &anchors);
        assert!(report.pass);

        let missing_violet = Graph::new(vec![Color::Red, Color::Green], []).unwrap();
        let report = validate_anchor_set(&[ok.clone(), missing_violet], &anchors);
        assert!(!report.pass);
        assert!(report.failures.iter().any(|f| matches!(
            f,
            AnchorFailure::BadMultiplicity {
                graph: 1,
                label: 1,
                count: 0
            }
        )));

        let duplicated = AnchorSet::new(vec![
            (0, Designator::Color(Color::Green)),
            (1, Designator::Color(Color::Green)),
        ]);
        let report = validate_anchor_set(std::slice::from_ref(&ok), &duplicated);
        assert!(!report.pass);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, AnchorFailure::DuplicateDesignator { .. })));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let g = path3();
        let text = graph_to_json(&g, Some(1));
        let (back, label) = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(label, Some(1));
        assert_eq!(graph_to_json(&back, label), text);
    }

    #[test]
    fn json_round_trip_with_attrs() {
        let g = path3()
            .with_attrs(vec![vec![0.5, 1.0], vec![0.25, 0.0], vec![1.0, 1.0]])
            .unwrap();
        let text = graph_to_json(&g, None);
        let (back, label) = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(label, None);
        assert_eq!(graph_to_json(&back, label), text);
    }

    #[test]
    fn subgraph_to_graph_reindexes() {
        let g = Graph::new(
            vec![Color::Red, Color::Blue, Color::Green, Color::Violet],
            [(0, 1), (1, 3)],
        )
        .unwrap();
        let s = node_induced_subgraph(&g, &BTreeSet::from([1, 3])).unwrap();
        let (standalone, originals) = s.to_graph(&g);
        assert_eq!(standalone.n(), 2);
        assert_eq!(originals, vec![1, 3]);
        assert_eq!(standalone.color(0), Color::Blue);
        assert_eq!(standalone.color(1), Color::Violet);
        assert!(standalone.has_edge(0, 1));
    }
}
