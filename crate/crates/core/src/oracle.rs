//! Exact brute-force ground truth on small instances.
//!
//! Enumerates every supergraph `R ⊆ G' ⊆ G` of an explanation within its
//! input, computes the exact worst-case prediction shift, places the
//! explanation in the formal taxonomy (prime implicant / minimal /
//! non-label-preserving), and machine-checks that the sufficiency test's
//! guarantees hold on a model: prime implicants are never rejected, the
//! weaker classes always are.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::graph::{Edge, Graph, NodeId, SubgraphRef};
use crate::metrics::is_prediction_changed;
use crate::models::{Prediction, SeGnn};

/// Default cap on free elements (free nodes + free edges): 2^22 candidates.
pub const DEFAULT_CAP: usize = 22;

/// Free elements of the enumeration: nodes outside the explanation plus
/// edges of the graph not forced in by the explanation.
pub fn enumeration_requirement(g: &Graph, r: &SubgraphRef) -> usize {
    (g.n() - r.node_count()) + (g.edge_count() - r.edge_count())
}

fn check_cap(g: &Graph, r: &SubgraphRef, cap: usize) -> Result<(), OracleError> {
    let required = enumeration_requirement(g, r);
    if required > cap {
        return Err(OracleError::CapExceeded { required, cap });
    }
    Ok(())
}

/// Materialize a candidate supergraph as a standalone graph. Node ids are
/// re-indexed ascending; colors and attrs carry over.
fn candidate_graph(g: &Graph, nodes: &[NodeId], edges: &[Edge]) -> Graph {
    let mut remap = vec![usize::MAX; g.n()];
    for (new, &orig) in nodes.iter().enumerate() {
        remap[orig] = new;
    }
    let colors = nodes.iter().map(|&u| g.color(u)).collect();
    let mut graph = Graph::new(colors, edges.iter().map(|&(u, v)| (remap[u], remap[v])))
        .expect("candidate edges are internal");
    if let Some(attrs) = g.attrs() {
        let kept = nodes.iter().map(|&u| attrs[u].clone()).collect();
        graph = graph.with_attrs(kept).expect("attr arity matches");
    }
    graph
}

/// Visit every supergraph `r ⊆ G' ⊆ g`: each subset of free nodes joined
/// with the explanation, each subset of surviving non-forced edges joined
/// with the explanation's edges. The visitor receives the standalone graph
/// plus the candidate's original node/edge sets.
fn visit_supergraphs<F>(g: &Graph, r: &SubgraphRef, cap: usize, mut visit: F) -> Result<u64, OracleError>
where
    F: FnMut(&Graph, &[NodeId], &[Edge]) -> ControlFlow<()>,
{
    check_cap(g, r, cap)?;
    let free_nodes: Vec<NodeId> = g
        .node_ids()
        .filter(|u| !r.contains_node(*u))
        .collect();
    let forced_edges: Vec<Edge> = r.edges().iter().copied().collect();
    let all_edges: Vec<Edge> = g.edges().collect();
    let mut count = 0u64;
    let mut in_set = vec![false; g.n()];
    for &u in r.nodes() {
        in_set[u] = true;
    }

    for node_mask in 0u64..(1u64 << free_nodes.len()) {
        for (i, &u) in free_nodes.iter().enumerate() {
            in_set[u] = node_mask & (1 << i) != 0;
        }
        let mut nodes: Vec<NodeId> = Vec::with_capacity(r.node_count() + free_nodes.len());
        for u in g.node_ids() {
            if in_set[u] {
                nodes.push(u);
            }
        }
        let optional: Vec<Edge> = all_edges
            .iter()
            .copied()
            .filter(|&(u, v)| in_set[u] && in_set[v] && !r.contains_edge(u, v))
            .collect();
        for edge_mask in 0u64..(1u64 << optional.len()) {
            let mut edges = forced_edges.clone();
            for (j, &e) in optional.iter().enumerate() {
                if edge_mask & (1 << j) != 0 {
                    edges.push(e);
                }
            }
            count += 1;
            let graph = candidate_graph(g, &nodes, &edges);
            if let ControlFlow::Break(()) = visit(&graph, &nodes, &edges) {
                return Ok(count);
            }
        }
    }
    Ok(count)
}

/// Lazily enumerate the supergraphs of `r` within `g` as subgraph refs.
pub fn enumerate_supergraphs(
    g: &Graph,
    r: &SubgraphRef,
    cap: usize,
) -> Result<Vec<SubgraphRef>, OracleError> {
    let mut out = Vec::new();
    visit_supergraphs(g, r, cap, |_, nodes, edges| {
        let node_set: BTreeSet<NodeId> = nodes.iter().copied().collect();
        let edge_set: BTreeSet<Edge> = edges.iter().copied().collect();
        out.push(SubgraphRef::from_parts_unchecked(node_set, edge_set));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of supergraphs by the counting identity: over every free-node
/// subset, two choices per surviving optional edge.
pub fn count_supergraphs(g: &Graph, r: &SubgraphRef, cap: usize) -> Result<u64, OracleError> {
    check_cap(g, r, cap)?;
    let free_nodes: Vec<NodeId> = g
        .node_ids()
        .filter(|u| !r.contains_node(*u))
        .collect();
    let mut in_set = vec![false; g.n()];
    for &u in r.nodes() {
        in_set[u] = true;
    }
    let all_edges: Vec<Edge> = g.edges().collect();
    let mut total = 0u64;
    for node_mask in 0u64..(1u64 << free_nodes.len()) {
        for (i, &u) in free_nodes.iter().enumerate() {
            in_set[u] = node_mask & (1 << i) != 0;
        }
        let surviving = all_edges
            .iter()
            .filter(|&&(u, v)| in_set[u] && in_set[v] && !r.contains_edge(u, v))
            .count();
        total += 1u64 << surviving;
    }
    Ok(total)
}

/// The smallest prediction-changing supergraph found, by (nodes, edges).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<Edge>,
    pub distance: f64,
}

/// Everything one full enumeration pass establishes.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    /// Exact maximum total-variation shift over all supergraphs.
    pub exact_ust: f64,
    /// Some supergraph counts as prediction-changing (argmax flip or the
    /// uncertain band).
    pub any_changed: bool,
    /// Every supergraph preserves the argmax label.
    pub all_label_preserved: bool,
    pub candidates: u64,
    pub witness: Option<Witness>,
}

/// One exhaustive pass over the supergraph lattice.
pub fn scan_supergraphs(
    model: &dyn SeGnn,
    g: &Graph,
    r: &SubgraphRef,
    cap: usize,
) -> Result<ScanSummary, OracleError> {
    let reference = model.predict(g).prediction;
    let label = reference.label();
    let mut exact_ust = 0.0f64;
    let mut any_changed = false;
    let mut all_label_preserved = true;
    let mut witness: Option<Witness> = None;
    let mut witness_size = (usize::MAX, usize::MAX);
    let candidates = visit_supergraphs(g, r, cap, |graph, nodes, edges| {
        let pred = model.predict(graph).prediction;
        let dist = tv(&reference, &pred);
        exact_ust = exact_ust.max(dist);
        if pred.label() != label {
            all_label_preserved = false;
        }
        if is_prediction_changed(&reference, &pred) {
            any_changed = true;
            let size = (nodes.len(), edges.len());
            if size < witness_size {
                witness_size = size;
                witness = Some(Witness {
                    nodes: nodes.to_vec(),
                    edges: edges.to_vec(),
                    distance: dist,
                });
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(ScanSummary {
        exact_ust,
        any_changed,
        all_label_preserved,
        candidates,
        witness,
    })
}

fn tv(p: &Prediction, q: &Prediction) -> f64 {
    0.5 * p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
}

/// Exact worst-case prediction shift `max_{R ⊆ G' ⊆ G} d(f(G), f(G'))`.
pub fn exact_ust(
    model: &dyn SeGnn,
    g: &Graph,
    r: &SubgraphRef,
    cap: usize,
) -> Result<f64, OracleError> {
    Ok(scan_supergraphs(model, g, r, cap)?.exact_ust)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExplanationClass {
    /// Every supergraph preserves the label and no proper subgraph has that
    /// property.
    PrimeImplicant,
    /// A smallest label-preserving subgraph that is not a prime implicant.
    MinimalOnly,
    /// Fed alone, the explanation yields a different label than the input.
    NonLabelPreserving,
    /// Label-preserving, neither minimal nor prime implicant.
    LabelPreservingOther,
}

/// Does some supergraph of `sub` within `g` flip the argmax away from
/// `label`? Tries a few extreme candidates first (the bare subgraph, then
/// each color class of free nodes fully added or fully excluded) before
/// falling back to exhaustive enumeration.
fn exists_label_flip(
    model: &dyn SeGnn,
    g: &Graph,
    sub: &SubgraphRef,
    label: usize,
    cap: usize,
) -> Result<bool, OracleError> {
    check_cap(g, sub, cap)?;
    let free: Vec<NodeId> = g.node_ids().filter(|u| !sub.contains_node(*u)).collect();
    let mut candidates: Vec<Vec<NodeId>> = vec![Vec::new()];
    for color in [
        crate::graph::Color::Red,
        crate::graph::Color::Blue,
        crate::graph::Color::Green,
        crate::graph::Color::Violet,
        crate::graph::Color::Neutral,
    ] {
        let of_color: Vec<NodeId> = free.iter().copied().filter(|&u| g.color(u) == color).collect();
        let not_of_color: Vec<NodeId> =
            free.iter().copied().filter(|&u| g.color(u) != color).collect();
        candidates.push(of_color);
        candidates.push(not_of_color);
    }
    for extra in candidates {
        let mut nodes: Vec<NodeId> = sub.nodes().iter().copied().collect();
        nodes.extend(extra);
        nodes.sort_unstable();
        nodes.dedup();
        let keep: Vec<bool> = {
            let mut k = vec![false; g.n()];
            for &u in &nodes {
                k[u] = true;
            }
            k
        };
        // All internal edges present: the extreme along the edge dimension.
        let edges: Vec<Edge> = g
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .chain(sub.edges().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let graph = candidate_graph(g, &nodes, &edges);
        if model.predict(&graph).prediction.label() != label {
            return Ok(true);
        }
    }
    let mut found = false;
    visit_supergraphs(g, sub, cap, |graph, _, _| {
        if model.predict(graph).prediction.label() != label {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Nonempty proper subgraphs of `r`: every node subset with every subset of
/// internal explanation edges, except `r` itself.
fn proper_subgraphs(r: &SubgraphRef) -> Vec<SubgraphRef> {
    let nodes: Vec<NodeId> = r.nodes().iter().copied().collect();
    let edges: Vec<Edge> = r.edges().iter().copied().collect();
    let mut out = Vec::new();
    for node_mask in 1u64..(1u64 << nodes.len()) {
        let node_set: BTreeSet<NodeId> = nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| node_mask & (1 << i) != 0)
            .map(|(_, &u)| u)
            .collect();
        let internal: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|&(u, v)| node_set.contains(&u) && node_set.contains(&v))
            .collect();
        for edge_mask in 0u64..(1u64 << internal.len()) {
            let edge_set: BTreeSet<Edge> = internal
                .iter()
                .enumerate()
                .filter(|(j, _)| edge_mask & (1 << j) != 0)
                .map(|(_, &e)| e)
                .collect();
            if node_set.len() == nodes.len() && edge_set.len() == edges.len() {
                continue;
            }
            out.push(SubgraphRef::from_parts_unchecked(node_set.clone(), edge_set));
        }
    }
    out
}

/// Is there a nonempty subgraph of `g`, strictly smaller than `size`
/// lexicographically by (nodes, edges), whose standalone prediction keeps
/// `label`?
fn exists_smaller_label_preserving(
    model: &dyn SeGnn,
    g: &Graph,
    size: (usize, usize),
    label: usize,
    cap: usize,
) -> Result<bool, OracleError> {
    let budget: u64 = 1u64 << cap.min(62);
    let mut visited = 0u64;
    let n = g.n();
    if n > 62 {
        return Err(OracleError::CapExceeded { required: n, cap });
    }
    let all_edges: Vec<Edge> = g.edges().collect();
    for node_mask in 1u64..(1u64 << n) {
        let count = node_mask.count_ones() as usize;
        if count > size.0 {
            continue;
        }
        let nodes: Vec<NodeId> = (0..n).filter(|&u| node_mask & (1 << u) != 0).collect();
        let internal: Vec<Edge> = all_edges
            .iter()
            .copied()
            .filter(|&(u, v)| node_mask & (1 << u) != 0 && node_mask & (1 << v) != 0)
            .collect();
        for edge_mask in 0u64..(1u64 << internal.len()) {
            let e_count = edge_mask.count_ones() as usize;
            if (count, e_count) >= size {
                continue;
            }
            visited += 1;
            if visited > budget {
                return Err(OracleError::CapExceeded {
                    required: cap + 1,
                    cap,
                });
            }
            let edges: Vec<Edge> = internal
                .iter()
                .enumerate()
                .filter(|(j, _)| edge_mask & (1 << j) != 0)
                .map(|(_, &e)| e)
                .collect();
            let graph = candidate_graph(g, &nodes, &edges);
            if model.predict(&graph).prediction.label() == label {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Place an explanation in the formal taxonomy by exhaustive search.
pub fn classify_explanation(
    model: &dyn SeGnn,
    g: &Graph,
    r: &SubgraphRef,
    cap: usize,
) -> Result<ExplanationClass, OracleError> {
    Ok(oracle_verdict(model, g, r, cap)?.class)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub class: ExplanationClass,
    pub exact_ust: f64,
    /// Whether exhaustive enumeration finds a prediction-changing
    /// supergraph (the band-aware rejection the sampled test estimates).
    pub rejected: bool,
    pub witness: Option<Witness>,
}

/// Classify and measure in one enumeration pass.
pub fn oracle_verdict(
    model: &dyn SeGnn,
    g: &Graph,
    r: &SubgraphRef,
    cap: usize,
) -> Result<OracleVerdict, OracleError> {
    if r.is_empty() {
        return Err(OracleError::EmptyExplanation);
    }
    let label = model.predict(g).prediction.label();
    let (standalone, _) = r.to_graph(g);
    let own_label = model.predict(&standalone).prediction.label();
    let scan = scan_supergraphs(model, g, r, cap)?;

    let class = if own_label != label {
        ExplanationClass::NonLabelPreserving
    } else if scan.all_label_preserved {
        // Prime implicant candidate: minimal unless some proper subgraph
        // also has the all-supergraphs-preserve property.
        let mut smaller_works = false;
        for sub in proper_subgraphs(r) {
            if sub.is_empty() {
                continue;
            }
            if !exists_label_flip(model, g, &sub, label, cap)? {
                smaller_works = true;
                break;
            }
        }
        if smaller_works {
            // That subgraph is itself label-preserving and smaller, so the
            // explanation is neither prime implicant nor minimal.
            ExplanationClass::LabelPreservingOther
        } else {
            ExplanationClass::PrimeImplicant
        }
    } else if !exists_smaller_label_preserving(model, g, r.size(), label, cap)? {
        ExplanationClass::MinimalOnly
    } else {
        ExplanationClass::LabelPreservingOther
    };

    Ok(OracleVerdict {
        class,
        exact_ust: scan.exact_ust,
        rejected: scan.any_changed,
        witness: scan.witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceVerdict {
    pub index: usize,
    pub class: ExplanationClass,
    pub exact_ust: f64,
    pub rejected: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    /// A prime implicant with nonzero exact shift.
    PrimeImplicantShifted { index: usize, exact_ust: f64 },
    /// A non-label-preserving explanation the exhaustive test does not
    /// reject.
    NonLabelPreservingAccepted { index: usize },
    /// A merely-minimal explanation the exhaustive test does not reject.
    MinimalAccepted { index: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub instances: Vec<InstanceVerdict>,
    pub violations: Vec<Violation>,
    /// Instances skipped because the model produced an empty explanation.
    pub skipped_empty: usize,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Machine-check the sufficiency-test guarantees over a set of instances:
/// prime implicants must have exact shift zero; non-label-preserving and
/// merely-minimal explanations must be rejected by exhaustive enumeration.
pub fn verify_thm_suffcause(
    model: &dyn SeGnn,
    graphs: &[&Graph],
    cap: usize,
) -> Result<TheoremReport, OracleError> {
    let mut instances = Vec::new();
    let mut violations = Vec::new();
    let mut skipped_empty = 0usize;
    for (index, g) in graphs.iter().enumerate() {
        let out = model.predict(g);
        if out.explanation.is_empty() {
            skipped_empty += 1;
            continue;
        }
        let verdict = oracle_verdict(model, g, &out.explanation.subgraph, cap)?;
        match verdict.class {
            ExplanationClass::PrimeImplicant => {
                if verdict.exact_ust != 0.0 {
                    violations.push(Violation::PrimeImplicantShifted {
                        index,
                        exact_ust: verdict.exact_ust,
                    });
                }
            }
            ExplanationClass::NonLabelPreserving => {
                if !verdict.rejected {
                    violations.push(Violation::NonLabelPreservingAccepted { index });
                }
            }
            ExplanationClass::MinimalOnly => {
                if !verdict.rejected {
                    violations.push(Violation::MinimalAccepted { index });
                }
            }
            ExplanationClass::LabelPreservingOther => {}
        }
        instances.push(InstanceVerdict {
            index,
            class: verdict.class,
            exact_ust: verdict.exact_ust,
            rejected: verdict.rejected,
            witness: verdict.witness,
        });
    }
    Ok(TheoremReport {
        instances,
        violations,
        skipped_empty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{node_induced_subgraph, Color};
    use crate::models::zoo::{BrokenParityModel, DegenerateColorGv, FaithfulColorGv};

    fn colorgv_graph(red: usize, blue: usize) -> Graph {
        let mut colors = vec![Color::Red; red];
        colors.extend(vec![Color::Blue; blue]);
        colors.push(Color::Green);
        colors.push(Color::Violet);
        let edges: Vec<(usize, usize)> = (1..red + blue).map(|i| (i - 1, i)).collect();
        Graph::new(colors, edges).unwrap()
    }

    fn subref(g: &Graph, nodes: &[NodeId]) -> SubgraphRef {
        node_induced_subgraph(g, &nodes.iter().copied().collect()).unwrap()
    }

    #[test]
    fn enumeration_counts_match_the_examples() {
        // g = R: one supergraph.
        let g = Graph::new(vec![Color::Red; 2], [(0, 1)]).unwrap();
        let r = g.full_subgraph();
        assert_eq!(count_supergraphs(&g, &r, DEFAULT_CAP).unwrap(), 1);
        assert_eq!(enumerate_supergraphs(&g, &r, DEFAULT_CAP).unwrap().len(), 1);

        // One extra isolated node: in or out.
        let g = Graph::new(vec![Color::Red, Color::Blue], []).unwrap();
        let r = subref(&g, &[0]);
        assert_eq!(count_supergraphs(&g, &r, DEFAULT_CAP).unwrap(), 2);

        // Two extra nodes joined by one edge, detached from R:
        // {}, {a}, {b}, {a,b} x {edge in | out} = 5.
        let g = Graph::new(vec![Color::Red, Color::Blue, Color::Blue], [(1, 2)]).unwrap();
        let r = subref(&g, &[0]);
        assert_eq!(count_supergraphs(&g, &r, DEFAULT_CAP).unwrap(), 5);
        assert_eq!(enumerate_supergraphs(&g, &r, DEFAULT_CAP).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_refuses_above_cap() {
        let g = colorgv_graph(10, 10);
        let r = subref(&g, &[0]);
        let err = count_supergraphs(&g, &r, 10).unwrap_err();
        match err {
            OracleError::CapExceeded { required, cap } => {
                assert_eq!(required, enumeration_requirement(&g, &r));
                assert_eq!(cap, 10);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn exact_ust_of_faithful_blue_majority_is_zero() {
        let g = colorgv_graph(3, 5);
        let out = FaithfulColorGv.predict(&g);
        let value = exact_ust(&FaithfulColorGv, &g, &out.explanation.subgraph, DEFAULT_CAP)
            .unwrap();
        assert_eq!(value, 0.0);
    }

    #[test]
    fn exact_ust_of_degenerate_positive_explanation() {
        // Positive instance with a green anchor available: dropping every
        // blue node lands on the tie branch, flipping to [1, 0].
        let g = Graph::new(vec![Color::Blue, Color::Green, Color::Violet], []).unwrap();
        let violet = g.unique_node_of_color(Color::Violet).unwrap();
        let value =
            exact_ust(&DegenerateColorGv, &g, &subref(&g, &[violet]), DEFAULT_CAP).unwrap();
        assert_eq!(value, 1.0);

        // Without a green anchor the worst case is the uncertain output.
        let g = Graph::new(vec![Color::Blue, Color::Violet], []).unwrap();
        let value = exact_ust(&DegenerateColorGv, &g, &subref(&g, &[1]), DEFAULT_CAP).unwrap();
        assert_eq!(value, 0.5);
    }

    #[test]
    fn exact_ust_of_the_whole_graph_is_zero() {
        let g = colorgv_graph(2, 3);
        let r = g.full_subgraph();
        for model in [&DegenerateColorGv as &dyn SeGnn, &FaithfulColorGv] {
            assert_eq!(exact_ust(model, &g, &r, DEFAULT_CAP).unwrap(), 0.0);
        }
    }

    #[test]
    fn degenerate_negative_explanation_is_minimal_only() {
        let g = colorgv_graph(3, 2);
        let green = g.unique_node_of_color(Color::Green).unwrap();
        let class =
            classify_explanation(&DegenerateColorGv, &g, &subref(&g, &[green]), DEFAULT_CAP)
                .unwrap();
        assert_eq!(class, ExplanationClass::MinimalOnly);
    }

    #[test]
    fn degenerate_positive_explanation_is_non_label_preserving() {
        let g = colorgv_graph(2, 4);
        let violet = g.unique_node_of_color(Color::Violet).unwrap();
        let class =
            classify_explanation(&DegenerateColorGv, &g, &subref(&g, &[violet]), DEFAULT_CAP)
                .unwrap();
        assert_eq!(class, ExplanationClass::NonLabelPreserving);
    }

    #[test]
    fn faithful_singleton_blue_is_prime_implicant() {
        let g = colorgv_graph(0, 1);
        let out = FaithfulColorGv.predict(&g);
        let class =
            classify_explanation(&FaithfulColorGv, &g, &out.explanation.subgraph, DEFAULT_CAP)
                .unwrap();
        assert_eq!(class, ExplanationClass::PrimeImplicant);
    }

    #[test]
    fn faithful_two_blues_are_not_prime_implicant() {
        // With no red nodes, a single blue already preserves the label
        // under every supergraph, so the two-node explanation is neither
        // prime implicant nor minimal.
        let g = colorgv_graph(0, 2);
        let out = FaithfulColorGv.predict(&g);
        let class =
            classify_explanation(&FaithfulColorGv, &g, &out.explanation.subgraph, DEFAULT_CAP)
                .unwrap();
        assert_eq!(class, ExplanationClass::LabelPreservingOther);
    }

    #[test]
    fn empty_explanation_is_rejected_by_the_oracle() {
        let g = colorgv_graph(1, 1);
        let empty = node_induced_subgraph(&g, &BTreeSet::new()).unwrap();
        let err = oracle_verdict(&DegenerateColorGv, &g, &empty, DEFAULT_CAP).unwrap_err();
        assert_eq!(err, OracleError::EmptyExplanation);
    }

    #[test]
    fn broken_model_breaks_the_theorem() {
        let graphs = [colorgv_graph(2, 1), colorgv_graph(1, 2), colorgv_graph(2, 2)];
        let refs: Vec<&Graph> = graphs.iter().collect();
        let report = verify_thm_suffcause(&BrokenParityModel, &refs, DEFAULT_CAP).unwrap();
        assert!(!report.holds(), "the parity classifier must violate the theorem");
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PrimeImplicantShifted { .. })));
    }

    #[test]
    fn analytic_models_satisfy_the_theorem_on_small_graphs() {
        let mut graphs = Vec::new();
        for red in 0..4 {
            for blue in 0..4 {
                if red + blue > 0 {
                    graphs.push(colorgv_graph(red, blue));
                }
            }
        }
        let refs: Vec<&Graph> = graphs.iter().collect();
        for model in [&DegenerateColorGv as &dyn SeGnn, &FaithfulColorGv] {
            let report = verify_thm_suffcause(model, &refs, DEFAULT_CAP).unwrap();
            assert!(report.holds(), "violations: {:?}", report.violations);
            assert_eq!(report.skipped_empty, 0);
        }
    }

    #[test]
    fn sampled_ust_never_exceeds_exact() {
        use crate::metrics::suffcause;
        let g = colorgv_graph(3, 3);
        let out = DegenerateColorGv.predict(&g);
        let exact =
            exact_ust(&DegenerateColorGv, &g, &out.explanation.subgraph, DEFAULT_CAP).unwrap();
        for seed in 0..10 {
            for budget in [1, 5, 20] {
                let sampled =
                    suffcause(&DegenerateColorGv, &g, &out.explanation, budget, seed).unwrap();
                assert!(sampled.value <= exact + 1e-12);
            }
        }
    }

    #[test]
    fn prime_implicant_explanations_survive_random_sampling() {
        use crate::metrics::{is_prediction_changed, sample_supergraph_refs};
        let g = colorgv_graph(0, 1);
        let out = FaithfulColorGv.predict(&g);
        let class =
            classify_explanation(&FaithfulColorGv, &g, &out.explanation.subgraph, DEFAULT_CAP)
                .unwrap();
        assert_eq!(class, ExplanationClass::PrimeImplicant);
        let reference = FaithfulColorGv.predict(&g).prediction;
        for sub in sample_supergraph_refs(&g, &out.explanation, 1000, 99) {
            let (graph, _) = sub.to_graph(&g);
            let pred = FaithfulColorGv.predict(&graph).prediction;
            assert!(!is_prediction_changed(&reference, &pred));
        }
    }

    #[test]
    fn enumeration_count_matches_direct_count_on_small_instances() {
        let g = colorgv_graph(2, 2);
        for nodes in [vec![0], vec![0, 1], vec![4]] {
            let r = subref(&g, &nodes);
            if enumeration_requirement(&g, &r) <= 12 {
                let direct = enumerate_supergraphs(&g, &r, DEFAULT_CAP).unwrap().len() as u64;
                let formula = count_supergraphs(&g, &r, DEFAULT_CAP).unwrap();
                assert_eq!(direct, formula);
            }
        }
    }
}
