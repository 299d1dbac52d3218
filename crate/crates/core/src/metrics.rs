//! Perturbation families and the faithfulness-metric suite.
//!
//! Every metric perturbs either the complement of an explanation
//! (sufficiency) or the explanation itself (necessity), feeds the perturbed
//! input back through the model, and flags the explanation when predictions
//! move. The uniform sufficiency test samples arbitrary supergraphs of the
//! explanation inside the input, subsuming the single-perturbation families.
//!
//! All sampling is keyed by `(seed, sample index)`, so larger budgets extend
//! smaller ones sample-for-sample and reports are byte-reproducible.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::MetricError;
use crate::graph::{
    edge_induced_restrict, node_induced_subgraph, select_explanation, Edge, Explanation, Graph,
    NodeId, RelevanceScores, SubgraphRef,
};
use crate::models::{ModelOutput, Prediction, SeGnn};
use crate::seeding::{child_rng, derive_seed};

/// Total variation distance between two predictions.
pub fn distance(p: &Prediction, q: &Prediction) -> Result<f64, MetricError> {
    if p.arity() != q.arity() {
        return Err(MetricError::ArityMismatch(p.arity(), q.arity()));
    }
    let sum: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(0.5 * sum)
}

/// Whether a perturbed prediction counts as changed: the argmax moved, or
/// (binary tasks only) the new output landed in the uncertain band
/// `[0.4, 0.6]`.
pub fn is_prediction_changed(p: &Prediction, q: &Prediction) -> bool {
    if p.label() != q.label() {
        return true;
    }
    q.arity() == 2 && (0.4..=0.6).contains(&q.max_prob())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeTarget {
    Explanation,
    Complement,
}

/// One family of input perturbations.
#[derive(Debug, Clone, PartialEq)]
pub enum PerturbationKind {
    /// Drop the explanation, keep the complement as a standalone graph.
    ExplanationRemoval,
    /// Drop the complement, keep the explanation as a standalone graph.
    ComplementRemoval,
    /// Remove each targeted edge independently with probability `p`.
    EdgeRemoval { p: f64, target: EdgeTarget },
    /// Remove a fixed number of targeted edges, sampled without replacement.
    EdgeRemovalCount { count: usize, target: EdgeTarget },
    /// Swap the complement with that of a same-label donor, re-attaching the
    /// explanation with random bridges that preserve the edge total.
    ComplementSwap,
    /// Perturb only the relevance scores with instance-fitted Gaussian noise.
    ScoreGaussian,
    /// Uniformly sampled supergraphs `R ⊆ G' ⊆ G`; the bare explanation is
    /// always candidate 0.
    SupergraphSample,
}

impl PerturbationKind {
    fn label(&self) -> &'static str {
        match self {
            PerturbationKind::ExplanationRemoval => "explanation-removal",
            PerturbationKind::ComplementRemoval => "complement-removal",
            PerturbationKind::EdgeRemoval { .. } => "edge-removal",
            PerturbationKind::EdgeRemovalCount { .. } => "edge-removal-count",
            PerturbationKind::ComplementSwap => "complement-swap",
            PerturbationKind::ScoreGaussian => "score-gaussian",
            PerturbationKind::SupergraphSample => "supergraph",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFamily {
    pub kind: PerturbationKind,
    pub budget: usize,
    pub seed: u64,
}

/// A perturbed input: either a standalone graph or replacement scores for
/// the original graph (score perturbations keep the topology).
#[derive(Debug, Clone)]
pub enum Perturbed {
    Graph(Graph),
    Scores(RelevanceScores),
}

#[derive(Debug, Clone)]
pub struct PerturbSample {
    pub descriptor: String,
    pub payload: Perturbed,
}

fn box_muller(rng: &mut ChaCha8Rng, mean: f64, std: f64) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    mean + std * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn complement_nodes(g: &Graph, expl: &Explanation) -> BTreeSet<NodeId> {
    g.node_ids()
        .filter(|u| !expl.subgraph.contains_node(*u))
        .collect()
}

fn targeted_edges(g: &Graph, expl: &Explanation, target: EdgeTarget) -> Vec<Edge> {
    match target {
        EdgeTarget::Explanation => expl.subgraph.edges().iter().copied().collect(),
        EdgeTarget::Complement => g
            .edges()
            .filter(|&(u, v)| !expl.subgraph.contains_edge(u, v))
            .collect(),
    }
}

fn graph_without_edges(g: &Graph, removed: &BTreeSet<Edge>) -> Graph {
    Graph::new(
        g.colors().to_vec(),
        g.edges().filter(|e| !removed.contains(e)),
    )
    .expect("edge removal preserves validity")
}

/// Sample the supergraph lattice: per sample, uniform node weights (the
/// explanation's nodes forced in), threshold at 0.5, node-induce; then
/// uniform edge weights (the explanation's edges forced in), threshold at
/// 0.5, edge-restrict. Sample 0 is the bare explanation.
pub fn sample_supergraph_refs(
    g: &Graph,
    expl: &Explanation,
    budget: usize,
    seed: u64,
) -> Vec<SubgraphRef> {
    let mut out = Vec::with_capacity(budget);
    out.push(expl.subgraph.clone());
    for i in 1..budget {
        let mut rng = child_rng(seed, "supergraph", i as u64);
        let mut kept_nodes: BTreeSet<NodeId> = BTreeSet::new();
        for u in g.node_ids() {
            let w: f64 = rng.gen();
            if expl.subgraph.contains_node(u) || w >= 0.5 {
                kept_nodes.insert(u);
            }
        }
        let node_induced =
            node_induced_subgraph(g, &kept_nodes).expect("kept nodes are valid");
        let mut kept_edges: BTreeSet<Edge> = BTreeSet::new();
        for (u, v) in node_induced.edges().iter().copied() {
            if expl.subgraph.contains_edge(u, v) {
                kept_edges.insert((u, v));
            } else {
                let w: f64 = rng.gen();
                if w >= 0.5 {
                    kept_edges.insert((u, v));
                }
            }
        }
        out.push(
            edge_induced_restrict(&node_induced, &kept_edges)
                .expect("kept edges come from the node-induced subgraph"),
        );
    }
    out
}

/// Generate the family's perturbations. Deterministic families ignore the
/// budget and yield their single perturbation; sampled families yield
/// `budget` entries keyed by `(family.seed, index)`. `swap_donors` carries
/// the standalone complements of same-label donors for the swap family.
pub fn perturb(
    g: &Graph,
    expl: &Explanation,
    family: &PerturbationFamily,
    swap_donors: &[&Graph],
) -> Result<Vec<PerturbSample>, MetricError> {
    let label = family.kind.label();
    match &family.kind {
        PerturbationKind::ExplanationRemoval => {
            let nodes = complement_nodes(g, expl);
            let sub = node_induced_subgraph(g, &nodes)?;
            let (graph, _) = sub.to_graph(g);
            Ok(vec![PerturbSample {
                descriptor: label.to_string(),
                payload: Perturbed::Graph(graph),
            }])
        }
        PerturbationKind::ComplementRemoval => {
            let (graph, _) = expl.subgraph.to_graph(g);
            Ok(vec![PerturbSample {
                descriptor: label.to_string(),
                payload: Perturbed::Graph(graph),
            }])
        }
        PerturbationKind::EdgeRemoval { p, target } => {
            let candidates = targeted_edges(g, expl, *target);
            if candidates.is_empty() {
                return Err(MetricError::NotApplicable(format!(
                    "no {} edges to remove",
                    match target {
                        EdgeTarget::Explanation => "explanation",
                        EdgeTarget::Complement => "complement",
                    }
                )));
            }
            let mut out = Vec::with_capacity(family.budget);
            for i in 0..family.budget {
                let mut rng = child_rng(family.seed, label, i as u64);
                let removed: BTreeSet<Edge> = candidates
                    .iter()
                    .copied()
                    .filter(|_| rng.gen::<f64>() < *p)
                    .collect();
                out.push(PerturbSample {
                    descriptor: format!("{label}#{i}(-{})", removed.len()),
                    payload: Perturbed::Graph(graph_without_edges(g, &removed)),
                });
            }
            Ok(out)
        }
        PerturbationKind::EdgeRemovalCount { count, target } => {
            let candidates = targeted_edges(g, expl, *target);
            if candidates.is_empty() {
                return Err(MetricError::NotApplicable(format!(
                    "no {} edges to remove",
                    match target {
                        EdgeTarget::Explanation => "explanation",
                        EdgeTarget::Complement => "complement",
                    }
                )));
            }
            let take = (*count).min(candidates.len());
            let mut out = Vec::with_capacity(family.budget);
            for i in 0..family.budget {
                let mut rng = child_rng(family.seed, label, i as u64);
                let picked = rand::seq::index::sample(&mut rng, candidates.len(), take);
                let removed: BTreeSet<Edge> = picked.iter().map(|j| candidates[j]).collect();
                out.push(PerturbSample {
                    descriptor: format!("{label}#{i}(-{})", removed.len()),
                    payload: Perturbed::Graph(graph_without_edges(g, &removed)),
                });
            }
            Ok(out)
        }
        PerturbationKind::ComplementSwap => {
            if swap_donors.is_empty() {
                return Err(MetricError::EmptyDonorPool);
            }
            let target_edges = g.edge_count();
            let expl_nodes: Vec<NodeId> = expl.subgraph.nodes().iter().copied().collect();
            let mut out = Vec::with_capacity(family.budget);
            for i in 0..family.budget {
                let mut rng = child_rng(family.seed, label, i as u64);
                let donor_idx = rng.gen_range(0..swap_donors.len());
                let donor = swap_donors[donor_idx];

                // New ids: explanation nodes first (ascending original id),
                // donor complement nodes after.
                let mut colors: Vec<_> =
                    expl_nodes.iter().map(|&u| g.color(u)).collect();
                colors.extend(donor.colors().iter().copied());
                let offset = expl_nodes.len();
                let remap = |u: NodeId| expl_nodes.iter().position(|&x| x == u).unwrap();
                let mut edges: Vec<Edge> = expl
                    .subgraph
                    .edges()
                    .iter()
                    .map(|&(u, v)| (remap(u), remap(v)))
                    .collect();
                edges.extend(donor.edges().map(|(u, v)| (u + offset, v + offset)));

                let cross = expl_nodes.len() * donor.n();
                let need = target_edges.saturating_sub(edges.len()).min(cross);
                if cross > 0 && need > 0 {
                    let picked = rand::seq::index::sample(&mut rng, cross, need);
                    for j in picked.iter() {
                        let eu = j / donor.n();
                        let dv = j % donor.n();
                        edges.push((eu, dv + offset));
                    }
                }
                let graph = Graph::new(colors, edges).expect("swap construction is valid");
                out.push(PerturbSample {
                    descriptor: format!("{label}#{i}(donor={donor_idx})"),
                    payload: Perturbed::Graph(graph),
                });
            }
            Ok(out)
        }
        PerturbationKind::ScoreGaussian => {
            let values = expl.scores.values();
            let n = values.len().max(1);
            let mean = values.iter().sum::<f64>() / n as f64;
            let var = if n > 1 {
                values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            let std = var.sqrt();
            let mut out = Vec::with_capacity(family.budget);
            for i in 0..family.budget {
                let mut rng = child_rng(family.seed, label, i as u64);
                let perturbed: Vec<f64> = values
                    .iter()
                    .map(|&v| (v + box_muller(&mut rng, mean, std)).clamp(0.0, 1.0))
                    .collect();
                out.push(PerturbSample {
                    descriptor: format!("{label}#{i}"),
                    payload: Perturbed::Scores(
                        RelevanceScores::new(perturbed, /* any graph of n */ {
                            // Scores only need the right length; validated below
                            // against g when applied.
                            g
                        })
                        .expect("clamped scores are in range"),
                    ),
                });
            }
            Ok(out)
        }
        PerturbationKind::SupergraphSample => {
            let refs = sample_supergraph_refs(g, expl, family.budget, family.seed);
            Ok(refs
                .into_iter()
                .enumerate()
                .map(|(i, sub)| {
                    let (graph, _) = sub.to_graph(g);
                    PerturbSample {
                        descriptor: if i == 0 {
                            "bare-explanation".to_string()
                        } else {
                            format!("{label}#{i}")
                        },
                        payload: Perturbed::Graph(graph),
                    }
                })
                .collect())
        }
    }
}

/// The eight audited metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetricKind {
    FidMinus,
    FidPlus,
    RFidMinus,
    RFidPlus,
    Suf,
    Nec,
    CounterFid,
    Ust,
}

impl MetricKind {
    pub const ALL: [MetricKind; 8] = [
        MetricKind::FidMinus,
        MetricKind::FidPlus,
        MetricKind::RFidMinus,
        MetricKind::RFidPlus,
        MetricKind::Suf,
        MetricKind::Nec,
        MetricKind::CounterFid,
        MetricKind::Ust,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::FidMinus => "fid-",
            MetricKind::FidPlus => "fid+",
            MetricKind::RFidMinus => "rfid-",
            MetricKind::RFidPlus => "rfid+",
            MetricKind::Suf => "suf",
            MetricKind::Nec => "nec",
            MetricKind::CounterFid => "counterfid",
            MetricKind::Ust => "ust",
        }
    }

    pub fn parse(s: &str) -> Result<Self, MetricError> {
        match s {
            "fid-" => Ok(MetricKind::FidMinus),
            "fid+" => Ok(MetricKind::FidPlus),
            "rfid-" => Ok(MetricKind::RFidMinus),
            "rfid+" => Ok(MetricKind::RFidPlus),
            "suf" => Ok(MetricKind::Suf),
            "nec" => Ok(MetricKind::Nec),
            "counterfid" => Ok(MetricKind::CounterFid),
            "ust" => Ok(MetricKind::Ust),
            other => Err(MetricError::UnknownMetric(other.to_string())),
        }
    }

    /// Necessity metrics perturb the explanation and invert the rejection
    /// rule; everything else here estimates sufficiency.
    pub fn is_necessity(self) -> bool {
        matches!(
            self,
            MetricKind::FidPlus | MetricKind::RFidPlus | MetricKind::Nec
        )
    }

    fn family(self, budget: usize, seed: u64, nec_removal_count: usize) -> PerturbationFamily {
        let kind = match self {
            MetricKind::FidMinus => PerturbationKind::ComplementRemoval,
            MetricKind::FidPlus => PerturbationKind::ExplanationRemoval,
            MetricKind::RFidMinus => PerturbationKind::EdgeRemoval {
                p: 0.9,
                target: EdgeTarget::Complement,
            },
            MetricKind::RFidPlus => PerturbationKind::EdgeRemoval {
                p: 0.1,
                target: EdgeTarget::Explanation,
            },
            MetricKind::Suf => PerturbationKind::ComplementSwap,
            MetricKind::Nec => PerturbationKind::EdgeRemovalCount {
                count: nec_removal_count,
                target: EdgeTarget::Explanation,
            },
            MetricKind::CounterFid => PerturbationKind::ScoreGaussian,
            MetricKind::Ust => PerturbationKind::SupergraphSample,
        };
        PerturbationFamily { kind, budget, seed }
    }
}

/// Per-instance metric outcome: worst prediction shift, the rejection flag,
/// and the per-perturbation trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub value: f64,
    pub rejected: bool,
    pub trace: Vec<(String, f64)>,
}

/// Split-level context shared across samples.
#[derive(Debug, Clone, Default)]
pub struct MetricContext<'a> {
    /// Standalone complements of same-label donors (swap family).
    pub swap_donors: Vec<&'a Graph>,
    /// Dataset-wide removal count for the necessity edge-removal family.
    pub nec_removal_count: usize,
}

fn predict_perturbed(model: &dyn SeGnn, g: &Graph, sample: &PerturbSample) -> Prediction {
    match &sample.payload {
        Perturbed::Graph(graph) => model.predict(graph).prediction,
        Perturbed::Scores(scores) => {
            // Scores go to the classifier only; re-select the explanation
            // from the perturbed scores, topology unchanged.
            let expl = select_explanation(scores, model.selection(), g, model.rescue())
                .expect("perturbed scores are defined on g");
            model.classify(g, scores, &expl)
        }
    }
}

/// Evaluate one metric on one (graph, explanation) pair.
///
/// The explanation must be the model's own on `g` (the audit validates the
/// provider's explanations against the provider's model). Sufficiency
/// metrics reject when any perturbation changes the prediction; necessity
/// metrics reject when some perturbation fails to change it.
pub fn evaluate_metric(
    model: &dyn SeGnn,
    g: &Graph,
    expl: &Explanation,
    metric: MetricKind,
    budget: usize,
    seed: u64,
    ctx: &MetricContext,
) -> Result<MetricResult, MetricError> {
    let family = metric.family(budget, seed, ctx.nec_removal_count);
    let samples = perturb(g, expl, &family, &ctx.swap_donors)?;
    let reference = model.predict(g).prediction;
    let mut value = 0.0f64;
    let mut any_changed = false;
    let mut any_preserved = false;
    let mut trace = Vec::with_capacity(samples.len());
    for sample in &samples {
        let pred = predict_perturbed(model, g, sample);
        let dist = distance(&reference, &pred)?;
        value = value.max(dist);
        if is_prediction_changed(&reference, &pred) {
            any_changed = true;
        } else {
            any_preserved = true;
        }
        trace.push((sample.descriptor.clone(), dist));
    }
    let rejected = if metric.is_necessity() {
        any_preserved
    } else {
        any_changed
    };
    Ok(MetricResult {
        value,
        rejected,
        trace,
    })
}

/// The uniform sufficiency test on one instance: exactly the supergraph
/// sampler with the bare explanation guaranteed among the candidates.
pub fn suffcause(
    model: &dyn SeGnn,
    g: &Graph,
    expl: &Explanation,
    budget: usize,
    seed: u64,
) -> Result<MetricResult, MetricError> {
    evaluate_metric(
        model,
        g,
        expl,
        MetricKind::Ust,
        budget,
        seed,
        &MetricContext::default(),
    )
}

/// Per-sample record inside a rejection report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub applicable: bool,
    pub value: f64,
    pub rejected: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<(String, f64)>,
}

/// One metric's row in a rejection report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEntry {
    /// Fraction of applicable samples rejected; absent when the metric
    /// applies to no sample (for instance, no explanation edges to remove).
    pub ratio: Option<f64>,
    /// Number of applicable samples.
    pub n: usize,
    pub samples: Vec<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionReport {
    pub model: String,
    pub split: String,
    pub budget: usize,
    pub seed: u64,
    pub metrics: std::collections::BTreeMap<String, MetricEntry>,
}

fn build_context<'a>(
    complements: &'a [(usize, Graph)],
    label: usize,
    exclude: usize,
    nec_removal_count: usize,
    need_donors: bool,
) -> MetricContext<'a> {
    let swap_donors = if need_donors {
        complements
            .iter()
            .enumerate()
            .filter(|(j, (donor_label, _))| *j != exclude && *donor_label == label)
            .map(|(_, (_, g))| g)
            .collect()
    } else {
        Vec::new()
    };
    MetricContext {
        swap_donors,
        nec_removal_count,
    }
}

/// Mean removal count for the necessity family: 10% of the split's average
/// edge count, rounded up.
fn nec_count(split: &[(&Graph, usize)]) -> usize {
    let mean =
        split.iter().map(|(g, _)| g.edge_count()).sum::<usize>() as f64 / split.len() as f64;
    (0.1 * mean).ceil().max(1.0) as usize
}

/// Rejection ratio of one metric over a split. Explanations come from the
/// model itself; per-sample seeds derive from `(seed, "metric:<name>",
/// index)`. Samples the metric cannot perturb are recorded as inapplicable
/// and excluded from the ratio.
pub fn rejection_ratio(
    model: &dyn SeGnn,
    split: &[(&Graph, usize)],
    metric: MetricKind,
    budget: usize,
    seed: u64,
    keep_traces: bool,
) -> Result<MetricEntry, MetricError> {
    if split.is_empty() {
        return Err(MetricError::EmptySplit);
    }
    let outputs: Vec<ModelOutput> = split
        .par_iter()
        .map(|(g, _)| model.predict(g))
        .collect();
    let complements: Vec<(usize, Graph)> = if metric == MetricKind::Suf {
        split
            .par_iter()
            .zip(&outputs)
            .map(|((g, label), out)| {
                let nodes = complement_nodes(g, &out.explanation);
                let sub = node_induced_subgraph(g, &nodes).expect("complement nodes valid");
                (*label, sub.to_graph(g).0)
            })
            .collect()
    } else {
        Vec::new()
    };
    let nec = nec_count(split);
    let stream = format!("metric:{}", metric.name());

    let samples: Vec<SampleRecord> = split
        .par_iter()
        .enumerate()
        .map(|(i, (g, label))| {
            let sample_seed = derive_seed(seed, &stream, i as u64);
            let ctx = build_context(&complements, *label, i, nec, metric == MetricKind::Suf);
            match evaluate_metric(model, g, &outputs[i].explanation, metric, budget, sample_seed, &ctx)
            {
                Ok(result) => SampleRecord {
                    index: i,
                    seed: sample_seed,
                    applicable: true,
                    value: result.value,
                    rejected: result.rejected,
                    trace: if keep_traces { result.trace } else { Vec::new() },
                },
                Err(MetricError::NotApplicable(_)) | Err(MetricError::EmptyDonorPool) => {
                    SampleRecord {
                        index: i,
                        seed: sample_seed,
                        applicable: false,
                        value: 0.0,
                        rejected: false,
                        trace: Vec::new(),
                    }
                }
                Err(e) => panic!("metric evaluation failed on sample {i}: {e}"),
            }
        })
        .collect();

    let n = samples.iter().filter(|s| s.applicable).count();
    let rejected = samples.iter().filter(|s| s.applicable && s.rejected).count();
    Ok(MetricEntry {
        ratio: if n == 0 {
            None
        } else {
            Some(rejected as f64 / n as f64)
        },
        n,
        samples,
    })
}

/// Run several metrics over a split and assemble the full report.
pub fn audit(
    model: &dyn SeGnn,
    model_id: &str,
    split: &[(&Graph, usize)],
    split_id: &str,
    metrics: &[MetricKind],
    budget: usize,
    seed: u64,
    keep_traces: bool,
) -> Result<RejectionReport, MetricError> {
    let mut entries = std::collections::BTreeMap::new();
    for &metric in metrics {
        let entry = rejection_ratio(model, split, metric, budget, seed, keep_traces)?;
        entries.insert(metric.name().to_string(), entry);
    }
    Ok(RejectionReport {
        model: model_id.to_string(),
        split: split_id.to_string(),
        budget,
        seed,
        metrics: entries,
    })
}

impl RejectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One CSV row per metric: `metric,ratio,n,budget,seed`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,ratio,n,budget,seed\n");
        for (name, entry) in &self.metrics {
            let ratio = entry
                .ratio
                .map(|r| format!("{r:.6}"))
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                name, ratio, entry.n, self.budget, self.seed
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{gen_bacolorgv, BaColorGvConfig};
    use crate::graph::{Color, SelectionMode};
    use crate::models::zoo::{DegenerateColorGv, FaithfulColorGv};

    fn colorgv_graph(red: usize, blue: usize) -> Graph {
        let mut colors = vec![Color::Red; red];
        colors.extend(vec![Color::Blue; blue]);
        colors.push(Color::Green);
        colors.push(Color::Violet);
        let edges: Vec<(usize, usize)> = (1..red + blue).map(|i| (i - 1, i)).collect();
        Graph::new(colors, edges).unwrap()
    }

    #[test]
    fn total_variation_examples() {
        let a = Prediction::binary(1.0);
        let b = Prediction::binary(0.0);
        let half = Prediction::binary(0.5);
        assert_eq!(distance(&a, &b).unwrap(), 1.0);
        assert_eq!(distance(&a, &a).unwrap(), 0.0);
        assert_eq!(distance(&a, &half).unwrap(), 0.5);
    }

    #[test]
    fn change_detection_uses_band_and_flips() {
        let confident = Prediction::binary(1.0);
        assert!(is_prediction_changed(&confident, &Prediction::binary(0.5)));
        assert!(!is_prediction_changed(
            &Prediction::binary(0.9),
            &Prediction::binary(0.8)
        ));
        assert!(is_prediction_changed(
            &Prediction::binary(0.9),
            &Prediction::binary(0.3)
        ));
    }

    #[test]
    fn complement_removal_yields_bare_explanation() {
        let g = colorgv_graph(2, 1);
        let out = DegenerateColorGv.predict(&g);
        let family = PerturbationFamily {
            kind: PerturbationKind::ComplementRemoval,
            budget: 1,
            seed: 0,
        };
        let samples = perturb(&g, &out.explanation, &family, &[]).unwrap();
        assert_eq!(samples.len(), 1);
        let Perturbed::Graph(bare) = &samples[0].payload else {
            panic!("expected graph payload");
        };
        assert_eq!(bare.n(), 1);
        assert_eq!(bare.color(0), Color::Green);
    }

    #[test]
    fn supergraph_samples_of_full_explanation_are_the_graph() {
        let g = colorgv_graph(2, 2);
        let scores = RelevanceScores::new(vec![1.0; g.n()], &g).unwrap();
        let expl = select_explanation(&scores, SelectionMode::Threshold(0.5), &g, false).unwrap();
        let family = PerturbationFamily {
            kind: PerturbationKind::SupergraphSample,
            budget: 8,
            seed: 3,
        };
        for sample in perturb(&g, &expl, &family, &[]).unwrap() {
            let Perturbed::Graph(sg) = sample.payload else {
                panic!("expected graph payload")
            };
            assert_eq!(sg, g);
        }
    }

    #[test]
    fn full_probability_edge_removal_clears_complement_edges() {
        let g = colorgv_graph(3, 2);
        let out = DegenerateColorGv.predict(&g);
        let family = PerturbationFamily {
            kind: PerturbationKind::EdgeRemoval {
                p: 1.0,
                target: EdgeTarget::Complement,
            },
            budget: 4,
            seed: 9,
        };
        for sample in perturb(&g, &out.explanation, &family, &[]).unwrap() {
            let Perturbed::Graph(sg) = sample.payload else {
                panic!("expected graph payload")
            };
            assert_eq!(sg.edge_count(), 0);
            assert_eq!(sg.n(), g.n(), "nodes are left untouched");
        }
    }

    #[test]
    fn supergraph_samples_stay_between_explanation_and_graph() {
        let g = colorgv_graph(4, 3);
        let out = DegenerateColorGv.predict(&g);
        for sub in sample_supergraph_refs(&g, &out.explanation, 40, 11) {
            assert!(out.explanation.subgraph.nodes().is_subset(sub.nodes()));
            assert!(out.explanation.subgraph.edges().is_subset(sub.edges()));
            assert!(sub.nodes().iter().all(|&u| u < g.n()));
            assert!(sub.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        }
    }

    #[test]
    fn fid_minus_accepts_degenerate_negative_graphs() {
        // Feeding the green anchor alone preserves class 0 (the tie branch).
        let g = colorgv_graph(3, 1);
        let out = DegenerateColorGv.predict(&g);
        let result = evaluate_metric(
            &DegenerateColorGv,
            &g,
            &out.explanation,
            MetricKind::FidMinus,
            50,
            0,
            &MetricContext::default(),
        )
        .unwrap();
        assert!(!result.rejected);
        assert_eq!(result.value, 0.0);
    }

    #[test]
    fn rfid_minus_never_rejects_the_edge_blind_model() {
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 20,
            colored_range: (3, 30),
            ..Default::default()
        })
        .unwrap();
        for (i, (g, _)) in ds.graphs.iter().enumerate() {
            let out = DegenerateColorGv.predict(g);
            let result = evaluate_metric(
                &DegenerateColorGv,
                g,
                &out.explanation,
                MetricKind::RFidMinus,
                50,
                i as u64,
                &MetricContext::default(),
            )
            .unwrap();
            assert!(!result.rejected, "edge removal cannot move color counts");
            assert_eq!(result.value, 0.0);
        }
    }

    #[test]
    fn ust_rejects_degenerate_positive_graphs_via_bare_explanation() {
        let g = colorgv_graph(3, 5);
        let out = DegenerateColorGv.predict(&g);
        let result = suffcause(&DegenerateColorGv, &g, &out.explanation, 1, 0).unwrap();
        assert!(result.rejected, "the bare violet anchor lands on [0.5, 0.5]");
        assert_eq!(result.value, 0.5);
        assert_eq!(result.trace[0].0, "bare-explanation");
    }

    #[test]
    fn ust_accepts_the_faithful_model() {
        let g = colorgv_graph(3, 5);
        let out = FaithfulColorGv.predict(&g);
        let result = suffcause(&FaithfulColorGv, &g, &out.explanation, 64, 5).unwrap();
        assert!(!result.rejected);
        assert_eq!(result.value, 0.0);
    }

    #[test]
    fn fid_plus_is_zero_on_degenerate_graphs_with_both_anchors() {
        // Removing the anchor flips to [0.5, 0.5], which counts as changed,
        // so the necessity rule never fires.
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 30,
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let entry =
            rejection_ratio(&DegenerateColorGv, &split, MetricKind::FidPlus, 50, 1, false)
                .unwrap();
        assert_eq!(entry.ratio, Some(0.0));
        assert_eq!(entry.n, 30);
    }

    #[test]
    fn rfid_plus_is_inapplicable_for_single_node_explanations() {
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 10,
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let entry =
            rejection_ratio(&DegenerateColorGv, &split, MetricKind::RFidPlus, 50, 1, false)
                .unwrap();
        assert_eq!(entry.ratio, None, "anchor explanations carry no edges");
        assert_eq!(entry.n, 0);
    }

    #[test]
    fn rejection_ratio_constants() {
        struct Never;
        impl SeGnn for Never {
            fn name(&self) -> &str {
                "never"
            }
            fn extract(&self, g: &Graph) -> RelevanceScores {
                RelevanceScores::new(vec![1.0; g.n()], g).unwrap()
            }
            fn classify(&self, _: &Graph, _: &RelevanceScores, _: &Explanation) -> Prediction {
                Prediction::binary(1.0)
            }
        }
        // Constant model: no perturbation ever changes the output, so the
        // sufficiency rule rejects nothing and the necessity rule everything.
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 8,
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let suff = rejection_ratio(&Never, &split, MetricKind::Ust, 10, 3, false).unwrap();
        assert_eq!(suff.ratio, Some(0.0));
        let nec = rejection_ratio(&Never, &split, MetricKind::FidPlus, 10, 3, false).unwrap();
        assert_eq!(nec.ratio, Some(1.0));
    }

    #[test]
    fn reports_are_deterministic() {
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 12,
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let metrics = [MetricKind::Ust, MetricKind::FidMinus, MetricKind::CounterFid];
        let a = audit(&DegenerateColorGv, "control", &split, "all", &metrics, 20, 4, true)
            .unwrap();
        let b = audit(&DegenerateColorGv, "control", &split, "all", &metrics, 20, 4, true)
            .unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn budget_monotonicity_on_seed_paired_runs() {
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 60,
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let mut prev = 0.0;
        for budget in [5, 10, 25, 50] {
            let entry =
                rejection_ratio(&DegenerateColorGv, &split, MetricKind::Ust, budget, 2, false)
                    .unwrap();
            let ratio = entry.ratio.unwrap();
            assert!(
                ratio >= prev,
                "budget {budget}: ratio {ratio} fell below {prev}"
            );
            prev = ratio;
        }
    }

    #[test]
    fn swap_preserves_edge_totals() {
        let ds = gen_bacolorgv(&BaColorGvConfig {
            n_graphs: 16,
            colored_range: (5, 30),
            ..Default::default()
        })
        .unwrap();
        let split: Vec<(&Graph, usize)> = ds.graphs.iter().map(|(g, l)| (g, *l)).collect();
        let entry =
            rejection_ratio(&FaithfulColorGv, &split, MetricKind::Suf, 6, 8, true).unwrap();
        assert!(entry.n > 0);
        // Donor complements exist for every sample here, so each trace has
        // the full budget of swaps.
        for sample in &entry.samples {
            if sample.applicable {
                assert_eq!(sample.trace.len(), 6);
            }
        }
    }
}
