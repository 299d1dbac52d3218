//! Deterministic generators for the two synthetic benchmark families.
//!
//! `BAColorGV`: Barabási–Albert graphs over red/blue nodes plus one isolated
//! green and one isolated violet node per graph. The label is whether blue
//! nodes outnumber red ones, so the green/violet pair forms a node-level
//! anchor set.
//!
//! `MotifAnchors`: the same red/blue counting task, with uncolored decoy
//! motifs (6-clique, 4-star, triangle) attached as a subgraph anchor set:
//! every graph carries the clique, positives carry at least one of star or
//! triangle.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::DatasetError;
use crate::graph::{graph_from_json, graph_to_json, Color, Edge, Graph, NodeId, SubgraphRef};
use crate::seeding::child_rng;

const BALANCE_RESEED_ATTEMPTS: u64 = 64;

fn split_ok(split: [f64; 3]) -> bool {
    split.iter().all(|&r| r >= 0.0) && (split.iter().sum::<f64>() - 1.0).abs() < 1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaColorGvConfig {
    pub n_graphs: usize,
    /// Inclusive range for the total number of red+blue nodes per graph.
    pub colored_range: (usize, usize),
    /// Barabási–Albert attachment parameter m.
    pub ba_attach: usize,
    /// Train/val/test ratios, summing to 1.
    pub split: [f64; 3],
    pub seed: u64,
}

impl Default for BaColorGvConfig {
    fn default() -> Self {
        BaColorGvConfig {
            n_graphs: 5000,
            colored_range: (0, 100),
            ba_attach: 2,
            split: [0.8, 0.1, 0.1],
            seed: 7,
        }
    }
}

impl BaColorGvConfig {
    fn validate(&self) -> Result<(), DatasetError> {
        let (min, max) = self.colored_range;
        if min > max {
            return Err(DatasetError::EmptyRange { min, max });
        }
        if self.ba_attach == 0 {
            return Err(DatasetError::ZeroAttachment);
        }
        // A range capped below m+1 can never produce a viable BA topology;
        // max == 0 is the explicitly allowed anchors-only degenerate case.
        if max > 0 && max <= self.ba_attach {
            return Err(DatasetError::RangeBelowViable {
                max,
                m: self.ba_attach,
            });
        }
        if !split_ok(self.split) {
            return Err(DatasetError::BadSplit(self.split));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifAnchorsConfig {
    pub n_graphs: usize,
    /// Inclusive range for the number of red/blue base nodes (at least 1,
    /// so motif bridges have somewhere to land).
    pub base_size_range: (usize, usize),
    pub ba_attach: usize,
    pub split: [f64; 3],
    pub seed: u64,
}

impl Default for MotifAnchorsConfig {
    fn default() -> Self {
        MotifAnchorsConfig {
            n_graphs: 500,
            base_size_range: (8, 16),
            ba_attach: 2,
            split: [0.8, 0.1, 0.1],
            seed: 7,
        }
    }
}

impl MotifAnchorsConfig {
    fn validate(&self) -> Result<(), DatasetError> {
        let (min, max) = self.base_size_range;
        if min < 1 || min > max {
            return Err(DatasetError::BadBaseRange { min, max });
        }
        if self.ba_attach == 0 {
            return Err(DatasetError::ZeroAttachment);
        }
        if !split_ok(self.split) {
            return Err(DatasetError::BadSplit(self.split));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitId {
    Train,
    Val,
    Test,
}

impl SplitId {
    pub fn name(self) -> &'static str {
        match self {
            SplitId::Train => "train",
            SplitId::Val => "val",
            SplitId::Test => "test",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "train" => Some(SplitId::Train),
            "val" => Some(SplitId::Val),
            "test" => Some(SplitId::Test),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Splits {
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

impl Splits {
    pub fn indices(&self, id: SplitId) -> &[usize] {
        match id {
            SplitId::Train => &self.train,
            SplitId::Val => &self.val,
            SplitId::Test => &self.test,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub config: serde_json::Value,
    pub requested_seed: u64,
    /// Seed actually used after the label-balance search.
    pub effective_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub graphs: Vec<(Graph, usize)>,
    pub splits: Splits,
    pub provenance: Provenance,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn split_graphs(&self, id: SplitId) -> Vec<(&Graph, usize)> {
        self.splits
            .indices(id)
            .iter()
            .map(|&i| (&self.graphs[i].0, self.graphs[i].1))
            .collect()
    }

    pub fn all_graphs(&self) -> Vec<&Graph> {
        self.graphs.iter().map(|(g, _)| g).collect()
    }

    /// Serialize as JSON lines: a header carrying provenance and splits,
    /// then one canonical graph object per line.
    pub fn to_jsonl(&self) -> String {
        let header = serde_json::json!({
            "family": self.provenance.family,
            "config": self.provenance.config,
            "seed": self.provenance.requested_seed,
            "effective_seed": self.provenance.effective_seed,
            "splits": self.splits,
        });
        let mut out = serde_json::to_string(&header).expect("header serialization");
        for (g, label) in &self.graphs {
            out.push('\n');
            out.push_str(&graph_to_json(g, Some(*label)));
        }
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Dataset, DatasetError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header_line = lines
            .next()
            .ok_or_else(|| DatasetError::Format("missing header line".into()))?;
        let header: serde_json::Value = serde_json::from_str(header_line)
            .map_err(|e| DatasetError::Format(format!("bad header: {e}")))?;
        let splits: Splits = serde_json::from_value(
            header
                .get("splits")
                .cloned()
                .ok_or_else(|| DatasetError::Format("header lacks splits".into()))?,
        )
        .map_err(|e| DatasetError::Format(format!("bad splits: {e}")))?;
        let provenance = Provenance {
            family: header
                .get("family")
                .and_then(|v| v.as_str())
                .unwrap_or("unknown")
                .to_string(),
            config: header.get("config").cloned().unwrap_or(serde_json::Value::Null),
            requested_seed: header.get("seed").and_then(|v| v.as_u64()).unwrap_or(0),
            effective_seed: header
                .get("effective_seed")
                .and_then(|v| v.as_u64())
                .unwrap_or(0),
        };
        let mut graphs = Vec::new();
        for line in lines {
            let (g, label) = graph_from_json(line)
                .map_err(|e| DatasetError::Format(format!("bad graph line: {e}")))?;
            let label =
                label.ok_or_else(|| DatasetError::Format("graph line lacks a label".into()))?;
            graphs.push((g, label));
        }
        for id in [SplitId::Train, SplitId::Val, SplitId::Test] {
            for &i in splits.indices(id) {
                if i >= graphs.len() {
                    return Err(DatasetError::Format(format!(
                        "split index {i} out of range for {} graphs",
                        graphs.len()
                    )));
                }
            }
        }
        Ok(Dataset {
            graphs,
            splits,
            provenance,
        })
    }
}

/// Ground-truth label for the color-counting task: 1 iff #blue > #red.
/// Ties are negative. Works on any colored graph, so it doubles as the
/// labeling function for perturbed inputs.
pub fn label_bacolorgv(g: &Graph) -> usize {
    usize::from(g.count_color(Color::Blue) > g.count_color(Color::Red))
}

/// MotifAnchors shares the counting label; motifs are neutral decoys.
pub fn label_motif_anchors(g: &Graph) -> usize {
    label_bacolorgv(g)
}

/// Barabási–Albert edges over `t` nodes: node `i` attaches to `min(m, i)`
/// distinct targets sampled proportionally to degree (repeated-endpoint
/// list), which keeps every generated topology connected for `t >= 1`.
fn barabasi_albert_edges(t: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut endpoints: Vec<NodeId> = Vec::new();
    for i in 1..t {
        let k = m.min(i);
        let mut targets = BTreeSet::new();
        while targets.len() < k {
            let candidate = if endpoints.is_empty() {
                rng.gen_range(0..i)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            targets.insert(candidate);
        }
        for &target in &targets {
            edges.push((target, i));
            endpoints.push(target);
            endpoints.push(i);
        }
    }
    edges
}

fn sample_base_colors(t: usize, rng: &mut ChaCha8Rng) -> Vec<Color> {
    (0..t)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Color::Blue
            } else {
                Color::Red
            }
        })
        .collect()
}

fn make_splits(n: usize, ratios: [f64; 3], rng: &mut ChaCha8Rng) -> Splits {
    let n_train = (ratios[0] * n as f64).round() as usize;
    let n_val = ((ratios[1] * n as f64).round() as usize).min(n - n_train.min(n));
    let n_train = n_train.min(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut train: Vec<usize> = perm[..n_train].to_vec();
    let mut val: Vec<usize> = perm[n_train..n_train + n_val].to_vec();
    let mut test: Vec<usize> = perm[n_train + n_val..].to_vec();
    train.sort_unstable();
    val.sort_unstable();
    test.sort_unstable();
    Splits { train, val, test }
}

fn splits_balanced(graphs: &[(Graph, usize)], splits: &Splits) -> bool {
    [&splits.train, &splits.val, &splits.test].iter().all(|idx| {
        !idx.is_empty()
            && idx.iter().any(|&i| graphs[i].1 == 0)
            && idx.iter().any(|&i| graphs[i].1 == 1)
    })
}

fn gen_bacolorgv_once(cfg: &BaColorGvConfig, effective_seed: u64) -> (Vec<(Graph, usize)>, Splits) {
    let mut rng = child_rng(effective_seed, "bacolorgv", 0);
    let (min, max) = cfg.colored_range;
    let mut graphs = Vec::with_capacity(cfg.n_graphs);
    for _ in 0..cfg.n_graphs {
        let t = rng.gen_range(min..=max);
        let mut colors = sample_base_colors(t, &mut rng);
        let edges = barabasi_albert_edges(t, cfg.ba_attach, &mut rng);
        colors.push(Color::Green);
        colors.push(Color::Violet);
        let g = Graph::new(colors, edges).expect("generator produces valid edges");
        let label = label_bacolorgv(&g);
        graphs.push((g, label));
    }
    let splits = make_splits(cfg.n_graphs, cfg.split, &mut rng);
    (graphs, splits)
}

/// Generate a BAColorGV dataset. Identical config and seed produce a
/// byte-identical dataset. Seeds are retried (up to a small bound) until all
/// splits carry both classes; the seed actually used is recorded in the
/// provenance. Degenerate configs that can never balance fall back to the
/// requested seed.
pub fn gen_bacolorgv(cfg: &BaColorGvConfig) -> Result<Dataset, DatasetError> {
    cfg.validate()?;
    let mut chosen = None;
    for attempt in 0..BALANCE_RESEED_ATTEMPTS {
        let effective = cfg.seed.wrapping_add(attempt);
        let (graphs, splits) = gen_bacolorgv_once(cfg, effective);
        if splits_balanced(&graphs, &splits) {
            chosen = Some((graphs, splits, effective));
            break;
        }
    }
    let (graphs, splits, effective_seed) = match chosen {
        Some(found) => found,
        None => {
            let (graphs, splits) = gen_bacolorgv_once(cfg, cfg.seed);
            (graphs, splits, cfg.seed)
        }
    };
    Ok(Dataset {
        graphs,
        splits,
        provenance: Provenance {
            family: "bacolorgv".into(),
            config: serde_json::to_value(cfg).expect("config serialization"),
            requested_seed: cfg.seed,
            effective_seed,
        },
    })
}

/// The three decoy motif shapes of the subgraph anchor set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Motif {
    Triangle,
    Star4,
    Clique6,
}

impl Motif {
    pub fn node_count(self) -> usize {
        match self {
            Motif::Triangle => 3,
            Motif::Star4 => 5,
            Motif::Clique6 => 6,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Motif::Triangle => 3,
            Motif::Star4 => 4,
            Motif::Clique6 => 15,
        }
    }

    /// Which class partition of the anchor set the motif belongs to.
    pub fn partition_label(self) -> usize {
        match self {
            Motif::Clique6 => 0,
            Motif::Star4 | Motif::Triangle => 1,
        }
    }

    /// Largest motif size within a class partition.
    pub fn partition_max_size(label: usize) -> usize {
        match label {
            0 => Motif::Clique6.node_count(),
            _ => Motif::Star4.node_count(),
        }
    }

    /// Internal edges with node ids offset by `base`.
    fn edges_at(self, base: usize) -> Vec<Edge> {
        match self {
            Motif::Triangle => vec![(base, base + 1), (base + 1, base + 2), (base, base + 2)],
            Motif::Star4 => (1..=4).map(|i| (base, base + i)).collect(),
            Motif::Clique6 => {
                let mut edges = Vec::new();
                for i in 0..6 {
                    for j in (i + 1)..6 {
                        edges.push((base + i, base + j));
                    }
                }
                edges
            }
        }
    }
}

fn gen_motif_once(cfg: &MotifAnchorsConfig, effective_seed: u64) -> (Vec<(Graph, usize)>, Splits) {
    let mut rng = child_rng(effective_seed, "motif", 0);
    let (min, max) = cfg.base_size_range;
    let mut graphs = Vec::with_capacity(cfg.n_graphs);
    for _ in 0..cfg.n_graphs {
        let t = rng.gen_range(min..=max);
        let mut colors = sample_base_colors(t, &mut rng);
        let mut edges = barabasi_albert_edges(t, cfg.ba_attach, &mut rng);
        let blues = colors.iter().filter(|&&c| c == Color::Blue).count();
        let label = usize::from(blues > t - blues);

        let mut motifs = vec![Motif::Clique6];
        if label == 1 {
            // At least one of star/triangle, possibly both.
            let first = if rng.gen_bool(0.5) {
                Motif::Star4
            } else {
                Motif::Triangle
            };
            let other = match first {
                Motif::Star4 => Motif::Triangle,
                _ => Motif::Star4,
            };
            motifs.push(first);
            if rng.gen_bool(0.5) {
                motifs.push(other);
            }
        } else {
            if rng.gen_bool(0.5) {
                motifs.push(Motif::Star4);
            }
            if rng.gen_bool(0.5) {
                motifs.push(Motif::Triangle);
            }
        }

        for motif in motifs {
            let base = colors.len();
            colors.extend(std::iter::repeat(Color::Neutral).take(motif.node_count()));
            edges.extend(motif.edges_at(base));
            // One bridge keeps the motif an identifiable block while the
            // graph stays connected.
            let motif_node = base + rng.gen_range(0..motif.node_count());
            let base_node = rng.gen_range(0..t);
            edges.push((base_node, motif_node));
        }

        let g = Graph::new(colors, edges).expect("generator produces valid edges");
        debug_assert_eq!(label_motif_anchors(&g), label);
        graphs.push((g, label));
    }
    let splits = make_splits(cfg.n_graphs, cfg.split, &mut rng);
    (graphs, splits)
}

/// Generate a MotifAnchors dataset. Same determinism and balance contract as
/// [`gen_bacolorgv`].
pub fn gen_motif_anchors(cfg: &MotifAnchorsConfig) -> Result<Dataset, DatasetError> {
    cfg.validate()?;
    let mut chosen = None;
    for attempt in 0..BALANCE_RESEED_ATTEMPTS {
        let effective = cfg.seed.wrapping_add(attempt);
        let (graphs, splits) = gen_motif_once(cfg, effective);
        if splits_balanced(&graphs, &splits) {
            chosen = Some((graphs, splits, effective));
            break;
        }
    }
    let (graphs, splits, effective_seed) = match chosen {
        Some(found) => found,
        None => {
            let (graphs, splits) = gen_motif_once(cfg, cfg.seed);
            (graphs, splits, cfg.seed)
        }
    };
    Ok(Dataset {
        graphs,
        splits,
        provenance: Provenance {
            family: "motif".into(),
            config: serde_json::to_value(cfg).expect("config serialization"),
            requested_seed: cfg.seed,
            effective_seed,
        },
    })
}

/// Locate the anchor motifs of a graph: connected components of the
/// neutral-induced subgraph, classified against the three shapes.
///
/// Component-level matching disambiguates nested occurrences (every 6-clique
/// contains triangles as plain subgraphs); on generated data each neutral
/// block is exactly one placed motif. The (nodes, edges, degree multiset)
/// fingerprint is a complete isomorphism test for these three shapes.
pub fn find_anchor_motifs(g: &Graph) -> Vec<(Motif, SubgraphRef)> {
    let neutral: Vec<NodeId> = g.nodes_of_color(Color::Neutral).collect();
    let mut visited: BTreeSet<NodeId> = BTreeSet::new();
    let mut found = Vec::new();
    for &start in &neutral {
        if visited.contains(&start) {
            continue;
        }
        // BFS restricted to neutral nodes.
        let mut component = BTreeSet::new();
        let mut queue = vec![start];
        visited.insert(start);
        while let Some(u) = queue.pop() {
            component.insert(u);
            for &v in g.neighbors(u) {
                if g.color(v) == Color::Neutral && !visited.contains(&v) {
                    visited.insert(v);
                    queue.push(v);
                }
            }
        }
        let sub = crate::graph::node_induced_subgraph(g, &component)
            .expect("component nodes are valid");
        if let Some(motif) = classify_component(g, &sub) {
            found.push((motif, sub));
        }
    }
    found
}

fn classify_component(g: &Graph, sub: &SubgraphRef) -> Option<Motif> {
    let n = sub.node_count();
    let e = sub.edge_count();
    let mut degrees: Vec<usize> = sub
        .nodes()
        .iter()
        .map(|&u| {
            g.neighbors(u)
                .iter()
                .filter(|&&v| sub.contains_node(v) && sub.contains_edge(u, v))
                .count()
        })
        .collect();
    degrees.sort_unstable();
    match (n, e, degrees.as_slice()) {
        (3, 3, [2, 2, 2]) => Some(Motif::Triangle),
        (5, 4, [1, 1, 1, 1, 4]) => Some(Motif::Star4),
        (6, 15, _) => Some(Motif::Clique6),
        _ => None,
    }
}

/// Exact search for a 6-clique anywhere in the graph (ignoring colors).
/// Backtracking over neighbor intersections; used by generation invariants.
pub fn contains_clique6(g: &Graph) -> bool {
    fn extend(g: &Graph, clique: &mut Vec<NodeId>, candidates: &[NodeId]) -> bool {
        if clique.len() == 6 {
            return true;
        }
        for (i, &c) in candidates.iter().enumerate() {
            if clique.iter().all(|&u| g.has_edge(u, c)) {
                clique.push(c);
                let rest: Vec<NodeId> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&v| g.has_edge(c, v))
                    .collect();
                if extend(g, clique, &rest) {
                    return true;
                }
                clique.pop();
            }
        }
        false
    }
    let nodes: Vec<NodeId> = g.node_ids().filter(|&u| g.degree(u) >= 5).collect();
    for (i, &u) in nodes.iter().enumerate() {
        let candidates: Vec<NodeId> = nodes[i + 1..]
            .iter()
            .copied()
            .filter(|&v| g.has_edge(u, v))
            .collect();
        let mut clique = vec![u];
        if extend(g, &mut clique, &candidates) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_anchor_set, AnchorSet, Designator};

    #[test]
    fn label_counts_blue_excess() {
        let mut colors = vec![Color::Red; 3];
        colors.extend(vec![Color::Blue; 5]);
        let g = Graph::new(colors, []).unwrap();
        assert_eq!(label_bacolorgv(&g), 1);

        let g = Graph::new(vec![Color::Red, Color::Red, Color::Blue, Color::Blue], []).unwrap();
        assert_eq!(label_bacolorgv(&g), 0, "ties are negative");

        let g = Graph::new(vec![Color::Green, Color::Violet], []).unwrap();
        assert_eq!(label_bacolorgv(&g), 0);
    }

    #[test]
    fn default_config_split_sizes() {
        let cfg = BaColorGvConfig {
            n_graphs: 200,
            ..Default::default()
        };
        let ds = gen_bacolorgv(&cfg).unwrap();
        assert_eq!(ds.splits.train.len(), 160);
        assert_eq!(ds.splits.val.len(), 20);
        assert_eq!(ds.splits.test.len(), 20);
        let mut all: Vec<usize> = ds
            .splits
            .train
            .iter()
            .chain(&ds.splits.val)
            .chain(&ds.splits.test)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..200).collect::<Vec<_>>(), "splits partition indices");
    }

    #[test]
    fn anchors_always_present_and_isolated() {
        let cfg = BaColorGvConfig {
            n_graphs: 50,
            ..Default::default()
        };
        let ds = gen_bacolorgv(&cfg).unwrap();
        for (g, _) in &ds.graphs {
            let green = g.unique_node_of_color(Color::Green).expect("one green");
            let violet = g.unique_node_of_color(Color::Violet).expect("one violet");
            assert_eq!(g.degree(green), 0);
            assert_eq!(g.degree(violet), 0);
        }
        let anchors = AnchorSet::new(vec![
            (0, Designator::Color(Color::Green)),
            (1, Designator::Color(Color::Violet)),
        ]);
        let graphs: Vec<Graph> = ds.graphs.iter().map(|(g, _)| g.clone()).collect();
        assert!(validate_anchor_set(&graphs, &anchors).pass);
    }

    #[test]
    fn anchors_only_graph() {
        let cfg = BaColorGvConfig {
            n_graphs: 1,
            colored_range: (0, 0),
            ..Default::default()
        };
        let ds = gen_bacolorgv(&cfg).unwrap();
        let (g, label) = &ds.graphs[0];
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(*label, 0);
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = BaColorGvConfig {
            n_graphs: 40,
            ..Default::default()
        };
        let a = gen_bacolorgv(&cfg).unwrap();
        let b = gen_bacolorgv(&cfg).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());

        let other = gen_bacolorgv(&BaColorGvConfig {
            seed: 8,
            ..cfg.clone()
        })
        .unwrap();
        assert_ne!(a.to_jsonl(), other.to_jsonl());
    }

    #[test]
    fn config_validation() {
        let err = gen_bacolorgv(&BaColorGvConfig {
            colored_range: (5, 3),
            ..Default::default()
        })
        .unwrap_err();
        assert_eq!(err, DatasetError::EmptyRange { min: 5, max: 3 });

        let err = gen_bacolorgv(&BaColorGvConfig {
            colored_range: (1, 2),
            ..Default::default()
        })
        .unwrap_err();
        assert_eq!(err, DatasetError::RangeBelowViable { max: 2, m: 2 });

        let err = gen_bacolorgv(&BaColorGvConfig {
            split: [0.5, 0.2, 0.2],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, DatasetError::BadSplit(_)));
    }

    #[test]
    fn jsonl_round_trip() {
        let cfg = BaColorGvConfig {
            n_graphs: 12,
            ..Default::default()
        };
        let ds = gen_bacolorgv(&cfg).unwrap();
        let text = ds.to_jsonl();
        let back = Dataset::from_jsonl(&text).unwrap();
        assert_eq!(back, ds);
        assert_eq!(back.to_jsonl(), text);
    }

    #[test]
    fn ba_edges_connect_small_graphs() {
        let mut rng = child_rng(1, "test", 0);
        assert!(barabasi_albert_edges(0, 2, &mut rng).is_empty());
        assert!(barabasi_albert_edges(1, 2, &mut rng).is_empty());
        let e2 = barabasi_albert_edges(2, 2, &mut rng);
        assert_eq!(e2, vec![(0, 1)]);
        for t in [3usize, 10, 50] {
            let edges = barabasi_albert_edges(t, 2, &mut rng);
            assert_eq!(edges.len(), 1 + 2 * (t - 2), "m=2 edge count");
            let g = Graph::new(vec![Color::Red; t], edges).unwrap();
            assert!(g.node_ids().all(|u| g.degree(u) >= 1), "connected topology");
        }
    }

    #[test]
    fn motif_graphs_carry_required_motifs() {
        let cfg = MotifAnchorsConfig {
            n_graphs: 60,
            ..Default::default()
        };
        let ds = gen_motif_anchors(&cfg).unwrap();
        for (g, label) in &ds.graphs {
            let motifs = find_anchor_motifs(g);
            assert!(
                motifs.iter().any(|(m, _)| *m == Motif::Clique6),
                "every graph carries the clique"
            );
            assert!(contains_clique6(g), "exact search agrees");
            if *label == 1 {
                assert!(
                    motifs
                        .iter()
                        .any(|(m, _)| matches!(m, Motif::Star4 | Motif::Triangle)),
                    "positives carry a class-1 motif"
                );
            }
        }
    }

    #[test]
    fn motif_negatives_carry_decoys_half_the_time() {
        let cfg = MotifAnchorsConfig {
            n_graphs: 1000,
            ..Default::default()
        };
        let ds = gen_motif_anchors(&cfg).unwrap();
        let negatives: Vec<&Graph> = ds
            .graphs
            .iter()
            .filter(|(_, l)| *l == 0)
            .map(|(g, _)| g)
            .collect();
        assert!(negatives.len() > 200);
        let with_star = negatives
            .iter()
            .filter(|g| find_anchor_motifs(g).iter().any(|(m, _)| *m == Motif::Star4))
            .count() as f64
            / negatives.len() as f64;
        let with_triangle = negatives
            .iter()
            .filter(|g| {
                find_anchor_motifs(g)
                    .iter()
                    .any(|(m, _)| *m == Motif::Triangle)
            })
            .count() as f64
            / negatives.len() as f64;
        assert!((with_star - 0.5).abs() < 0.05, "star rate {with_star}");
        assert!(
            (with_triangle - 0.5).abs() < 0.05,
            "triangle rate {with_triangle}"
        );
    }

    // Independent oracle: brute-force isomorphism against the declared shape,
    // cross-checking the fingerprint classifier used by `find_anchor_motifs`.
    fn isomorphic_to_motif(g: &Graph, sub: &SubgraphRef, motif: Motif) -> bool {
        let (block, _) = sub.to_graph(g);
        if block.n() != motif.node_count() || block.edge_count() != motif.edge_count() {
            return false;
        }
        let pattern = Graph::new(
            vec![Color::Neutral; motif.node_count()],
            motif.edges_at(0),
        )
        .unwrap();
        let n = block.n();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = pattern
                .edges()
                .all(|(u, v)| block.has_edge(perm[u], perm[v]));
            if ok {
                return true;
            }
            // Next lexicographic permutation.
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return false;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn coverage_audit_satisfies_per_label_coverage() {
        let cfg = MotifAnchorsConfig {
            n_graphs: 80,
            ..Default::default()
        };
        let ds = gen_motif_anchors(&cfg).unwrap();
        for (g, label) in &ds.graphs {
            let motifs = find_anchor_motifs(g);
            for (motif, sub) in &motifs {
                assert!(
                    isomorphic_to_motif(g, sub, *motif),
                    "fingerprint classification confirmed by brute-force isomorphism"
                );
            }
            // Per-label coverage: some motif of the graph's own partition.
            assert!(
                motifs.iter().any(|(m, _)| m.partition_label() == *label),
                "coverage fails for label {label}"
            );
            // Disjointness: clique only ever serves partition 0 and
            // star/triangle partition 1 by definition of partition_label.
        }
    }
}
