//! A small trainable self-explainable pipeline with hand-derived gradients.
//!
//! One weighted message-passing layer per component, linear heads without
//! biases, sum readouts. The extractor reads one-hot colors and emits
//! per-node sigmoid scores; the classifier re-embeds the graph with every
//! feature scaled by its node's score and predicts from the score-weighted
//! sum of node embeddings. Training is full-batch gradient descent, which
//! keeps runs byte-deterministic for a given seed.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::graph::{Color, Explanation, Graph, RelevanceScores, SelectionMode};
use crate::models::eval::DesignatedExplanation;
use crate::models::{Prediction, SeGnn};
use crate::seeding::child_rng;

pub const INPUT_DIM: usize = Color::COUNT;
pub const N_CLASSES: usize = 2;

/// Graphs per work unit during the parallel gradient pass. Fixed so the
/// reduction order (and thus every bit of the result) does not depend on
/// the number of worker threads.
const GRAD_CHUNK: usize = 256;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `out += self * x`
    #[inline]
    fn matvec_acc(&self, x: &[f64], out: &mut [f64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (w, xv) in self.row(r).iter().zip(x) {
                acc += w * xv;
            }
            *o += acc;
        }
    }

    /// `out += self^T * x` (`x` has `rows` entries, `out` has `cols`).
    #[inline]
    fn matvec_t_acc(&self, x: &[f64], out: &mut [f64]) {
        for (r, &xv) in x.iter().enumerate() {
            for (o, &w) in out.iter_mut().zip(self.row(r)) {
                *o += w * xv;
            }
        }
    }

    /// `self += scale * (a outer b)`.
    #[inline]
    fn outer_acc(&mut self, scale: f64, a: &[f64], b: &[f64]) {
        for (r, &av) in a.iter().enumerate() {
            let row = &mut self.data[r * self.cols..(r + 1) * self.cols];
            let f = scale * av;
            for (w, &bv) in row.iter_mut().zip(b) {
                *w += f * bv;
            }
        }
    }

    fn axpy(&mut self, scale: f64, other: &Mat) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += scale * b;
        }
    }

    fn scale(&mut self, s: f64) {
        for a in &mut self.data {
            *a *= s;
        }
    }
}

/// All weights of the pipeline. No bias terms anywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainableParams {
    pub hidden: usize,
    /// Extractor message passing: self / neighbor-sum / global-sum maps.
    pub ex_self: Mat,
    pub ex_nbr: Mat,
    pub ex_read: Mat,
    /// Extractor score head (per-node sigmoid).
    pub ex_head: Vec<f64>,
    /// Classifier message passing over score-weighted features.
    pub cl_self: Mat,
    pub cl_nbr: Mat,
    pub cl_read: Mat,
    /// Classification head over the score-weighted sum readout.
    pub out: Mat,
}

impl TrainableParams {
    pub fn zeros(hidden: usize) -> Self {
        TrainableParams {
            hidden,
            ex_self: Mat::zeros(hidden, INPUT_DIM),
            ex_nbr: Mat::zeros(hidden, INPUT_DIM),
            ex_read: Mat::zeros(hidden, INPUT_DIM),
            ex_head: vec![0.0; hidden],
            cl_self: Mat::zeros(hidden, INPUT_DIM),
            cl_nbr: Mat::zeros(hidden, INPUT_DIM),
            cl_read: Mat::zeros(hidden, INPUT_DIM),
            out: Mat::zeros(N_CLASSES, hidden),
        }
    }

    /// Uniform init in `[-0.5, 0.5)` from the named child stream of `seed`.
    pub fn init(hidden: usize, seed: u64) -> Self {
        let mut rng = child_rng(seed, "init", 0);
        let mut params = TrainableParams::zeros(hidden);
        for slot in params.flat_slots() {
            *slot = rng.gen_range(-0.5..0.5);
        }
        params
    }

    fn flat_slots(&mut self) -> Vec<&mut f64> {
        let TrainableParams {
            hidden: _,
            ex_self,
            ex_nbr,
            ex_read,
            ex_head,
            cl_self,
            cl_nbr,
            cl_read,
            out,
        } = self;
        ex_self
            .data
            .iter_mut()
            .chain(ex_nbr.data.iter_mut())
            .chain(ex_read.data.iter_mut())
            .chain(ex_head.iter_mut())
            .chain(cl_self.data.iter_mut())
            .chain(cl_nbr.data.iter_mut())
            .chain(cl_read.data.iter_mut())
            .chain(out.data.iter_mut())
            .collect()
    }

    pub fn param_count(&self) -> usize {
        6 * self.hidden * INPUT_DIM + self.hidden + N_CLASSES * self.hidden
    }

    pub fn get_flat(&mut self, i: usize) -> f64 {
        *self.flat_slots()[i]
    }

    pub fn set_flat(&mut self, i: usize, v: f64) {
        *self.flat_slots()[i] = v;
    }

    fn axpy(&mut self, scale: f64, other: &TrainableParams) {
        self.ex_self.axpy(scale, &other.ex_self);
        self.ex_nbr.axpy(scale, &other.ex_nbr);
        self.ex_read.axpy(scale, &other.ex_read);
        for (a, b) in self.ex_head.iter_mut().zip(&other.ex_head) {
            *a += scale * b;
        }
        self.cl_self.axpy(scale, &other.cl_self);
        self.cl_nbr.axpy(scale, &other.cl_nbr);
        self.cl_read.axpy(scale, &other.cl_read);
        self.out.axpy(scale, &other.out);
    }

    fn scale(&mut self, s: f64) {
        self.ex_self.scale(s);
        self.ex_nbr.scale(s);
        self.ex_read.scale(s);
        for a in &mut self.ex_head {
            *a *= s;
        }
        self.cl_self.scale(s);
        self.cl_nbr.scale(s);
        self.cl_read.scale(s);
        self.out.scale(s);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHp {
    pub hidden: usize,
    pub lr: f64,
    pub max_epochs: usize,
    /// Positive-node reweighting of the explanation supervision.
    pub pos_weight: f64,
    /// Sparsity coefficient of the natural objective.
    pub lambda1: f64,
    /// Entropy coefficient of the natural objective.
    pub lambda2: f64,
    /// Stop once train accuracy reaches this...
    pub stop_acc: f64,
    /// ...and the classification loss drops below this.
    pub stop_clf_loss: f64,
}

impl Default for TrainHp {
    fn default() -> Self {
        TrainHp {
            hidden: 8,
            lr: 0.05,
            max_epochs: 2000,
            pos_weight: 10.0,
            lambda1: 0.4,
            lambda2: 1.0,
            stop_acc: 0.99,
            stop_clf_loss: 0.01,
        }
    }
}

/// Static per-graph quantities shared by every epoch.
struct GraphCache {
    n: usize,
    label: usize,
    color_idx: Vec<usize>,
    nbr_counts: Vec<[f64; INPUT_DIM]>,
    tot_counts: [f64; INPUT_DIM],
    edges: Vec<(usize, usize)>,
    /// Designated per-node targets, for the attack objective.
    targets: Vec<bool>,
}

impl GraphCache {
    fn build(g: &Graph, label: usize, designated: Option<&DesignatedExplanation>) -> Self {
        let n = g.n();
        let color_idx: Vec<usize> = g.colors().iter().map(|c| c.index()).collect();
        let mut nbr_counts = vec![[0.0; INPUT_DIM]; n];
        let mut tot_counts = [0.0; INPUT_DIM];
        for u in 0..n {
            tot_counts[color_idx[u]] += 1.0;
        }
        let edges: Vec<(usize, usize)> = g.edges().collect();
        for &(u, v) in &edges {
            nbr_counts[u][color_idx[v]] += 1.0;
            nbr_counts[v][color_idx[u]] += 1.0;
        }
        let targets = designated
            .map(|d| d.node_targets(g, label))
            .unwrap_or_else(|| vec![false; n]);
        GraphCache {
            n,
            label,
            color_idx,
            nbr_counts,
            tot_counts,
            edges,
            targets,
        }
    }
}

#[inline]
fn sigmoid(s: f64) -> f64 {
    1.0 / (1.0 + (-s).exp())
}

#[inline]
fn softplus(s: f64) -> f64 {
    s.max(0.0) + (-s.abs()).exp().ln_1p()
}

struct Forward {
    /// Extractor pre-activations, activations, logits, scores (per node).
    a: Vec<f64>,
    e: Vec<f64>,
    s: Vec<f64>,
    p: Vec<f64>,
    /// Classifier-side sums and layer values.
    nbr_p: Vec<[f64; INPUT_DIM]>,
    read_p: [f64; INPUT_DIM],
    b: Vec<f64>,
    z: Vec<f64>,
    h: Vec<f64>,
    probs: [f64; N_CLASSES],
}

fn forward(params: &TrainableParams, cache: &GraphCache) -> Forward {
    let d = params.hidden;
    let n = cache.n;
    let mut a = vec![0.0; n * d];
    let mut e = vec![0.0; n * d];
    let mut s = vec![0.0; n];
    let mut p = vec![0.0; n];

    let mut read_term = vec![0.0; d];
    params.ex_read.matvec_acc(&cache.tot_counts, &mut read_term);
    for u in 0..n {
        {
            let au = &mut a[u * d..(u + 1) * d];
            au.copy_from_slice(&read_term);
            for (r, av) in au.iter_mut().enumerate() {
                *av += params.ex_self.get(r, cache.color_idx[u]);
            }
            params.ex_nbr.matvec_acc(&cache.nbr_counts[u], au);
        }
        let mut su = 0.0;
        for r in 0..d {
            let ev = a[u * d + r].max(0.0);
            e[u * d + r] = ev;
            su += params.ex_head[r] * ev;
        }
        s[u] = su;
        p[u] = sigmoid(su);
    }

    let mut nbr_p = vec![[0.0; INPUT_DIM]; n];
    for &(u, v) in &cache.edges {
        nbr_p[u][cache.color_idx[v]] += p[v];
        nbr_p[v][cache.color_idx[u]] += p[u];
    }
    let mut read_p = [0.0; INPUT_DIM];
    for u in 0..n {
        read_p[cache.color_idx[u]] += p[u];
    }

    let mut b = vec![0.0; n * d];
    let mut z = vec![0.0; n * d];
    let mut h = vec![0.0; d];
    let mut read_p_term = vec![0.0; d];
    params.cl_read.matvec_acc(&read_p, &mut read_p_term);
    for u in 0..n {
        {
            let bu = &mut b[u * d..(u + 1) * d];
            bu.copy_from_slice(&read_p_term);
            for (r, bv) in bu.iter_mut().enumerate() {
                *bv += params.cl_self.get(r, cache.color_idx[u]) * p[u];
            }
            params.cl_nbr.matvec_acc(&nbr_p[u], bu);
        }
        for r in 0..d {
            let zv = b[u * d + r].max(0.0);
            z[u * d + r] = zv;
            h[r] += p[u] * zv;
        }
    }

    let mut logits = [0.0; N_CLASSES];
    for (k, logit) in logits.iter_mut().enumerate() {
        *logit = params.out.row(k).iter().zip(&h).map(|(w, hv)| w * hv).sum();
    }
    let m = logits[0].max(logits[1]);
    let exp0 = (logits[0] - m).exp();
    let exp1 = (logits[1] - m).exp();
    let zsum = exp0 + exp1;
    Forward {
        a,
        e,
        s,
        p,
        nbr_p,
        read_p,
        b,
        z,
        h,
        probs: [exp0 / zsum, exp1 / zsum],
    }
}

/// Training objective: explanation-supervised attack or the natural
/// sparsity/entropy objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    Attack { pos_weight: f64 },
    Natural { lambda1: f64, lambda2: f64 },
}

#[derive(Debug, Clone, Copy, Default)]
struct BatchStats {
    loss: f64,
    clf_loss: f64,
    correct: usize,
}

/// Loss and gradient contribution of one graph (unscaled; the caller
/// averages over the batch).
fn backward(
    params: &TrainableParams,
    cache: &GraphCache,
    objective: Objective,
    grads: &mut TrainableParams,
) -> BatchStats {
    let d = params.hidden;
    let n = cache.n;
    let fwd = forward(params, cache);
    let nf = n as f64;

    let clf_loss = -fwd.probs[cache.label].ln();
    let mut loss = clf_loss;
    let predicted = usize::from(fwd.probs[1] > fwd.probs[0]);
    let correct = usize::from(predicted == cache.label);

    // Softmax + cross-entropy.
    let mut dlogits = [fwd.probs[0], fwd.probs[1]];
    dlogits[cache.label] -= 1.0;

    grads.out.outer_acc(1.0, &dlogits, &fwd.h);
    let mut dh = vec![0.0; d];
    params.out.matvec_t_acc(&dlogits, &mut dh);

    let mut dp = vec![0.0; n];
    let mut db_all = vec![0.0; n * d];
    let mut db_sum = vec![0.0; d];
    for u in 0..n {
        let mut z_dot_dh = 0.0;
        let mut self_dot = 0.0;
        for r in 0..d {
            z_dot_dh += fwd.z[u * d + r] * dh[r];
            if fwd.b[u * d + r] > 0.0 {
                let dbv = fwd.p[u] * dh[r];
                db_all[u * d + r] = dbv;
                db_sum[r] += dbv;
                self_dot += params.cl_self.get(r, cache.color_idx[u]) * dbv;
                grads.cl_self.data[r * INPUT_DIM + cache.color_idx[u]] += dbv * fwd.p[u];
            }
        }
        dp[u] += z_dot_dh + self_dot;
        grads
            .cl_nbr
            .outer_acc(1.0, &db_all[u * d..(u + 1) * d], &fwd.nbr_p[u]);
    }
    grads.cl_read.outer_acc(1.0, &db_sum, &fwd.read_p);

    // Score gradients flowing back through the neighbor and readout sums.
    let mut q_all = vec![[0.0; INPUT_DIM]; n];
    for u in 0..n {
        params
            .cl_nbr
            .matvec_t_acc(&db_all[u * d..(u + 1) * d], &mut q_all[u]);
    }
    for &(u, v) in &cache.edges {
        dp[v] += q_all[u][cache.color_idx[v]];
        dp[u] += q_all[v][cache.color_idx[u]];
    }
    let mut r5 = [0.0; INPUT_DIM];
    params.cl_read.matvec_t_acc(&db_sum, &mut r5);
    for u in 0..n {
        dp[u] += r5[cache.color_idx[u]];
    }

    // Objective terms acting directly on the scores.
    let mut ds = vec![0.0; n];
    match objective {
        Objective::Attack { pos_weight } => {
            for u in 0..n {
                let t = if cache.targets[u] { 1.0 } else { 0.0 };
                let w = if cache.targets[u] { pos_weight } else { 1.0 };
                let su = fwd.s[u];
                loss += w * (t * softplus(-su) + (1.0 - t) * softplus(su)) / nf;
                ds[u] += w * (fwd.p[u] - t) / nf;
            }
        }
        Objective::Natural { lambda1, lambda2 } => {
            for u in 0..n {
                let pu = fwd.p[u];
                let su = fwd.s[u];
                // H(p) = softplus(s) - s*sigma(s); stable at p -> {0,1}.
                let entropy = softplus(su) - su * pu;
                loss += (lambda1 * pu + lambda2 * entropy) / nf;
                let sig_prime = pu * (1.0 - pu);
                ds[u] += (lambda1 - lambda2 * su) * sig_prime / nf;
            }
        }
    }

    // Extractor backward.
    let mut da = vec![0.0; d];
    let mut da_sum = vec![0.0; d];
    for u in 0..n {
        let sig_prime = fwd.p[u] * (1.0 - fwd.p[u]);
        let dsu = ds[u] + dp[u] * sig_prime;
        for r in 0..d {
            grads.ex_head[r] += dsu * fwd.e[u * d + r];
            da[r] = if fwd.a[u * d + r] > 0.0 {
                let v = dsu * params.ex_head[r];
                da_sum[r] += v;
                v
            } else {
                0.0
            };
            grads.ex_self.data[r * INPUT_DIM + cache.color_idx[u]] += da[r];
        }
        grads.ex_nbr.outer_acc(1.0, &da, &cache.nbr_counts[u]);
    }
    grads.ex_read.outer_acc(1.0, &da_sum, &cache.tot_counts);

    BatchStats {
        loss,
        clf_loss,
        correct,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStats {
    pub loss: f64,
    pub clf_loss: f64,
    pub train_acc: f64,
}

/// Mean loss, mean classification loss, accuracy, and mean gradients over
/// the batch. Work fans out over fixed-size chunks and merges in chunk
/// order, so results do not depend on thread count.
fn loss_and_grads(
    params: &TrainableParams,
    caches: &[GraphCache],
    objective: Objective,
) -> (EpochStats, TrainableParams) {
    let parts: Vec<(BatchStats, TrainableParams)> = caches
        .par_chunks(GRAD_CHUNK)
        .map(|chunk| {
            let mut grads = TrainableParams::zeros(params.hidden);
            let mut stats = BatchStats::default();
            for cache in chunk {
                let s = backward(params, cache, objective, &mut grads);
                stats.loss += s.loss;
                stats.clf_loss += s.clf_loss;
                stats.correct += s.correct;
            }
            (stats, grads)
        })
        .collect();

    let mut grads = TrainableParams::zeros(params.hidden);
    let mut total = BatchStats::default();
    for (stats, part) in &parts {
        total.loss += stats.loss;
        total.clf_loss += stats.clf_loss;
        total.correct += stats.correct;
        grads.axpy(1.0, part);
    }
    let nf = caches.len() as f64;
    grads.scale(1.0 / nf);
    (
        EpochStats {
            loss: total.loss / nf,
            clf_loss: total.clf_loss / nf,
            train_acc: total.correct as f64 / nf,
        },
        grads,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainStats {
    pub epochs_run: usize,
    pub final_loss: f64,
    pub final_clf_loss: f64,
    pub final_train_acc: f64,
}

pub struct TrainOutcome {
    pub params: TrainableParams,
    pub stats: TrainStats,
}

fn train(
    mut params: TrainableParams,
    caches: &[GraphCache],
    objective: Objective,
    hp: &TrainHp,
) -> Result<TrainOutcome, ModelError> {
    let mut last = EpochStats {
        loss: f64::NAN,
        clf_loss: f64::NAN,
        train_acc: 0.0,
    };
    let mut epochs_run = 0;
    for epoch in 0..hp.max_epochs {
        let (stats, grads) = loss_and_grads(&params, caches, objective);
        if !stats.loss.is_finite() {
            return Err(ModelError::Diverged(epoch));
        }
        last = stats;
        epochs_run = epoch + 1;
        if stats.train_acc >= hp.stop_acc && stats.clf_loss <= hp.stop_clf_loss {
            break;
        }
        params.axpy(-hp.lr, &grads);
    }
    Ok(TrainOutcome {
        params,
        stats: TrainStats {
            epochs_run,
            final_loss: last.loss,
            final_clf_loss: last.clf_loss,
            final_train_acc: last.train_acc,
        },
    })
}

/// Attack training: classification loss plus explanation supervision pushing
/// scores toward the designated per-node targets (positives reweighted).
/// Other regularizers stay off. Stops at the accuracy/loss thresholds or the
/// epoch cap.
pub fn train_attack(
    params: TrainableParams,
    graphs: &[(&Graph, usize)],
    designated: &DesignatedExplanation,
    hp: &TrainHp,
) -> Result<TrainOutcome, ModelError> {
    let caches: Vec<GraphCache> = graphs
        .iter()
        .map(|(g, label)| GraphCache::build(g, *label, Some(designated)))
        .collect();
    train(
        params,
        &caches,
        Objective::Attack {
            pos_weight: hp.pos_weight,
        },
        hp,
    )
}

/// Natural training: classification loss plus sparsity and entropy pressure
/// on the scores. Same optimizer contract as [`train_attack`].
pub fn train_natural_smgnn(
    params: TrainableParams,
    graphs: &[(&Graph, usize)],
    hp: &TrainHp,
) -> Result<TrainOutcome, ModelError> {
    let caches: Vec<GraphCache> = graphs
        .iter()
        .map(|(g, label)| GraphCache::build(g, *label, None))
        .collect();
    train(
        params,
        &caches,
        Objective::Natural {
            lambda1: hp.lambda1,
            lambda2: hp.lambda2,
        },
        hp,
    )
}

/// Scalar batch loss, for finite-difference oracles.
pub fn loss_only(
    params: &TrainableParams,
    graphs: &[(&Graph, usize)],
    designated: Option<&DesignatedExplanation>,
    objective: Objective,
) -> f64 {
    let caches: Vec<GraphCache> = graphs
        .iter()
        .map(|(g, label)| GraphCache::build(g, *label, designated))
        .collect();
    loss_and_grads(params, &caches, objective).0.loss
}

/// Analytic batch gradients, for finite-difference oracles.
pub fn grads_only(
    params: &TrainableParams,
    graphs: &[(&Graph, usize)],
    designated: Option<&DesignatedExplanation>,
    objective: Objective,
) -> TrainableParams {
    let caches: Vec<GraphCache> = graphs
        .iter()
        .map(|(g, label)| GraphCache::build(g, *label, designated))
        .collect();
    loss_and_grads(params, &caches, objective).1
}

/// The trained pipeline as a model: sigmoid scores from the extractor
/// layer, classification from the score-weighted readout, threshold-0.5
/// selection with the min-max rescue for collapsed scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainableModel {
    pub params: TrainableParams,
}

impl TrainableModel {
    pub fn new(params: TrainableParams) -> Self {
        TrainableModel { params }
    }
}

impl SeGnn for TrainableModel {
    fn name(&self) -> &str {
        "trainable"
    }

    fn extract(&self, g: &Graph) -> RelevanceScores {
        let cache = GraphCache::build(g, 0, None);
        let fwd = forward(&self.params, &cache);
        RelevanceScores::new(fwd.p, g).expect("sigmoid scores are in [0,1]")
    }

    fn classify(&self, g: &Graph, scores: &RelevanceScores, _expl: &Explanation) -> Prediction {
        // The classifier consumes the score-weighted graph: re-run its half
        // of the forward pass with the scores it was handed.
        let d = self.params.hidden;
        let cache = GraphCache::build(g, 0, None);
        let n = cache.n;
        let p = scores.values();

        let mut nbr_p = vec![[0.0; INPUT_DIM]; n];
        for &(u, v) in &cache.edges {
            nbr_p[u][cache.color_idx[v]] += p[v];
            nbr_p[v][cache.color_idx[u]] += p[u];
        }
        let mut read_p = [0.0; INPUT_DIM];
        for u in 0..n {
            read_p[cache.color_idx[u]] += p[u];
        }
        let mut read_p_term = vec![0.0; d];
        self.params.cl_read.matvec_acc(&read_p, &mut read_p_term);
        let mut h = vec![0.0; d];
        let mut b = vec![0.0; d];
        for u in 0..n {
            b.copy_from_slice(&read_p_term);
            for (r, bv) in b.iter_mut().enumerate() {
                *bv += self.params.cl_self.get(r, cache.color_idx[u]) * p[u];
            }
            self.params.cl_nbr.matvec_acc(&nbr_p[u], &mut b);
            for (hv, &bv) in h.iter_mut().zip(&b) {
                *hv += p[u] * bv.max(0.0);
            }
        }
        let mut logits = [0.0; N_CLASSES];
        for (k, logit) in logits.iter_mut().enumerate() {
            *logit = self
                .params
                .out
                .row(k)
                .iter()
                .zip(&h)
                .map(|(w, hv)| w * hv)
                .sum();
        }
        let m = logits[0].max(logits[1]);
        let exp0 = (logits[0] - m).exp();
        let exp1 = (logits[1] - m).exp();
        Prediction::binary(exp0 / (exp0 + exp1))
    }

    fn selection(&self) -> SelectionMode {
        SelectionMode::Threshold(0.5)
    }

    fn rescue(&self) -> bool {
        true
    }
}

/// Saved model: weights, hyperparameters, and the training seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelCheckpoint {
    pub kind: String,
    pub seed: u64,
    pub hp: TrainHp,
    pub params: TrainableParams,
}

impl ModelCheckpoint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
