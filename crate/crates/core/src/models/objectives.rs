//! Closed-form training-objective evaluators for hard-score models.
//!
//! These evaluate the information-bottleneck style objective (uninformative
//! prior `r`) and the sparsity/entropy objective analytically on models whose
//! extractors emit saturated scores, so optimal-risk claims can be checked
//! exactly against direct summation.

use crate::error::ModelError;
use crate::graph::Graph;
use crate::models::SeGnn;

const HARD_TOL: f64 = 1e-12;

/// `x * ln(x / y)` with the `0 * ln 0 -> 0` convention.
fn xlogx_over(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

fn cross_entropy(model: &dyn SeGnn, g: &Graph, label: usize) -> f64 {
    let p = model.predict(g).prediction.probs()[label];
    -p.ln()
}

/// Mean objective `CE + lambda1 * sum_u [p ln(p/r) + (1-p) ln((1-p)/(1-r))]`
/// over the given graphs, for a model with hard scores.
///
/// Raw scores of 0 are read as the uninformative prior `r` (the hard
/// extractor's baseline value); scores must otherwise be exactly `r` or 1.
/// Every graph must select at least one node.
pub fn gsat_objective_value(
    model: &dyn SeGnn,
    graphs: &[(&Graph, usize)],
    r: f64,
    lambda1: f64,
) -> Result<f64, ModelError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(ModelError::InvalidPrior(r));
    }
    let mut total = 0.0;
    for (gi, (g, label)) in graphs.iter().enumerate() {
        let scores = model.extract(g);
        let mut selected = 0usize;
        let mut penalty = 0.0;
        for &raw in scores.values() {
            let p = if raw.abs() < HARD_TOL { r } else { raw };
            if (p - 1.0).abs() < HARD_TOL {
                selected += 1;
            } else if (p - r).abs() > HARD_TOL {
                return Err(ModelError::NotHardScores {
                    graph: gi,
                    score: raw,
                });
            }
            penalty += xlogx_over(p, r) + xlogx_over(1.0 - p, 1.0 - r);
        }
        if selected == 0 {
            return Err(ModelError::EmptyExplanation(gi));
        }
        total += cross_entropy(model, g, *label) + lambda1 * penalty;
    }
    Ok(total / graphs.len() as f64)
}

/// Closed-form optimum of the prior objective for the single-anchor
/// label-encoding construction: `-lambda1 * ln r`, independent of the graph.
pub fn gsat_degenerate_closed_form(r: f64, lambda1: f64) -> f64 {
    -lambda1 * r.ln()
}

/// Mean objective
/// `CE + (lambda1/|V|) sum_u p + (lambda2/|V|) sum_u [p ln p + (1-p) ln(1-p)]`
/// over the given graphs, for a model with binary scores. The last term is
/// identically zero on binary scores; it is still computed literally.
pub fn smgnn_objective_value(
    model: &dyn SeGnn,
    graphs: &[(&Graph, usize)],
    lambda1: f64,
    lambda2: f64,
) -> Result<f64, ModelError> {
    let mut total = 0.0;
    for (gi, (g, label)) in graphs.iter().enumerate() {
        let scores = model.extract(g);
        let n = g.n() as f64;
        let mut mass = 0.0;
        let mut entropy_term = 0.0;
        for &p in scores.values() {
            if p.abs() > HARD_TOL && (p - 1.0).abs() > HARD_TOL {
                return Err(ModelError::NotHardScores {
                    graph: gi,
                    score: p,
                });
            }
            mass += p;
            entropy_term += xlogx_over(p, 1.0) + xlogx_over(1.0 - p, 1.0);
        }
        total += cross_entropy(model, g, *label)
            + lambda1 * mass / n
            + lambda2 * entropy_term / n;
    }
    Ok(total / graphs.len() as f64)
}

/// Closed-form optimum of the sparsity objective for the single-anchor
/// construction: mean of `lambda1 / |V|` over the graphs.
pub fn smgnn_degenerate_closed_form(graphs: &[(&Graph, usize)], lambda1: f64) -> f64 {
    let sum: f64 = graphs.iter().map(|(g, _)| lambda1 / g.n() as f64).sum();
    sum / graphs.len() as f64
}

/// Per-graph sparsity objective value, for the per-instance preference
/// comparisons. Same contract as [`smgnn_objective_value`] on one graph.
pub fn smgnn_objective_per_graph(
    model: &dyn SeGnn,
    g: &Graph,
    label: usize,
    lambda1: f64,
    lambda2: f64,
) -> Result<f64, ModelError> {
    smgnn_objective_value(model, &[(g, label)], lambda1, lambda2)
}
