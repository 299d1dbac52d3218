//! Self-explainable graph classifiers.
//!
//! A model is an extractor/classifier pair `f = g . e`: the extractor maps a
//! graph to per-node relevance scores, a fixed selection rule turns scores
//! into a discrete explanation, and the classifier predicts from the
//! explanation (analytic models) or from the score-weighted graph (the
//! trainable pipeline). The module hosts the analytic constructions used as
//! audit controls, the closed-form objective evaluators, and the trainable
//! message-passing pipeline with hand-derived gradients.

pub mod eval;
pub mod objectives;
pub mod trainable;
pub mod zoo;

use crate::error::ModelError;
use crate::graph::{select_explanation, Explanation, Graph, RelevanceScores, SelectionMode};

/// A probability distribution over class labels plus its argmax.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    probs: Vec<f64>,
}

impl Prediction {
    pub fn new(probs: Vec<f64>) -> Result<Self, ModelError> {
        let sum: f64 = probs.iter().sum();
        if probs.is_empty()
            || (sum - 1.0).abs() > 1e-9
            || probs.iter().any(|&p| !(0.0..=1.0 + 1e-12).contains(&p))
        {
            return Err(ModelError::NonFinite);
        }
        Ok(Prediction { probs })
    }

    /// Binary prediction from the probability of class 0.
    pub fn binary(p0: f64) -> Self {
        Prediction {
            probs: vec![p0, 1.0 - p0],
        }
    }

    pub fn uniform(k: usize) -> Self {
        Prediction {
            probs: vec![1.0 / k as f64; k],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn arity(&self) -> usize {
        self.probs.len()
    }

    /// Argmax label, ties resolved to the lower index.
    pub fn label(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Everything a model produces for one input graph.
#[derive(Debug, Clone)]
pub struct ModelOutput {
    pub scores: RelevanceScores,
    pub explanation: Explanation,
    pub prediction: Prediction,
}

/// The self-explainable classifier interface: `predict` is definitionally
/// the classifier applied to the selected explanation of the extractor's
/// scores, with no hidden state.
pub trait SeGnn: Sync {
    fn name(&self) -> &str;

    /// Per-node relevance scores on `g`.
    fn extract(&self, g: &Graph) -> RelevanceScores;

    /// Prediction from the graph, its scores, and the selected explanation.
    fn classify(&self, g: &Graph, scores: &RelevanceScores, expl: &Explanation) -> Prediction;

    fn selection(&self) -> SelectionMode {
        SelectionMode::Threshold(0.5)
    }

    /// Whether empty threshold selections get the min-max rescue.
    fn rescue(&self) -> bool {
        false
    }

    fn predict(&self, g: &Graph) -> ModelOutput {
        let scores = self.extract(g);
        let explanation = select_explanation(&scores, self.selection(), g, self.rescue())
            .expect("extractor scores are defined on g");
        let prediction = self.classify(g, &scores, &explanation);
        ModelOutput {
            scores,
            explanation,
            prediction,
        }
    }
}
