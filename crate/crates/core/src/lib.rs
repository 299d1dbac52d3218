//! Audit toolkit for self-explainable graph classifiers.
//!
//! The crate builds, attacks, and audits graph classifiers that emit their
//! own explanations. It provides:
//!
//! - [`graph`]: node-colored graphs, subgraph algebra, explanation selection,
//!   and anchor-set validation;
//! - [`datasets`]: deterministic generators for the BAColorGV and
//!   MotifAnchors benchmark families;
//! - [`models`]: analytic label-encoding and faithful constructions, the
//!   closed-form objective evaluators, and a small trainable message-passing
//!   pipeline with hand-derived gradients for the explanation attack;
//! - [`metrics`]: perturbation families, the faithfulness-metric suite
//!   including the uniform sufficiency test, and rejection-ratio reports;
//! - [`oracle`]: exact supergraph enumeration, the formal explanation
//!   taxonomy, and machine-checks of the sufficiency-test guarantees.

pub mod datasets;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod models;
pub mod oracle;
pub mod seeding;
