use thiserror::Error;

/// Errors raised by graph construction and subgraph algebra.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("node {node} is out of range for a graph with {n} nodes")]
    UnknownNode { node: usize, n: usize },
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not part of the subgraph")]
    EdgeNotInSubgraph(usize, usize),
    #[error("edge ({0}, {1}) is not an edge of the parent graph")]
    EdgeNotInParent(usize, usize),
    #[error("relevance score {value} for node {node} lies outside [0, 1]")]
    ScoreOutOfRange { node: usize, value: f64 },
    #[error("scores cover {got} nodes but the graph has {expected}")]
    ScoreDomainMismatch { got: usize, expected: usize },
    #[error("top-k ratio {0} lies outside (0, 1]")]
    InvalidTopKRatio(f64),
    #[error("unknown color name {0:?}")]
    UnknownColor(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Errors raised by dataset generation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DatasetError {
    #[error("colored range [{min}, {max}] is empty")]
    EmptyRange { min: usize, max: usize },
    #[error("colored range max {max} cannot support Barabási–Albert attachment m={m}")]
    RangeBelowViable { max: usize, m: usize },
    #[error("attachment parameter m must be at least 1")]
    ZeroAttachment,
    #[error("split ratios {0:?} do not sum to 1")]
    BadSplit([f64; 3]),
    #[error("base size range [{min}, {max}] must satisfy 1 <= min <= max")]
    BadBaseRange { min: usize, max: usize },
    #[error("no seed in {tried} attempts yields both classes in every split")]
    SeedSearchExhausted { tried: u64 },
    #[error("dataset file is malformed: {0}")]
    Format(String),
}

/// Errors raised by model evaluation and training.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("prior r={0} lies outside (0, 1)")]
    InvalidPrior(f64),
    #[error("graph {graph} has relevance score {score} incompatible with a hard extractor")]
    NotHardScores { graph: usize, score: f64 },
    #[error("graph {0} has an empty explanation, violating |R| > 0")]
    EmptyExplanation(usize),
    #[error("training diverged (non-finite loss) at epoch {0}")]
    Diverged(usize),
    #[error("non-finite activation encountered")]
    NonFinite,
    #[error("designated explanation does not match the dataset anchors: {0}")]
    BadDesignated(String),
}

/// Errors raised by metric evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("predictions have different arity: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("unknown metric name {0:?}")]
    UnknownMetric(String),
    #[error("no perturbation applicable: {0}")]
    NotApplicable(String),
    #[error("complement-swap donor pool is empty")]
    EmptyDonorPool,
    #[error("empty split")]
    EmptySplit,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors raised by the exact enumeration oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("enumeration needs {required} free elements, above the cap of {cap}")]
    CapExceeded { required: usize, cap: usize },
    #[error("explanation is empty; the taxonomy assumes |R| > 0")]
    EmptyExplanation,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
