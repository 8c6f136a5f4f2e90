use thiserror::Error;

/// Errors produced by graph construction, measures, and the evaluation harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A node index fell outside `0..n`.
    #[error("node index {index} out of range for graph with {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    /// A label passed on the command line or in a seed list is not in the graph.
    #[error("unknown node label: {0}")]
    UnknownLabel(String),

    /// Operation is only defined on connected graphs.
    #[error("graph is disconnected: {op} requires a connected graph \
             (consider --largest-component)")]
    Disconnected { op: &'static str },

    #[error("empty graph")]
    EmptyGraph,

    /// Power iteration hit the iteration cap before meeting the tolerance.
    #[error("eigenvector iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// A log-log regression was attempted on fewer than two distinct x values.
    #[error("degenerate fit: need at least two distinct x values, got {distinct}")]
    DegenerateFit { distinct: usize },

    /// The pointwise dimension estimator divides by 1 + ln p, which vanishes
    /// when the covered fraction p equals 1/e.
    #[error("estimator singular at p=1/e")]
    SingularEstimator,

    #[error("unknown measure: {0}")]
    UnknownMeasure(String),

    #[error("empty seed set")]
    EmptySeedSet,

    #[error("infection rate must lie in [0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
