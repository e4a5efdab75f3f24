use thiserror::Error;

/// Errors produced by every module of the crate.
///
/// Vertex ids in messages are 1-based, matching the instance file format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("vertex {0} is isolated and not in C")]
    IsolatedOutsideC(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis {name} violated: {detail}")]
    Hypothesis { name: &'static str, detail: String },

    #[error("illegal sequence: {0}")]
    IllegalSequence(String),

    #[error("infeasible point: {0}")]
    InfeasiblePoint(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("search budget of {0} states exhausted")]
    BudgetExhausted(u64),

    #[error("generator gave up after {0} attempts")]
    GeneratorExhausted(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("empty point cloud")]
    EmptyCloud,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn hypothesis(name: &'static str, detail: impl Into<String>) -> Error {
    Error::Hypothesis {
        name,
        detail: detail.into(),
    }
}
