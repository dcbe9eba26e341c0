use thiserror::Error;

/// Failures while reading a Gset edge list. Every variant carries the
/// 1-based line number of the offending line.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: missing \"n m\" header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed line {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: weight must be finite and nonzero")]
    InvalidWeight { line: usize },
    #[error("line {line}: header declares {expected} edges, found {found}")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("no simple {d}-regular graph on {n} vertices")]
    Infeasible { n: usize, d: usize },
    #[error("regular graph generation gave up after {attempts} attempts")]
    RetryLimit { attempts: usize },
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("lambda = {0} is outside [0, 1]")]
    InvalidLambda(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("best-known value must be positive, got {0}")]
    NonPositiveBestKnown(f64),
    #[error("instance too large: n = {n} exceeds {max}")]
    TooLarge { n: usize, max: usize },
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset data: {0}")]
    PresetData(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
