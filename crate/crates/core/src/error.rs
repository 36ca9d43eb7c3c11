use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown builtin lattice `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("degenerate quadratic form")]
    Degenerate,
    #[error("odd dimension {0} for a quadratic space")]
    OddDimension(usize),
    #[error("dimension {dim} exceeds the limit {limit} for {what}")]
    TooLarge {
        what: &'static str,
        dim: usize,
        limit: usize,
    },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
