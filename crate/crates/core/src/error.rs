use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("index ({0}, {1}) out of range for n = {2}")]
    OutOfRange(usize, usize, usize),
    #[error("{v} is not below {w} in Bruhat order")]
    NotLeq { v: String, w: String },
    #[error("Y_{0} is not toric")]
    NotToric(String),
    #[error("position {0} out of range 1..{1}")]
    BadPosition(usize, usize),
    #[error("submatrix of size {0} exceeds the expansion limit {1}; use the rank conditions unexpanded")]
    SizeLimit(usize, usize),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("unexpected zeros present: {0:?}")]
    UnexpectedZeros(Vec<(usize, usize)>),
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("unknown theorem id {0}")]
    UnknownTheorem(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
