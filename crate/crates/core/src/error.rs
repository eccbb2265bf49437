use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("interval lower bound must not exceed upper bound")]
    InvalidInterval,
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("nodes must be distinct: {0} appears more than once")]
    DuplicateNodes(String),
    #[error("node {0} lies outside [-1, 1]")]
    NodeOutOfRange(String),
    #[error("at least 2 nodes are required, got {0}")]
    TooFewNodes(usize),
    #[error("interpolation matrix is numerically singular at {bits} bits: |det(A)| = {det} is below {threshold}")]
    SingularSystem {
        det: String,
        threshold: String,
        bits: u32,
    },
    #[error("radius must lie in (0, 1], got {0}")]
    InvalidRadius(String),
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
