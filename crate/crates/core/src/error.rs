use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid character {found:?} at position {position}")]
    Parse { position: usize, found: char },
    #[error("Pauli word has no letters")]
    EmptyWord,
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("product of an empty list")]
    EmptyProduct,
    #[error("{n} qubits exceeds the dense cap of {cap}")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent eigenvalues: {0}")]
    Inconsistent(String),
    #[error("eigenspace is {dimension}-dimensional, state is not unique")]
    Underdetermined { dimension: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
