use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order exceeds cap: reached {reached} elements, cap is {cap}")]
    OrderCapExceeded { reached: usize, cap: usize },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("action is not a homomorphism into the automorphism group: {0}")]
    InvalidAction(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not contained in the ambient subgroup")]
    NotContained,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid sigma spec {spec:?}: {message}")]
    SigmaSpec { spec: String, message: String },

    #[error("unknown group builder {0:?}")]
    UnknownBuilder(String),
}

pub type Result<T> = std::result::Result<T, Error>;
