use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element or subgroup does not belong to the parent group")]
    NotInParent,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("group is not soluble")]
    NotSoluble,
    #[error("H/K is not a chief factor of G")]
    NotChiefFactor,
    #[error("factors do not form a product decomposition: {0}")]
    NotADecomposition(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad action: {0}")]
    BadAction(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown group or subgroup: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
