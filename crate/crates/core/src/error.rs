use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unknown Cartan type label `{0}`")]
    UnknownType(String),

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("Weyl group exceeds {cap} elements; refusing to enumerate")]
    GroupTooLarge { cap: usize },

    #[error("operation requires a type A root system")]
    NotTypeA,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("inexact division by linear form (arithmetic bug)")]
    InexactDivision,

    #[error("invalid permutation `{0}`")]
    InvalidPermutation(String),

    #[error("position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("scope too large: {0}")]
    ScopeTooLarge(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
