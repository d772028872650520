use thiserror::Error;

/// Errors surfaced by every fallible operation in this crate.
///
/// Variants carry the violated precondition so callers (and the CLI) can
/// report exactly what was wrong with the input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("not integral: {0}")]
    NotIntegral(String),

    #[error("code must contain at least one word")]
    EmptyCode,

    #[error("duplicate codeword {0:?}")]
    DuplicateWord(Vec<i64>),

    #[error("code is not perfect: {0}")]
    NotPerfect(String),

    #[error("code is not standard: no coordinate is period-(2e+1) invariant")]
    NotStandard,

    #[error("code is not ordered: {0}")]
    NotOrdered(String),

    #[error("decoding failed: {0}")]
    Undecodable(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
