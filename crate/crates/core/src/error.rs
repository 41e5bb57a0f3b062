use thiserror::Error;

/// Errors raised across the library.
///
/// Indices in messages are 1-based, matching the CLI and text formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalars live in different fields: sqrt({0}) vs sqrt({1})")]
    MixedField(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a valid square-free field parameter")]
    InvalidField(u64),
    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} indices, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("missing distance for pair {{{0},{1}}}")]
    MissingDistance(usize, usize),
    #[error("bin size must be positive, got {0}")]
    NonPositiveBin(f64),
    #[error("operation requires n = {expected}, configuration has n = {got}")]
    WrongN { expected: usize, got: usize },
    #[error("configurations differ in shape: {0}")]
    ShapeMismatch(String),
    #[error("all simplex volumes vanish; no affine frame exists")]
    DegenerateFrame,
    #[error("monomial has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("relation matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("volume spectrum is identically zero")]
    AllVolumesZero,
    #[error("value {0} has no square root in the field")]
    NonSquareValue(String),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
