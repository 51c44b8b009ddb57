use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("instance too large for exact minor enumeration ({minors} minors, cap {cap})")]
    TooManyMinors { minors: u128, cap: u128 },

    #[error("search space too large ({size} points, cap {cap})")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("not a subbouquet: {0}")]
    NotSubbouquet(String),

    #[error("not in image: {0}")]
    NotInImage(String),

    #[error("Graver computation exceeded cap of {0} elements")]
    GraverCapExceeded(usize),

    #[error("not positively graded")]
    NotPositivelyGraded,

    #[error("not stable")]
    NotStable,

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("c not primitive: {0}")]
    NotPrimitive(String),

    #[error("c not full support: {0}")]
    NotFullSupport(String),

    #[error("leading coordinate not positive: {0}")]
    LeadingNotPositive(String),

    #[error("zero row/column: {0}")]
    ZeroRowOrColumn(String),

    #[error("zero column {0}")]
    ZeroColumn(usize),

    #[error("negative entry at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },

    #[error("matching not perfect: {0}")]
    MatchingNotPerfect(String),

    #[error("cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;
