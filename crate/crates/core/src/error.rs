use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("zero entry where a positive integer is required")]
    ZeroEntry,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular")]
    Singular,
    #[error("weights not reduced")]
    NotReduced,
    #[error("weights not well-formed")]
    NotWellFormed,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("not a uf-partition of 1/{iota}")]
    NotUfPartition { iota: num_bigint::BigInt },
    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),
    #[error("origin is not an interior point of the simplex")]
    OriginNotInterior,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("work budget of {budget} nodes exceeded at frontier {frontier:?}")]
    BudgetExceeded { budget: u64, frontier: Vec<u64> },
    #[error("integer overflow in enumeration at frontier {frontier:?}")]
    Overflow { frontier: Vec<u64> },
}

pub type Result<T> = std::result::Result<T, Error>;
