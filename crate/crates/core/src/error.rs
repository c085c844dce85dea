use thiserror::Error;

/// Why a matrix failed the alternating check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltViolation {
    NotSquare { rows: usize, cols: usize },
    NonzeroDiagonal { index: usize },
    NotSkew { row: usize, col: usize },
}

impl std::fmt::Display for AltViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            AltViolation::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            AltViolation::NonzeroDiagonal { index } => {
                write!(f, "nonzero diagonal entry at ({index}, {index})")
            }
            AltViolation::NotSkew { row, col } => {
                write!(f, "entry ({row}, {col}) is not the negation of ({col}, {row})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("inner subspace is not contained in the outer subspace")]
    NotContained,
    #[error("generator {index} is not alternating: {violation}")]
    NotAlternating { index: usize, violation: AltViolation },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("expected a graph (uniformity 2), got uniformity {0}")]
    NotGraph(usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("vector has degree {degree}, which is not below {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("input matrices violate the expected shape: {0}")]
    ShapeViolation(String),
    #[error("witness basis lost rank: {rank} < {expected}")]
    RankLoss { rank: usize, expected: usize },
    #[error("characteristic 2 is not supported here (1/2 is undefined)")]
    EvenCharacteristic,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InternalInvariantViolation(what()))
    }
}
