use thiserror::Error;

/// Errors raised by operator construction and the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (asymmetry {0:.3e} relative to largest entry)")]
    NotHermitian(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("eigenvalue {0:.3e} outside [0, 1] for an effect")]
    NotEffect(f64),

    #[error("invalid Rényi order: {0}")]
    InvalidOrder(f64),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("support of the first argument is not contained in the support of the second")]
    SupportViolation,

    #[error("test is orthogonal to the state")]
    OrthogonalTest(),

    #[error("test must be strictly positive definite for orders in (0,1)")]
    SingularTest,

    #[error("not a valid PVM: {0}")]
    InvalidPvm(String),

    #[error("not a valid POVM: {0}")]
    InvalidPovm(String),

    #[error("dimension budget exceeded: requested {requested}, limit {limit}")]
    BudgetExceeded { requested: usize, limit: usize },

    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),

    #[error("expected exactly {expected} messages, got {got}")]
    MessageCount { expected: usize, got: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed matrix file: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
