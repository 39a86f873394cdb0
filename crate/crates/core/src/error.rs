use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is not positive definite: leading minor {index} is {value}")]
    NotPositiveDefinite { index: usize, value: String },
    #[error("ambient rows do not reproduce the gram matrix")]
    AmbientMismatch,
    #[error("entry does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("mixed signs in direct sum")]
    MixedSigns,
    #[error("lattice is not unimodular (det {0})")]
    NotUnimodular(String),
    #[error("vector has length {got}, lattice rank is {rank}")]
    DimensionMismatch { got: usize, rank: usize },
    #[error("enumeration budget exceeded (explored radius {radius}, best norm {best:?})")]
    Budget { radius: i64, best: Option<i64> },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
