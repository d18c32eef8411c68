use thiserror::Error;

/// Failures raised by the numerical library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("selected columns are numerically linearly dependent (min |R_ii| = {min_diag:e}, max |R_ii| = {max_diag:e})")]
    RankDeficient { min_diag: f64, max_diag: f64 },
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive definite (pivot {pivot:e} at column {column})")]
    NotPositiveDefinite { column: usize, pivot: f64 },
    #[error("column {0} lies in the span of the selected columns")]
    DegenerateColumn(usize),
    #[error("invalid number of indices per iteration L = {l} (must satisfy 1 <= L <= {max})")]
    InvalidL { l: usize, max: usize },
    #[error("invalid sparsity K = {k} (must satisfy 1 <= K <= {max})")]
    InvalidSparsity { k: usize, max: usize },
    #[error("invalid sparse vector: {0}")]
    InvalidSparseVector(String),
    #[error("subset enumeration too large: C({n}, {k}) = {count} exceeds {limit}")]
    TooLarge {
        n: usize,
        k: usize,
        count: u128,
        limit: u128,
    },
    #[error("column {column} does not have unit norm (norm {norm})")]
    NotUnitColumns { column: usize, norm: f64 },
    #[error("index {0} is already in the projection set")]
    IndexInS(usize),
    #[error("column {0} has zero norm")]
    ZeroColumn(usize),
    #[error("invalid isometry constant {0} (need 0 <= delta < 1)")]
    InvalidDelta(f64),
    #[error("scale factor {value} at position {index} is not positive")]
    NonpositiveScale { index: usize, value: f64 },
    #[error("rho = {0} outside (0, 1)")]
    InvalidRho(f64),
    #[error("parameter out of domain: {0}")]
    DomainError(String),
    #[error("grid contains no failing positive-definite point")]
    EmptyGrid,
}

impl Error {
    /// Rank, definiteness and degeneracy failures, as opposed to bad arguments.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::DegenerateColumn(_)
                | Error::NotSymmetric(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
