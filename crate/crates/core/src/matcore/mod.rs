//! Dense real linear algebra: least squares, complement projections,
//! symmetric eigenvalues and Cholesky factors.

mod cholesky;
mod dense;
mod eigen;
mod qr;

pub use cholesky::cholesky_upper;
pub use dense::{DenseMatrix, Vector};
pub use eigen::{sym_eigen, EigenDecomposition};
pub(crate) use qr::ComplementProjector;
pub use qr::{least_squares, least_squares_columns, project_complement};

pub(crate) use dense::{dot, norm};
pub(crate) use eigen::sym_eigenvalues_unchecked;
