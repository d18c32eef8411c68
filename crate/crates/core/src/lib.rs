//! Greedy sparse recovery with exact restricted isometry certification.
//!
//! - [`matcore`]: dense least squares, projections, symmetric eigenvalues,
//!   Cholesky.
//! - [`pursuit`]: OLS, OMP and multiple-index OLS with per-iteration traces.
//! - [`rip`]: exact isometry constants by subset enumeration and the recovery
//!   thresholds they are compared against.
//! - [`constructions`]: the sharpness and failure instances, the 3x3 Gram
//!   family, random ensembles.
//! - [`cli`]: batch experiments behind the `pursuit-lab` binary.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod matcore;
pub mod pursuit;
pub mod rip;
pub mod tolerances;

pub use error::{Error, Result};
