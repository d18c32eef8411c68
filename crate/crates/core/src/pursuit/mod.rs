//! Greedy support recovery: OLS, OMP and multiple-index OLS, each returning a
//! full per-iteration trace.

mod greedy;
mod select;
mod sparse;

pub use greedy::{run_mols, run_ols, run_omp, Algorithm, IterationRecord, PursuitTrace};
pub use select::{selection_scores, SelectionRule};
pub use sparse::SparseVector;
