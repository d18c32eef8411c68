//! Numerical thresholds shared by the library and its tests.

/// Least squares declares rank deficiency when the smallest `|R_ii|` of the
/// Householder factor falls below this fraction of the largest.
pub const RANK_RELATIVE: f64 = 1e-12;

/// Relative asymmetry accepted by the symmetric eigensolver.
pub const SYMMETRY_RELATIVE: f64 = 1e-12;

/// Jacobi sweeps stop once the off-diagonal mass drops below this fraction
/// of the Frobenius norm.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Hard cap on cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Smallest accepted Cholesky pivot.
pub const CHOLESKY_PIVOT: f64 = 1e-12;

/// Two selection scores within this relative band are a tie; ties go to the
/// smallest index.
pub const TIE_RELATIVE: f64 = 1e-12;

/// Greedy pursuit stops early once the residual norm reaches this level.
pub const RESIDUAL_STOP: f64 = 1e-10;

/// A column whose projection onto the complement of the selected span is
/// shorter than this (relative to its own norm) is degenerate.
pub const DEGENERATE_COLUMN: f64 = 1e-12;

/// Accepted deviation from unit column norm.
pub const UNIT_NORM: f64 = 1e-10;

/// Accepted deviation in inequality checks that hold exactly in real
/// arithmetic (lemma checks, sandwich bounds).
pub const INEQUALITY_SLACK: f64 = 1e-10;

/// Monotonicity slack between isometry constants of different orders.
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Maximum number of column subsets enumerated by the exact isometry constant.
pub const SUBSET_LIMIT: u128 = 1_000_000;

/// Enumerations at or below this size run on the calling thread.
pub const PARALLEL_SUBSET_THRESHOLD: usize = 4096;

/// Largest grid step accepted by the Gram-family scan.
pub const MAX_GRID_STEP: f64 = 0.05;

/// Significant digits in CSV/JSON output.
pub const OUTPUT_SIGNIFICANT_DIGITS: usize = 12;
