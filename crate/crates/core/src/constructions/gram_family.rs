use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matcore::{cholesky_upper, DenseMatrix};
use crate::pursuit::{run_ols, SparseVector};
use crate::rip::exact_delta;
use crate::tolerances::MAX_GRID_STEP;

/// One member of the unit-diagonal 3x3 Gram family with off-diagonals
/// `(a, b, c = 1 − a + b)`, for which the three columns tie in correlation
/// with `y = A (0, −1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramFamilyPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub gram: DenseMatrix,
    /// Upper Cholesky factor of `gram`; its columns are the sampling matrix.
    pub matrix: DenseMatrix,
    pub delta3: f64,
    /// 0-based index chosen by the first OLS iteration.
    pub ols_first_pick: usize,
    /// First pick lies outside the support `{1, 2}` (0-based).
    pub fails: bool,
}

pub fn family_gram(a: f64, b: f64) -> DenseMatrix {
    let c = 1.0 - a + b;
    #[rustfmt::skip]
    let g = DenseMatrix::from_row_major(3, 3, &[
        1.0, a,   b,
        a,   1.0, c,
        b,   c,   1.0,
    ]);
    g.expect("finite parameters")
}

pub fn family_signal() -> SparseVector {
    SparseVector::new(3, vec![1, 2], vec![-1.0, 1.0]).expect("constant signal")
}

pub fn gram_family_point(a: f64, b: f64) -> Result<GramFamilyPoint> {
    if !(a > -1.0 && a < 1.0 && b > -1.0 && b < 1.0) || b > a {
        return Err(Error::DomainError(format!(
            "(a, b) = ({a}, {b}) must satisfy -1 < b <= a < 1"
        )));
    }
    let gram = family_gram(a, b);
    let matrix = cholesky_upper(&gram)?;
    let x = family_signal();
    let y = matrix.mul_vec(&x.to_dense())?;
    let delta3 = exact_delta(&matrix, 3)?.delta;
    let trace = run_ols(&matrix, &y, 2)?;
    let ols_first_pick = trace.iterations[0].selected[0];
    Ok(GramFamilyPoint {
        a,
        b,
        c: 1.0 - a + b,
        gram,
        matrix,
        delta3,
        ols_first_pick,
        fails: !x.support().contains(&ols_first_pick),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramScan {
    pub min_delta3: f64,
    pub argmin: (f64, f64),
    pub evaluated: usize,
    pub not_positive_definite: usize,
    pub failing: usize,
}

/// Grid search over `-1 < b <= a < 1` (grid `-1 + i·step`) for the failing
/// instance with the smallest `δ₃`. Points whose Gram is not positive
/// definite are skipped.
pub fn scan_gram_family(grid_step: f64) -> Result<GramScan> {
    if !(grid_step > 0.0 && grid_step <= MAX_GRID_STEP) {
        return Err(Error::DomainError(format!(
            "grid step {grid_step} outside (0, {MAX_GRID_STEP}]"
        )));
    }
    let values: Vec<f64> = (1..)
        .map(|i| -1.0 + i as f64 * grid_step)
        .take_while(|v| *v < 1.0 - 1e-12)
        .collect();
    let rows: Vec<Vec<Result<GramFamilyPoint>>> = values
        .par_iter()
        .enumerate()
        .map(|(i, &a)| {
            values[..=i]
                .iter()
                .map(|&b| gram_family_point(a, b))
                .collect()
        })
        .collect();

    let mut scan = GramScan {
        min_delta3: f64::INFINITY,
        argmin: (f64::NAN, f64::NAN),
        evaluated: 0,
        not_positive_definite: 0,
        failing: 0,
    };
    for point in rows.into_iter().flatten() {
        scan.evaluated += 1;
        let p = match point {
            Ok(p) => p,
            Err(Error::NotPositiveDefinite { .. }) => {
                scan.not_positive_definite += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !p.fails {
            continue;
        }
        scan.failing += 1;
        // Rows are visited in increasing a, then b: strict comparison keeps
        // the lexicographically first minimizer.
        if p.delta3 < scan.min_delta3 {
            scan.min_delta3 = p.delta3;
            scan.argmin = (p.a, p.b);
        }
    }
    if scan.failing == 0 {
        return Err(Error::EmptyGrid);
    }
    Ok(scan)
}
