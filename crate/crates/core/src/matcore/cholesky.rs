use super::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::tolerances::{CHOLESKY_PIVOT, SYMMETRY_RELATIVE};

/// Upper-triangular `R` with positive diagonal such that `R' R = M`.
pub fn cholesky_upper(m: &DenseMatrix) -> Result<DenseMatrix> {
    if !m.is_square() {
        return Err(Error::InvalidShape(format!(
            "Cholesky of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for j in 0..n {
        for i in 0..j {
            let d = (m.get(i, j) - m.get(j, i)).abs();
            if d > SYMMETRY_RELATIVE * scale {
                return Err(Error::NotSymmetric(d));
            }
        }
    }
    // Column-major R; fill row by row: R_ii = sqrt(M_ii - sum_k R_ki^2),
    // R_ij = (M_ij - sum_k R_ki R_kj) / R_ii.
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        let mut pivot = m.get(i, i);
        for k in 0..i {
            pivot -= r[i * n + k] * r[i * n + k];
        }
        if pivot.is_nan() || pivot <= CHOLESKY_PIVOT {
            return Err(Error::NotPositiveDefinite { column: i, pivot });
        }
        let rii = pivot.sqrt();
        r[i * n + i] = rii;
        for j in i + 1..n {
            let mut s = m.get(i, j);
            for k in 0..i {
                s -= r[i * n + k] * r[j * n + k];
            }
            r[j * n + i] = s / rii;
        }
    }
    Ok(DenseMatrix::from_raw(n, n, r))
}
