use super::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::tolerances::{JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL, SYMMETRY_RELATIVE};

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

fn check_symmetric(m: &DenseMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidShape(format!(
            "eigen decomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in 0..j {
            worst = worst.max((m.get(i, j) - m.get(j, i)).abs());
        }
    }
    if worst > SYMMETRY_RELATIVE * scale {
        return Err(Error::NotSymmetric(worst));
    }
    Ok(())
}

/// Cyclic Jacobi on a column-major `n x n` buffer. On return the diagonal of
/// `a` holds the eigenvalues; `v`, when given, accumulates the rotations.
fn jacobi_in_place(a: &mut [f64], n: usize, mut v: Option<&mut [f64]>) {
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_OFF_DIAGONAL * frob;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for q in 0..n {
            for p in 0..q {
                off += 2.0 * a[q * n + p] * a[q * n + p];
            }
        }
        if off.sqrt() <= target {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[q * n + p];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J' A J with J acting on columns/rows p and q.
                for k in 0..n {
                    let akp = a[p * n + k];
                    let akq = a[q * n + k];
                    a[p * n + k] = c * akp - s * akq;
                    a[q * n + k] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[k * n + p];
                    let aqk = a[k * n + q];
                    a[k * n + p] = c * apk - s * aqk;
                    a[k * n + q] = s * apk + c * aqk;
                }
                a[q * n + p] = 0.0;
                a[p * n + q] = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[p * n + k];
                        let vkq = v[q * n + k];
                        v[p * n + k] = c * vkp - s * vkq;
                        v[q * n + k] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn sym_eigen(m: &DenseMatrix) -> Result<EigenDecomposition> {
    check_symmetric(m)?;
    let n = m.rows();
    let mut a = m.as_slice().to_vec();
    // Symmetrize exactly so rotations act on a symmetric buffer.
    for j in 0..n {
        for i in 0..j {
            let avg = 0.5 * (a[j * n + i] + a[i * n + j]);
            a[j * n + i] = avg;
            a[i * n + j] = avg;
        }
    }
    let mut v = DenseMatrix::identity(n).as_slice().to_vec();
    jacobi_in_place(&mut a, n, Some(&mut v));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&v[i * n..(i + 1) * n]);
    }
    Ok(EigenDecomposition {
        values,
        vectors: DenseMatrix::from_raw(n, n, vectors),
    })
}

/// Eigenvalues only, ascending, for a symmetric column-major buffer that the
/// caller guarantees is symmetric. Used in the subset enumeration hot loop.
pub(crate) fn sym_eigenvalues_unchecked(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    jacobi_in_place(&mut a, n, None);
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(f64::total_cmp);
    values
}
