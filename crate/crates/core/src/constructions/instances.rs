use crate::error::{Error, Result};
use crate::matcore::{DenseMatrix, Vector};
use crate::pursuit::SparseVector;

/// `(s+1) x (s+1)` matrix whose first `s` columns are `e_1..e_s` and whose
/// last column is `(ρ, 0, …, 0, √(1−ρ²))`. Its Gram spectrum is
/// `{1−ρ, 1, …, 1, 1+ρ}`, so `δ_{s+1} = ρ`, and the last column keeps exactly
/// `√(1−ρ²)` after projecting out the others.
pub fn sharp_projection_matrix(rho: f64, s: usize) -> Result<DenseMatrix> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidRho(rho));
    }
    if s == 0 {
        return Err(Error::DomainError("s must be at least 1".into()));
    }
    let n = s + 1;
    let mut data = DenseMatrix::identity(n).as_slice().to_vec();
    let last = &mut data[s * n..];
    last.iter_mut().for_each(|v| *v = 0.0);
    last[0] = rho;
    last[s] = (1.0 - rho * rho).sqrt();
    DenseMatrix::new(n, n, data)
}

/// Three-column instance with `δ₃ = 2/3` on which OLS (and OMP) pick a wrong
/// index first: all three columns tie at correlation 2/3 with `y` and the
/// tie goes to column 1, which is outside the support `{2, 3}`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub a: DenseMatrix,
    pub x: SparseVector,
    pub y: Vector,
}

pub fn counterexample_k2() -> Counterexample {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    #[rustfmt::skip]
    let a = DenseMatrix::from_row_major(3, 3, &[
        1.0, 1.0 / 3.0,       -1.0 / 3.0,
        0.0, 2.0 * s2 / 3.0,  s2 / 3.0,
        0.0, 0.0,             s6 / 3.0,
    ])
    .expect("constant matrix");
    let x = SparseVector::new(3, vec![1, 2], vec![-1.0, 1.0]).expect("constant signal");
    let y = a.mul_vec(&x.to_dense()).expect("3x3 times 3");
    Counterexample { a, x, y }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_measurement() {
        let c = counterexample_k2();
        let expect = [-2.0 / 3.0, -2f64.sqrt() / 3.0, 6f64.sqrt() / 3.0];
        assert!(c.y.max_abs_diff(&expect) < 1e-15);
        for nrm in c.a.column_norms() {
            assert!((nrm - 1.0).abs() < 1e-15);
        }
        let g = c.a.gram();
        assert!((g.get(0, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((g.get(0, 2) + 1.0 / 3.0).abs() < 1e-15);
        assert!((g.get(1, 2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn sharp_projection_shape() {
        let a = sharp_projection_matrix(0.5, 2).unwrap();
        assert_eq!(a.rows(), 3);
        assert_eq!(a.column(2), &[0.5, 0.0, 0.75f64.sqrt()]);
        assert_eq!(a.column(0), &[1.0, 0.0, 0.0]);
        for rho in [0.1, 0.5, 0.99] {
            for nrm in sharp_projection_matrix(rho, 4).unwrap().column_norms() {
                assert!((nrm - 1.0).abs() < 1e-15);
            }
        }
        assert!(matches!(
            sharp_projection_matrix(1.0, 2),
            Err(Error::InvalidRho(_))
        ));
        assert!(matches!(
            sharp_projection_matrix(0.0, 2),
            Err(Error::InvalidRho(_))
        ));
        assert!(sharp_projection_matrix(0.5, 0).is_err());
    }
}
