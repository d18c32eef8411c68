use crate::error::{Error, Result};
use crate::matcore::DenseMatrix;

/// Scales every column of `a_hat` to unit norm; returns the normalized matrix
/// and the scale factors `d_i = 1/‖Â_i‖₂`.
pub fn normalize_columns(a_hat: &DenseMatrix) -> Result<(DenseMatrix, Vec<f64>)> {
    let norms = a_hat.column_norms();
    if let Some(j) = norms.iter().position(|&nrm| nrm.is_nan() || nrm <= 1e-12) {
        return Err(Error::ZeroColumn(j));
    }
    let d: Vec<f64> = norms.iter().map(|nrm| 1.0 / nrm).collect();
    let a = a_hat.scale_columns(&d)?;
    Ok((a, d))
}

/// Bound on the isometry constant of the column-normalized matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferBound {
    /// `max{(1+δ̂) max d² − 1, 1 − (1−δ̂) min d²}`.
    pub gamma: f64,
    /// The same expression with `d` in place of `d²`, kept for comparison.
    pub gamma_unsquared: f64,
    /// `2δ̂/(1−δ̂)`.
    pub corollary_bound: f64,
}

/// Given `δ_K(Â)` and the normalization scales, bounds `δ_K(ÂD)`.
pub fn transfer_bound(delta_hat: f64, d: &[f64]) -> Result<TransferBound> {
    if !(0.0..1.0).contains(&delta_hat) {
        return Err(Error::InvalidDelta(delta_hat));
    }
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0) {
        return Err(Error::NonpositiveScale { index, value });
    }
    if d.is_empty() {
        return Err(Error::DomainError("empty scale vector".into()));
    }
    let dmax = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let dmin = d.iter().copied().fold(f64::INFINITY, f64::min);
    let gamma = ((1.0 + delta_hat) * dmax * dmax - 1.0).max(1.0 - (1.0 - delta_hat) * dmin * dmin);
    let gamma_unsquared = ((1.0 + delta_hat) * dmax - 1.0).max(1.0 - (1.0 - delta_hat) * dmin);
    Ok(TransferBound {
        gamma,
        gamma_unsquared,
        corollary_bound: 2.0 * delta_hat / (1.0 - delta_hat),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_normalization() {
        let a_hat = DenseMatrix::diagonal(&[2.0, 0.5]).unwrap();
        let (a, d) = normalize_columns(&a_hat).unwrap();
        assert_eq!(d, vec![0.5, 2.0]);
        assert_eq!(a, DenseMatrix::identity(2));
    }

    #[test]
    fn unit_columns_untouched() {
        let a_hat = DenseMatrix::from_row_major(2, 2, &[0.6, 1.0, 0.8, 0.0]).unwrap();
        let (a, d) = normalize_columns(&a_hat).unwrap();
        assert_eq!(a, a_hat);
        assert!(d.iter().all(|v| (*v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn zero_column_rejected() {
        let a_hat = DenseMatrix::from_row_major(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            normalize_columns(&a_hat),
            Err(Error::ZeroColumn(1))
        ));
    }

    #[test]
    fn unit_scales_reproduce_delta() {
        for delta in [0.0, 0.1, 0.37, 0.9] {
            let t = transfer_bound(delta, &[1.0, 1.0, 1.0]).unwrap();
            assert!((t.gamma - delta).abs() < 1e-15);
            assert!((t.gamma_unsquared - delta).abs() < 1e-15);
        }
    }

    #[test]
    fn third_with_extreme_scales() {
        // d² spanning [3/4, 3/2] = [1/(1+δ), 1/(1−δ)] at δ = 1/3.
        let d = [0.75f64.sqrt(), 1.0, 1.5f64.sqrt()];
        let t = transfer_bound(1.0 / 3.0, &d).unwrap();
        assert!((t.corollary_bound - 1.0).abs() < 1e-15);
        assert!(t.gamma <= 1.0 + 1e-12);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            transfer_bound(1.0, &[1.0]),
            Err(Error::InvalidDelta(_))
        ));
        assert!(matches!(
            transfer_bound(-0.1, &[1.0]),
            Err(Error::InvalidDelta(_))
        ));
        assert!(matches!(
            transfer_bound(0.2, &[1.0, 0.0]),
            Err(Error::NonpositiveScale { index: 1, .. })
        ));
    }
}
