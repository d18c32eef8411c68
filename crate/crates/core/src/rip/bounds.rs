use crate::error::{Error, Result};

/// Thresholds on `δ_{K+1}` for sparsity `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTable {
    pub k: usize,
    /// `1/√(K+1)`: sufficient for OLS with unit-norm columns.
    pub sufficient_new: f64,
    /// `1/√(K+1/4)`: a failing instance exists at this value.
    pub necessary_new: f64,
    /// `1/(√K+2)`: the earlier sufficient condition.
    pub sufficient_prior: f64,
    /// `1/√K`: the earlier necessary condition.
    pub necessary_prior: f64,
    /// `1/(2√(K+1)+1)`: sufficient for OLS on a matrix without unit columns.
    pub general_matrix: f64,
}

impl BoundTable {
    /// `sufficient_prior < sufficient_new < necessary_new < necessary_prior`
    /// and `general_matrix < sufficient_new`.
    pub fn is_ordered(&self) -> bool {
        self.sufficient_prior < self.sufficient_new
            && self.sufficient_new < self.necessary_new
            && self.necessary_new < self.necessary_prior
            && self.general_matrix < self.sufficient_new
    }
}

pub fn bound_table(k: usize) -> Result<BoundTable> {
    if k == 0 {
        return Err(Error::DomainError("K must be at least 1".into()));
    }
    let kf = k as f64;
    Ok(BoundTable {
        k,
        sufficient_new: 1.0 / (kf + 1.0).sqrt(),
        necessary_new: 1.0 / (kf + 0.25).sqrt(),
        sufficient_prior: 1.0 / (kf.sqrt() + 2.0),
        necessary_prior: 1.0 / kf.sqrt(),
        general_matrix: 1.0 / (2.0 * (kf + 1.0).sqrt() + 1.0),
    })
}

/// Known sufficient condition for multiple-index OLS with `l` picks per step:
/// `δ_order < threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MolsThreshold {
    /// `K + 1` when `L = 1`, `L K` otherwise.
    pub order: usize,
    pub threshold: f64,
}

pub fn mols_threshold(k: usize, l: usize) -> Result<MolsThreshold> {
    if k == 0 || l == 0 || l > k {
        return Err(Error::InvalidL { l, max: k });
    }
    let (kf, lf) = (k as f64, l as f64);
    Ok(if l == 1 {
        MolsThreshold {
            order: k + 1,
            threshold: 1.0 / (kf.sqrt() + 2.0),
        }
    } else {
        MolsThreshold {
            order: l * k,
            threshold: lf.sqrt() / (kf.sqrt() + 2.0 * lf.sqrt()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn k_two_values() {
        let b = bound_table(2).unwrap();
        assert!((b.sufficient_new - 0.577350).abs() < 1e-6);
        assert!((b.necessary_new - 2.0 / 3.0).abs() < 1e-15);
        assert!((b.sufficient_prior - 0.292893).abs() < 1e-6);
        assert!((b.necessary_prior - 0.707107).abs() < 1e-6);
        assert!((b.general_matrix - 1.0 / (2.0 * 3f64.sqrt() + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn k_one_necessary() {
        assert!((bound_table(1).unwrap().necessary_new - 0.894427).abs() < 1e-6);
    }

    #[test]
    fn gap_closes_for_large_k() {
        let b = bound_table(100).unwrap();
        assert!(b.necessary_new - b.sufficient_new < 4e-4);
    }

    #[test]
    fn ordering_holds() {
        for k in 1..=1000 {
            assert!(bound_table(k).unwrap().is_ordered(), "K = {k}");
        }
        assert!(bound_table(0).is_err());
    }

    #[test]
    fn mols_single_index_is_prior_bound() {
        let m = mols_threshold(4, 1).unwrap();
        assert_eq!(m.order, 5);
        assert_eq!(m.threshold, bound_table(4).unwrap().sufficient_prior);
        let m2 = mols_threshold(4, 2).unwrap();
        assert_eq!(m2.order, 8);
        assert!((m2.threshold - 2f64.sqrt() / (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!(mols_threshold(2, 3).is_err());
    }
}
