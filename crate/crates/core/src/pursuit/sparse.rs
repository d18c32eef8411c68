use crate::error::{Error, Result};
use crate::matcore::Vector;

/// A vector stored by its support: strictly increasing indices with nonzero
/// values.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    dim: usize,
    support: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    pub fn new(dim: usize, support: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if support.len() != values.len() {
            return Err(Error::InvalidSparseVector(format!(
                "{} indices but {} values",
                support.len(),
                values.len()
            )));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSparseVector(
                "support must be strictly increasing".into(),
            ));
        }
        if let Some(&last) = support.last() {
            if last >= dim {
                return Err(Error::InvalidSparseVector(format!(
                    "index {last} out of range for dimension {dim}"
                )));
            }
        }
        if let Some(pos) = values.iter().position(|v| *v == 0.0 || !v.is_finite()) {
            return Err(Error::InvalidSparseVector(format!(
                "value at support position {pos} must be finite and nonzero"
            )));
        }
        Ok(SparseVector {
            dim,
            support,
            values,
        })
    }

    /// Builds from unordered `(index, value)` pairs.
    pub fn from_pairs(dim: usize, mut pairs: Vec<(usize, f64)>) -> Result<Self> {
        pairs.sort_by_key(|p| p.0);
        let (support, values) = pairs.into_iter().unzip();
        Self::new(dim, support, values)
    }

    /// Keeps the nonzero entries of a dense vector.
    pub fn from_dense(x: &[f64]) -> Result<Self> {
        let (support, values) = x
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i, *v))
            .unzip();
        Self::new(x.len(), support, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn to_dense(&self) -> Vector {
        let mut x = vec![0.0; self.dim];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            x[i] = v;
        }
        Vector::from_raw(x)
    }

    pub fn value_at(&self, index: usize) -> f64 {
        self.support
            .binary_search(&index)
            .map_or(0.0, |p| self.values[p])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_support() {
        assert!(SparseVector::new(4, vec![1, 3], vec![5.0, -2.0]).is_ok());
        assert!(SparseVector::new(4, vec![3, 1], vec![5.0, -2.0]).is_err());
        assert!(SparseVector::new(4, vec![1, 4], vec![5.0, -2.0]).is_err());
        assert!(SparseVector::new(4, vec![1, 2], vec![5.0, 0.0]).is_err());
        assert!(SparseVector::new(4, vec![1], vec![5.0, 1.0]).is_err());
    }

    #[test]
    fn dense_round_trip() {
        let x = SparseVector::from_pairs(5, vec![(3, 1.5), (0, -1.0)]).unwrap();
        assert_eq!(x.support(), &[0, 3]);
        let d = x.to_dense();
        assert_eq!(d.as_slice(), &[-1.0, 0.0, 0.0, 1.5, 0.0]);
        assert_eq!(SparseVector::from_dense(&d).unwrap(), x);
        assert_eq!(x.value_at(3), 1.5);
        assert_eq!(x.value_at(2), 0.0);
    }
}
