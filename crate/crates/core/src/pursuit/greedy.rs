use super::select::{argmax_first, compute_scores, SelectionRule};
use crate::error::{Error, Result};
use crate::matcore::{least_squares_columns, norm, DenseMatrix, Vector};
use crate::tolerances::RESIDUAL_STOP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ols,
    Omp,
    Mols { per_iteration: usize },
}

impl Algorithm {
    pub fn rule(self) -> SelectionRule {
        match self {
            Algorithm::Omp => SelectionRule::Omp,
            Algorithm::Ols | Algorithm::Mols { .. } => SelectionRule::Ols,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ols => "ols",
            Algorithm::Omp => "omp",
            Algorithm::Mols { .. } => "mols",
        }
    }

    fn per_iteration(self) -> usize {
        match self {
            Algorithm::Mols { per_iteration } => per_iteration,
            _ => 1,
        }
    }
}

/// One greedy step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Indices chosen in this step, in selection order.
    pub selected: Vec<usize>,
    /// Criterion value for every column before the choice; indices already
    /// selected score 0.
    pub scores: Vec<f64>,
    /// Sorted support after the step.
    pub support_after: Vec<usize>,
    pub residual_norm_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PursuitTrace {
    pub algorithm: Algorithm,
    pub iterations: Vec<IterationRecord>,
    /// Sorted estimated support.
    pub final_support: Vec<usize>,
    /// Length-n coefficient vector supported on `final_support`.
    pub final_estimate: Vector,
    pub final_residual_norm: f64,
    /// The loop ended because the residual vanished before the target size.
    pub early_stop: bool,
}

impl PursuitTrace {
    /// Selected indices across all iterations, in order.
    pub fn selection_sequence(&self) -> Vec<usize> {
        self.iterations
            .iter()
            .flat_map(|it| it.selected.iter().copied())
            .collect()
    }

    pub fn recovers(&self, support: &[usize]) -> bool {
        self.final_support == support
    }

    /// Every index of `support` was selected. For MOLS, whose final support
    /// can exceed `K`, this is the success criterion: least squares on the
    /// selected columns then returns the signal exactly.
    pub fn covers(&self, support: &[usize]) -> bool {
        support
            .iter()
            .all(|i| self.final_support.binary_search(i).is_ok())
    }

    /// [`covers`](Self::covers) for MOLS, [`recovers`](Self::recovers)
    /// otherwise.
    pub fn succeeds(&self, support: &[usize]) -> bool {
        match self.algorithm {
            Algorithm::Mols { .. } => self.covers(support),
            _ => self.recovers(support),
        }
    }
}

fn check_inputs(a: &DenseMatrix, y: &Vector, k: usize) -> Result<()> {
    if y.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but measurement of length {}",
            a.rows(),
            y.dim()
        )));
    }
    let max = a.rows().min(a.cols());
    if k == 0 || k > max {
        return Err(Error::InvalidSparsity { k, max });
    }
    Ok(())
}

fn greedy(a: &DenseMatrix, y: &Vector, k: usize, algorithm: Algorithm) -> Result<PursuitTrace> {
    let per_iteration = algorithm.per_iteration();
    let rule = algorithm.rule();
    let mut support: Vec<usize> = Vec::new();
    let mut coefficients = Vector::zeros(0);
    let mut residual = y.as_slice().to_vec();
    let mut residual_norm = norm(&residual);
    let mut iterations = Vec::new();
    let mut early_stop = false;

    while support.len() < k {
        if residual_norm <= RESIDUAL_STOP {
            early_stop = true;
            break;
        }
        if support.len() + per_iteration > a.rows() {
            break;
        }
        let scores = compute_scores(a, &support, &residual, rule)?;
        let mut eligible = scores.eligible.clone();
        let mut selected = Vec::with_capacity(per_iteration);
        for _ in 0..per_iteration {
            match argmax_first(&scores.values, &eligible) {
                Some(i) => {
                    eligible[i] = false;
                    selected.push(i);
                }
                None => break,
            }
        }
        if selected.is_empty() {
            // Every remaining column lies in span(A_T).
            let i = scores.degenerate.unwrap_or(0);
            return Err(Error::DegenerateColumn(i));
        }
        support.extend_from_slice(&selected);
        support.sort_unstable();
        coefficients = least_squares_columns(a, &support, y)?;
        residual = y.as_slice().to_vec();
        for (&j, c) in support.iter().zip(coefficients.iter()) {
            for (r, aij) in residual.iter_mut().zip(a.column(j)) {
                *r -= aij * c;
            }
        }
        residual_norm = norm(&residual);
        iterations.push(IterationRecord {
            selected,
            scores: scores.values,
            support_after: support.clone(),
            residual_norm_after: residual_norm,
        });
    }

    let mut estimate = vec![0.0; a.cols()];
    for (&j, c) in support.iter().zip(coefficients.iter()) {
        estimate[j] = *c;
    }
    let fitted = a.mul_vec(&estimate)?;
    let final_residual_norm = norm(
        &y.iter()
            .zip(fitted.iter())
            .map(|(yi, fi)| yi - fi)
            .collect::<Vec<_>>(),
    );
    Ok(PursuitTrace {
        algorithm,
        iterations,
        final_support: support,
        final_estimate: Vector::from_raw(estimate),
        final_residual_norm,
        early_stop,
    })
}

/// Orthogonal least squares: each step adds the index whose inclusion
/// minimizes the projected residual, evaluated through the equivalent
/// normalized-correlation rule.
pub fn run_ols(a: &DenseMatrix, y: &Vector, k: usize) -> Result<PursuitTrace> {
    check_inputs(a, y, k)?;
    greedy(a, y, k, Algorithm::Ols)
}

/// Orthogonal matching pursuit: each step adds the index most correlated with
/// the residual.
pub fn run_omp(a: &DenseMatrix, y: &Vector, k: usize) -> Result<PursuitTrace> {
    check_inputs(a, y, k)?;
    greedy(a, y, k, Algorithm::Omp)
}

/// Multiple OLS: `l` indices per step, ranked by the OLS criterion. Requires
/// `1 <= l <= min(k, rows / k)`. Runs until the support reaches `k` indices
/// (possibly overshooting by less than `l`) or the residual vanishes.
pub fn run_mols(a: &DenseMatrix, y: &Vector, k: usize, l: usize) -> Result<PursuitTrace> {
    check_inputs(a, y, k)?;
    let max = k.min(a.rows() / k);
    if l == 0 || l > max {
        return Err(Error::InvalidL { l, max });
    }
    greedy(a, y, k, Algorithm::Mols { per_iteration: l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pursuit::SparseVector;

    fn identity_instance(n: usize) -> (DenseMatrix, Vector) {
        let a = DenseMatrix::identity(n);
        let x = SparseVector::new(n, vec![1, 3], vec![5.0, -2.0]).unwrap();
        let y = a.mul_vec(&x.to_dense()).unwrap();
        (a, y)
    }

    #[test]
    fn identity_recovery() {
        let (a, y) = identity_instance(6);
        let t = run_ols(&a, &y, 2).unwrap();
        assert_eq!(t.final_support, vec![1, 3]);
        assert_eq!(t.final_estimate[1], 5.0);
        assert_eq!(t.final_estimate[3], -2.0);
        assert_eq!(t.final_residual_norm, 0.0);
        assert_eq!(t.selection_sequence(), vec![1, 3]);
        assert!(!t.early_stop);
        let o = run_omp(&a, &y, 2).unwrap();
        assert_eq!(o.iterations, t.iterations);
        assert_eq!(o.final_support, t.final_support);
    }

    #[test]
    fn early_stop_when_residual_vanishes() {
        let (a, y) = identity_instance(6);
        let t = run_ols(&a, &y, 4).unwrap();
        assert_eq!(t.iterations.len(), 2);
        assert!(t.early_stop);
        assert_eq!(t.final_support, vec![1, 3]);
    }

    #[test]
    fn mols_two_per_step_on_identity() {
        let a = DenseMatrix::identity(6);
        let x = SparseVector::new(6, vec![0, 4], vec![1.0, -3.0]).unwrap();
        let y = a.mul_vec(&x.to_dense()).unwrap();
        let t = run_mols(&a, &y, 2, 2).unwrap();
        assert_eq!(t.iterations.len(), 1);
        assert_eq!(t.final_support, vec![0, 4]);
        assert_eq!(t.iterations[0].selected, vec![4, 0]);
        assert_eq!(t.final_residual_norm, 0.0);
    }

    #[test]
    fn argument_errors() {
        let (a, y) = identity_instance(6);
        assert!(matches!(
            run_ols(&a, &y, 0),
            Err(Error::InvalidSparsity { .. })
        ));
        assert!(matches!(
            run_ols(&a, &y, 7),
            Err(Error::InvalidSparsity { .. })
        ));
        assert!(matches!(
            run_mols(&a, &y, 2, 3),
            Err(Error::InvalidL { l: 3, max: 2 })
        ));
        assert!(matches!(
            run_mols(&a, &y, 4, 2),
            Err(Error::InvalidL { l: 2, max: 1 })
        ));
        assert!(matches!(
            run_mols(&a, &y, 2, 0),
            Err(Error::InvalidL { .. })
        ));
        let short = Vector::new(vec![1.0; 5]).unwrap();
        assert!(matches!(
            run_ols(&a, &short, 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_measurement_stops_immediately() {
        let a = DenseMatrix::identity(3);
        let t = run_ols(&a, &Vector::zeros(3), 2).unwrap();
        assert!(t.iterations.is_empty());
        assert!(t.early_stop);
        assert!(t.final_support.is_empty());
    }
}
