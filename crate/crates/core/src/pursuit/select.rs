use crate::error::{Error, Result};
use crate::matcore::{dot, norm, ComplementProjector, DenseMatrix};
use crate::tolerances::{DEGENERATE_COLUMN, TIE_RELATIVE};

/// Per-index selection criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// `|⟨A_i, r⟩| / ‖P⊥_T A_i‖₂`
    Ols,
    /// `|⟨A_i, r⟩|`
    Omp,
}

pub(crate) struct Scores {
    pub values: Vec<f64>,
    /// False for indices already in `T` and for columns inside span(A_T).
    pub eligible: Vec<bool>,
    pub degenerate: Option<usize>,
}

pub(crate) fn compute_scores(
    a: &DenseMatrix,
    support: &[usize],
    r: &[f64],
    rule: SelectionRule,
) -> Result<Scores> {
    if r.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but residual of length {}",
            a.rows(),
            r.len()
        )));
    }
    let n = a.cols();
    let mut values = vec![0.0; n];
    let mut eligible = vec![true; n];
    for &i in support {
        if i >= n {
            return Err(Error::DimensionMismatch(format!(
                "index {i} out of range for {n} columns"
            )));
        }
        eligible[i] = false;
    }
    let projector = match rule {
        SelectionRule::Ols => Some(ComplementProjector::new(a, support)?),
        SelectionRule::Omp => None,
    };
    let mut degenerate = None;
    for i in 0..n {
        if !eligible[i] {
            continue;
        }
        let col = a.column(i);
        let corr = dot(col, r).abs();
        values[i] = match &projector {
            None => corr,
            Some(p) => {
                let denom = norm(&p.project(col));
                if denom <= DEGENERATE_COLUMN * norm(col) {
                    eligible[i] = false;
                    degenerate.get_or_insert(i);
                    0.0
                } else {
                    corr / denom
                }
            }
        };
    }
    Ok(Scores {
        values,
        eligible,
        degenerate,
    })
}

/// Selection criterion for every column given the current support `T` and
/// residual `r = P⊥_T y`. Entries in `T` are 0.
///
/// With the OLS rule, a column whose complement projection vanishes raises
/// `DegenerateColumn`.
pub fn selection_scores(
    a: &DenseMatrix,
    support: &[usize],
    r: &[f64],
    rule: SelectionRule,
) -> Result<Vec<f64>> {
    let scores = compute_scores(a, support, r, rule)?;
    match scores.degenerate {
        Some(i) => Err(Error::DegenerateColumn(i)),
        None => Ok(scores.values),
    }
}

/// Largest eligible score; scores within the relative tie band of the maximum
/// resolve to the smallest index.
pub(crate) fn argmax_first(values: &[f64], eligible: &[bool]) -> Option<usize> {
    let best = values
        .iter()
        .zip(eligible)
        .filter(|(_, e)| **e)
        .map(|(v, _)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    if best == f64::NEG_INFINITY {
        return None;
    }
    let floor = best - TIE_RELATIVE * best.abs();
    (0..values.len()).find(|&i| eligible[i] && values[i] >= floor)
}
