use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matcore::{norm, sym_eigenvalues_unchecked, ComplementProjector, DenseMatrix};
use crate::tolerances::{MONOTONE_SLACK, PARALLEL_SUBSET_THRESHOLD, SUBSET_LIMIT, UNIT_NORM};

/// Which side of the isometry bound is binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `λ_max − 1`
    Upper,
    /// `1 − λ_min`
    Lower,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

/// Exact isometry constant of a given order with the subset that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct RipCertificate {
    pub order: usize,
    pub delta: f64,
    /// Lexicographically smallest maximizing column subset.
    pub extremal_subset: Vec<usize>,
    /// `λ_max` or `λ_min` of that subset's Gram matrix, per `side`.
    pub extremal_eigenvalue: f64,
    pub side: Side,
}

impl RipCertificate {
    /// `delta < 1`; larger values are representable but mean the restricted
    /// isometry property fails at this order.
    pub fn satisfies_rip(&self) -> bool {
        self.delta < 1.0
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The `rank`-th size-`k` subset of `0..n` in lexicographic order.
fn unrank(mut rank: u128, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, remaining);
            if rank < with_next {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with_next;
            next += 1;
        }
    }
    out
}

fn advance(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Best {
    delta: f64,
    eigenvalue: f64,
    side: Side,
    subset: Vec<usize>,
}

fn scan_range(gram: &DenseMatrix, n: usize, k: usize, start: u128, len: u128) -> Best {
    let mut subset = unrank(start, n, k);
    let mut best: Option<Best> = None;
    for step in 0..len {
        if step > 0 {
            advance(&mut subset, n);
        }
        let block = gram.principal_submatrix(&subset);
        let values = sym_eigenvalues_unchecked(block.as_slice().to_vec(), k);
        let (lo, hi) = (values[0], values[k - 1]);
        let (delta, eigenvalue, side) = if 1.0 - lo >= hi - 1.0 {
            (1.0 - lo, lo, Side::Lower)
        } else {
            (hi - 1.0, hi, Side::Upper)
        };
        if best.as_ref().is_none_or(|b| delta > b.delta) {
            best = Some(Best {
                delta,
                eigenvalue,
                side,
                subset: subset.clone(),
            });
        }
    }
    best.expect("non-empty range")
}

/// Exact `δ_K`: the largest deviation from 1 of any eigenvalue of `A_S' A_S`
/// over all size-`k` column subsets `S`.
///
/// Subsets are enumerated in lexicographic order (in parallel above a size
/// threshold); the reduction keeps the first maximizer, so the result does
/// not depend on the partitioning.
pub fn exact_delta(a: &DenseMatrix, k: usize) -> Result<RipCertificate> {
    let n = a.cols();
    if k == 0 || k > n {
        return Err(Error::InvalidSparsity { k, max: n });
    }
    let count = binomial(n, k);
    if count > SUBSET_LIMIT {
        return Err(Error::TooLarge {
            n,
            k,
            count,
            limit: SUBSET_LIMIT,
        });
    }
    let gram = a.gram();
    let best = if count as usize <= PARALLEL_SUBSET_THRESHOLD {
        scan_range(&gram, n, k, 0, count)
    } else {
        let chunk = 1024u128;
        let chunks = count.div_ceil(chunk) as usize;
        let partial: Vec<Best> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c as u128 * chunk;
                scan_range(&gram, n, k, start, chunk.min(count - start))
            })
            .collect();
        partial
            .into_iter()
            .reduce(|acc, b| if b.delta > acc.delta { b } else { acc })
            .expect("at least one chunk")
    };
    Ok(RipCertificate {
        order: k,
        delta: best.delta,
        extremal_subset: best.subset,
        extremal_eigenvalue: best.eigenvalue,
        side: best.side,
    })
}

/// Whether `δ_{k1} <= δ_{k2}` (up to round-off) for `k1 <= k2`. Always true
/// for a correct implementation.
pub fn delta_monotone_check(a: &DenseMatrix, k1: usize, k2: usize) -> Result<bool> {
    if k1 > k2 {
        return Err(Error::DomainError(format!(
            "need K1 <= K2, got {k1} > {k2}"
        )));
    }
    let d1 = exact_delta(a, k1)?.delta;
    let d2 = exact_delta(a, k2)?.delta;
    Ok(d1 <= d2 + MONOTONE_SLACK)
}

/// Observed complement-projection length next to its RIP lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionBound {
    /// `‖P⊥_S A_i‖₂`
    pub observed: f64,
    /// `√(1 − δ²_{|S|+1})`, or 0 when `δ_{|S|+1} >= 1`.
    pub bound: f64,
    pub delta: f64,
}

pub(crate) fn check_unit_columns(a: &DenseMatrix) -> Result<()> {
    for (j, nrm) in a.column_norms().into_iter().enumerate() {
        if (nrm - 1.0).abs() > UNIT_NORM {
            return Err(Error::NotUnitColumns {
                column: j,
                norm: nrm,
            });
        }
    }
    Ok(())
}

/// Length of column `i` after projecting out span(A_S), with the lower bound
/// `√(1 − δ²_{|S|+1})` for unit-norm columns.
pub fn projection_lower_bound(a: &DenseMatrix, s: &[usize], i: usize) -> Result<ProjectionBound> {
    check_unit_columns(a)?;
    if i >= a.cols() {
        return Err(Error::DimensionMismatch(format!("column {i} out of range")));
    }
    if s.contains(&i) {
        return Err(Error::IndexInS(i));
    }
    let delta = exact_delta(a, s.len() + 1)?.delta;
    let observed = norm(&ComplementProjector::new(a, s)?.project(a.column(i)));
    let bound = if delta < 1.0 {
        (1.0 - delta * delta).sqrt()
    } else {
        0.0
    };
    Ok(ProjectionBound {
        observed,
        bound,
        delta,
    })
}
