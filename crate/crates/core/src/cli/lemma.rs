//! Numerical checks of the inequalities behind the OLS recovery guarantee,
//! evaluated along actual OLS runs.
//!
//! For each iteration `k` with `T^k ⊂ T` (and `u = x_{T∖T^k}`, `r = r^k`):
//!
//! - `projected_isometry`: `(1−δ_K)‖u‖² ≤ ‖r‖² ≤ (1+δ_K)‖u‖²`, and
//!   `1−δ_{k+1} ≤ ‖P⊥_{T^k} A_j‖² ≤ 1+δ_{k+1}` for every `j ∉ T^k`.
//! - `projection_floor`: `‖P⊥_{T^k} A_j‖ ≥ √(1−δ²_{k+1})` for every `j ∉ T^k`.
//! - `residual_bound`: with `j₀` the best off-support OLS score and
//!   `α = |T∖T^k| / ‖P⊥_{T^k} A_{j₀}‖²`, whenever `δ_{K−k+1} < 1/√(α+1)`:
//!   `‖r‖² > √α ‖u‖ max_{j∉T} |⟨A_j, r⟩|`.
//! - `residual_bound_order_k_plus_1`: the same inequality under
//!   `δ_{K+1} < 1/√(α+1)`. The argument for the inequality bounds `P⊥_{T^k}`
//!   applied to vectors supported on `T ∪ {j}`, which needs order `K+1`; at
//!   order `K−k+1` the inequality can fail for `k ≥ 1`.
//! - `support_score_floor`, `offsupport_score_ceiling`: under
//!   `δ_{K+1} < 1/√(K+1)`, the best on-support score is at least, and the
//!   best off-support score is below, `‖r‖² / (√|T∖T^k| ‖u‖)`.
//! - `exact_recovery`: under `δ_{K+1} < 1/√(K+1)`, OLS returns `T` in `K` steps.
//!
//! Inequalities are checked up to a relative slack of
//! [`INEQUALITY_SLACK`]; strict and non-strict comparisons are treated alike.

use crate::error::{Error, Result};
use crate::matcore::{dot, norm, ComplementProjector, DenseMatrix};
use crate::pursuit::{run_ols, SparseVector};
use crate::rip::exact_delta;
use crate::tolerances::{DEGENERATE_COLUMN, INEQUALITY_SLACK};

pub const CHECK_ROWS: [&str; 7] = [
    "projected_isometry",
    "projection_floor",
    "residual_bound",
    "residual_bound_order_k_plus_1",
    "support_score_floor",
    "offsupport_score_ceiling",
    "exact_recovery",
];

const PROJECTED: usize = 0;
const FLOOR: usize = 1;
const RESIDUAL: usize = 2;
const RESIDUAL_K1: usize = 3;
const SCORE_FLOOR: usize = 4;
const SCORE_CEILING: usize = 5;
const RECOVERY: usize = 6;

/// Counts for one inequality.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tally {
    pub evaluations: usize,
    pub violations: usize,
    /// Evaluations not made because the hypothesis failed.
    pub skipped: usize,
    /// Smallest relative margin `(lhs − rhs) / max(|lhs|, |rhs|)`.
    pub min_margin: Option<f64>,
}

impl Tally {
    /// Records `lhs ≥ rhs`.
    fn at_least(&mut self, lhs: f64, rhs: f64) {
        let scale = lhs.abs().max(rhs.abs());
        let margin = if scale > 0.0 {
            (lhs - rhs) / scale
        } else {
            0.0
        };
        self.evaluations += 1;
        self.min_margin = Some(self.min_margin.map_or(margin, |m| m.min(margin)));
        if margin < -INEQUALITY_SLACK {
            self.violations += 1;
        }
    }

    fn outcome(&mut self, holds: bool) {
        self.evaluations += 1;
        if !holds {
            self.violations += 1;
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.evaluations += other.evaluations;
        self.violations += other.violations;
        self.skipped += other.skipped;
        self.min_margin = match (self.min_margin, other.min_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

/// Results for one instance, indexed like [`CHECK_ROWS`].
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceChecks {
    pub rows: [Tally; 7],
    /// `δ_1 … δ_{K+1}`.
    pub deltas: Vec<f64>,
    /// `δ_{K+1} < 1/√(K+1)`.
    pub theorem_hypothesis: bool,
    pub recovered: bool,
}

/// Aggregate over instances.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LemmaTally {
    pub rows: [Tally; 7],
    /// Instances contributing at least one evaluation, per row.
    pub instances: [usize; 7],
}

impl LemmaTally {
    pub fn add(&mut self, checks: &InstanceChecks) {
        for (i, t) in checks.rows.iter().enumerate() {
            self.rows[i].merge(t);
            if t.evaluations > 0 {
                self.instances[i] += 1;
            }
        }
    }

    pub fn row(&self, name: &str) -> Option<(&Tally, usize)> {
        let i = CHECK_ROWS.iter().position(|r| *r == name)?;
        Some((&self.rows[i], self.instances[i]))
    }
}

/// Runs OLS on `y = A x` and checks every inequality along the way. `A` must
/// have unit-norm columns and more than `K` of them.
pub fn check_instance(a: &DenseMatrix, x: &SparseVector) -> Result<InstanceChecks> {
    let n = a.cols();
    let k_total = x.sparsity();
    if x.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "signal of length {} for {n} columns",
            x.dim()
        )));
    }
    if k_total == 0 || k_total >= n {
        return Err(Error::InvalidSparsity {
            k: k_total,
            max: n - 1,
        });
    }
    crate::rip::check_unit_columns(a)?;
    let deltas = (1..=k_total + 1)
        .map(|o| exact_delta(a, o).map(|c| c.delta))
        .collect::<Result<Vec<f64>>>()?;
    let delta = |order: usize| deltas[order - 1];
    let theorem_hypothesis = delta(k_total + 1) < 1.0 / ((k_total + 1) as f64).sqrt();

    let support = x.support();
    let y = a.mul_vec(&x.to_dense())?;
    let trace = run_ols(a, &y, k_total);
    let recovered = matches!(&trace, Ok(t) if t.recovers(support));

    let mut rows = [Tally::default(); 7];
    if theorem_hypothesis {
        rows[RECOVERY].outcome(recovered);
    } else {
        rows[RECOVERY].skipped += 1;
    }

    // T^0 = ∅, then the support after each completed step.
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    if let Ok(t) = &trace {
        prefixes.extend(t.iterations.iter().map(|it| it.support_after.clone()));
    }
    for (k, tk) in prefixes.iter().enumerate().take(k_total) {
        if !tk.iter().all(|i| support.contains(i)) {
            break;
        }
        check_iteration(a, x, &y, tk, &delta, theorem_hypothesis, &mut rows)?;
        debug_assert_eq!(tk.len(), k);
    }
    Ok(InstanceChecks {
        rows,
        deltas,
        theorem_hypothesis,
        recovered,
    })
}

fn check_iteration(
    a: &DenseMatrix,
    x: &SparseVector,
    y: &[f64],
    tk: &[usize],
    delta: &dyn Fn(usize) -> f64,
    theorem_hypothesis: bool,
    rows: &mut [Tally; 7],
) -> Result<()> {
    let n = a.cols();
    let k_total = x.sparsity();
    let k = tk.len();
    let projector = ComplementProjector::new(a, tk)?;
    let r = projector.project(y);
    let rr = dot(&r, &r);
    let remaining: Vec<usize> = x
        .support()
        .iter()
        .copied()
        .filter(|i| !tk.contains(i))
        .collect();
    let u_norm = norm(&remaining.iter().map(|&i| x.value_at(i)).collect::<Vec<_>>());
    let c = remaining.len() as f64;

    let outside_tk: Vec<usize> = (0..n).filter(|i| !tk.contains(i)).collect();
    let mut proj = vec![0.0; n];
    let mut corr = vec![0.0; n];
    for &j in &outside_tk {
        proj[j] = norm(&projector.project(a.column(j)));
        corr[j] = dot(a.column(j), &r).abs();
    }

    let d_big = delta(k_total);
    rows[PROJECTED].at_least(rr, (1.0 - d_big) * u_norm * u_norm);
    rows[PROJECTED].at_least((1.0 + d_big) * u_norm * u_norm, rr);
    let d_small = delta(k + 1);
    for &j in &outside_tk {
        let p2 = proj[j] * proj[j];
        rows[PROJECTED].at_least(p2, 1.0 - d_small);
        rows[PROJECTED].at_least(1.0 + d_small, p2);
        if d_small < 1.0 {
            rows[FLOOR].at_least(proj[j], (1.0 - d_small * d_small).sqrt());
        } else {
            rows[FLOOR].skipped += 1;
        }
    }

    let off: Vec<usize> = (0..n).filter(|i| !x.support().contains(i)).collect();
    let score = |j: usize| corr[j] / proj[j];
    let degenerate = outside_tk.iter().any(|&j| proj[j] <= DEGENERATE_COLUMN);
    if degenerate {
        for row in [RESIDUAL, RESIDUAL_K1, SCORE_FLOOR, SCORE_CEILING] {
            rows[row].skipped += 1;
        }
        return Ok(());
    }

    // The α the upper-bound argument uses: normalization of the strongest
    // off-support competitor.
    let j0 = off
        .iter()
        .copied()
        .fold(None::<usize>, |best, j| match best {
            Some(b) if score(b) >= score(j) => Some(b),
            _ => Some(j),
        })
        .expect("K < n leaves an off-support column");
    let alpha = c / (proj[j0] * proj[j0]);
    let threshold = 1.0 / (alpha + 1.0).sqrt();
    let worst_corr = off.iter().map(|&j| corr[j]).fold(0.0, f64::max);
    let rhs4 = alpha.sqrt() * u_norm * worst_corr;
    for (row, order) in [(RESIDUAL, k_total - k + 1), (RESIDUAL_K1, k_total + 1)] {
        if delta(order) < threshold {
            rows[row].at_least(rr, rhs4);
        } else {
            rows[row].skipped += 1;
        }
    }

    if theorem_hypothesis {
        let target = rr / (c.sqrt() * u_norm);
        let best_on = remaining.iter().map(|&i| score(i)).fold(0.0, f64::max);
        let best_off = off.iter().map(|&j| score(j)).fold(0.0, f64::max);
        rows[SCORE_FLOOR].at_least(best_on, target);
        rows[SCORE_CEILING].at_least(target, best_off);
    } else {
        rows[SCORE_FLOOR].skipped += 1;
        rows[SCORE_CEILING].skipped += 1;
    }
    Ok(())
}
