use std::time::Instant;

use rayon::prelude::*;

use super::io::{format_matrix, format_signal, read_matrix, read_signal, write_text};
use super::lemma::{check_instance, InstanceChecks, LemmaTally, CHECK_ROWS};
use super::table::{one_based, ExperimentResult, Table, Value};
use super::{
    ensemble_label, BoundsSpec, CliError, CounterexampleSpec, ExperimentSpec, LemmaCheckSpec,
    MatrixSource, PhaseSpec, RecoverSpec, RipSpec, ScanGramSpec, SignalSource,
};
use crate::constructions::{
    counterexample_k2, random_sparse, sample_ensemble, sample_matrix, scan_gram_family, trial_rng,
    EnsembleSpec,
};
use crate::matcore::DenseMatrix;
use crate::pursuit::{run_mols, run_ols, run_omp, Algorithm, PursuitTrace, SparseVector};
use crate::rip::{bound_table, exact_delta, mols_threshold, normalize_columns, transfer_bound};
use crate::tolerances::UNIT_NORM;

type CliResult<T> = std::result::Result<T, CliError>;

/// Dispatches a spec and stamps the wall time.
pub fn run(spec: &ExperimentSpec) -> CliResult<ExperimentResult> {
    let start = Instant::now();
    let mut result = match spec {
        ExperimentSpec::Recover(s) => cmd_recover(s),
        ExperimentSpec::Rip(s) => cmd_rip(s),
        ExperimentSpec::Counterexample(s) => cmd_counterexample(s),
        ExperimentSpec::Bounds(s) => cmd_bounds(s),
        ExperimentSpec::Phase(s) => cmd_phase(s),
        ExperimentSpec::LemmaCheck(s) => cmd_lemma_check(s),
        ExperimentSpec::ScanGram(s) => cmd_scan_gram(s),
    }?;
    result.metadata.wall_time = start.elapsed();
    Ok(result)
}

fn load_matrix(source: &MatrixSource, seed: u64) -> CliResult<DenseMatrix> {
    match source {
        MatrixSource::File(path) => read_matrix(path),
        MatrixSource::Ensemble { kind, m, n } => Ok(sample_ensemble(&EnsembleSpec {
            kind: *kind,
            m: *m,
            n: *n,
            seed,
        })?),
    }
}

fn load_signal(source: &SignalSource, n: usize, seed: u64) -> CliResult<SparseVector> {
    match source {
        SignalSource::File(path) => read_signal(path),
        SignalSource::Random(k) => Ok(random_sparse(n, *k, &mut trial_rng(seed, 1))?),
    }
}

fn uses_seed(matrix: &MatrixSource, signal: Option<&SignalSource>) -> bool {
    matches!(matrix, MatrixSource::Ensemble { .. })
        || matches!(signal, Some(SignalSource::Random(_)))
}

fn pursue(
    algorithm: Algorithm,
    a: &DenseMatrix,
    y: &crate::matcore::Vector,
    k: usize,
) -> crate::Result<PursuitTrace> {
    match algorithm {
        Algorithm::Ols => run_ols(a, y, k),
        Algorithm::Omp => run_omp(a, y, k),
        Algorithm::Mols { per_iteration } => run_mols(a, y, k, per_iteration),
    }
}

/// Runs one greedy algorithm on `y = A x`.
pub fn cmd_recover(spec: &RecoverSpec) -> CliResult<ExperimentResult> {
    let a = load_matrix(&spec.matrix, spec.seed)?;
    let x = load_signal(&spec.signal, a.cols(), spec.seed)?;
    if x.dim() != a.cols() {
        return Err(crate::Error::DimensionMismatch(format!(
            "signal of length {} for a matrix with {} columns",
            x.dim(),
            a.cols()
        ))
        .into());
    }
    let k = spec.k.unwrap_or(x.sparsity());
    let y = a.mul_vec(&x.to_dense())?;
    let trace = pursue(spec.algorithm, &a, &y, k)?;

    let seed = uses_seed(&spec.matrix, Some(&spec.signal)).then_some(spec.seed);
    let mut result = ExperimentResult::new("recover", seed);

    let mut iterations = Table::new(
        "iterations",
        &["iteration", "selected", "score", "residual_norm", "support"],
    );
    let mut scores = Table::new("scores", &["iteration", "index", "score"]);
    for (it, rec) in trace.iterations.iter().enumerate() {
        for &j in &rec.selected {
            iterations.push(vec![
                (it + 1).into(),
                (j + 1).into(),
                rec.scores[j].into(),
                rec.residual_norm_after.into(),
                one_based(&rec.support_after).into(),
            ]);
        }
        for (j, &s) in rec.scores.iter().enumerate() {
            scores.push(vec![(it + 1).into(), (j + 1).into(), s.into()]);
        }
    }

    let mut summary = Table::new(
        "summary",
        &[
            "algorithm",
            "L",
            "k",
            "true_support",
            "final_support",
            "success",
            "early_stop",
            "final_residual_norm",
        ],
    );
    let l = match spec.algorithm {
        Algorithm::Mols { per_iteration } => per_iteration,
        _ => 1,
    };
    summary.push(vec![
        spec.algorithm.name().into(),
        l.into(),
        k.into(),
        one_based(x.support()).into(),
        one_based(&trace.final_support).into(),
        trace.succeeds(x.support()).into(),
        trace.early_stop.into(),
        trace.final_residual_norm.into(),
    ]);
    result.tables = vec![iterations, scores, summary];
    Ok(result)
}

/// Exact isometry constant of order `k`, with the OLS thresholds it is
/// compared against. Matrices without unit columns also get the
/// normalization transfer bound.
pub fn cmd_rip(spec: &RipSpec) -> CliResult<ExperimentResult> {
    let a = load_matrix(&spec.matrix, spec.seed)?;
    let cert = exact_delta(&a, spec.k)?;
    let mut result =
        ExperimentResult::new("rip", uses_seed(&spec.matrix, None).then_some(spec.seed));

    // Order k = K + 1 is what the OLS conditions constrain.
    let thresholds = (spec.k >= 2).then(|| bound_table(spec.k - 1).expect("K >= 1"));
    let mut table = Table::new(
        "certificate",
        &[
            "order",
            "delta",
            "side",
            "extremal_subset",
            "extremal_eigenvalue",
            "satisfies_rip",
            "ols_sparsity",
            "sufficient_new",
            "necessary_new",
            "ols_guaranteed",
        ],
    );
    table.push(vec![
        cert.order.into(),
        cert.delta.into(),
        cert.side.name().into(),
        one_based(&cert.extremal_subset).into(),
        cert.extremal_eigenvalue.into(),
        cert.satisfies_rip().into(),
        thresholds.map(|t| t.k).into(),
        thresholds.map(|t| t.sufficient_new).into(),
        thresholds.map(|t| t.necessary_new).into(),
        thresholds.map(|t| cert.delta < t.sufficient_new).into(),
    ]);
    result.tables.push(table);

    let unit = a
        .column_norms()
        .iter()
        .all(|v| (v - 1.0).abs() <= UNIT_NORM);
    if !unit && cert.delta < 1.0 {
        let (normalized, d) = normalize_columns(&a)?;
        let bound = transfer_bound(cert.delta, &d)?;
        let delta_normalized = exact_delta(&normalized, spec.k)?.delta;
        let mut t = Table::new(
            "normalization",
            &[
                "order",
                "delta_hat",
                "delta_normalized",
                "gamma",
                "gamma_unsquared",
                "corollary_bound",
            ],
        );
        t.push(vec![
            spec.k.into(),
            cert.delta.into(),
            delta_normalized.into(),
            bound.gamma.into(),
            bound.gamma_unsquared.into(),
            bound.corollary_bound.into(),
        ]);
        result.tables.push(t);
    }
    Ok(result)
}

/// The three-column failure instance, optionally written to input files.
pub fn cmd_counterexample(spec: &CounterexampleSpec) -> CliResult<ExperimentResult> {
    let ce = counterexample_k2();
    if let Some(path) = &spec.write_matrix {
        write_text(path, &format_matrix(&ce.a))?;
    }
    if let Some(path) = &spec.write_signal {
        write_text(path, &format_signal(&ce.x))?;
    }
    let mut result = ExperimentResult::new("counterexample", None);
    let mut matrix = Table::new("matrix", &["row", "a1", "a2", "a3", "y"]);
    for i in 0..ce.a.rows() {
        let mut row: Vec<Value> = vec![(i + 1).into()];
        row.extend(ce.a.row(i).into_iter().map(Value::from));
        row.push(ce.y[i].into());
        matrix.push(row);
    }
    let mut signal = Table::new("signal", &["index", "value"]);
    for (i, v) in ce.x.support().iter().zip(ce.x.values()) {
        signal.push(vec![(i + 1).into(), (*v).into()]);
    }
    result.tables = vec![matrix, signal];
    Ok(result)
}

/// One row of recovery thresholds per sparsity level.
pub fn cmd_bounds(spec: &BoundsSpec) -> CliResult<ExperimentResult> {
    if spec.k_max == 0 {
        return Err(CliError::Usage("--k-max must be at least 1".into()));
    }
    if spec.l == Some(0) {
        return Err(CliError::Usage("--L must be at least 1".into()));
    }
    let mut columns = vec![
        "k",
        "sufficient_new",
        "necessary_new",
        "sufficient_prior",
        "necessary_prior",
        "general_matrix",
        "ordered",
    ];
    if spec.l.is_some() {
        columns.extend(["mols_order", "mols_threshold"]);
    }
    let mut table = Table::new("bounds", &columns);
    for k in 1..=spec.k_max {
        let b = bound_table(k)?;
        let mut row: Vec<Value> = vec![
            k.into(),
            b.sufficient_new.into(),
            b.necessary_new.into(),
            b.sufficient_prior.into(),
            b.necessary_prior.into(),
            b.general_matrix.into(),
            b.is_ordered().into(),
        ];
        if let Some(l) = spec.l {
            let t = mols_threshold(k, l).ok();
            row.push(t.map(|t| t.order).into());
            row.push(t.map(|t| t.threshold).into());
        }
        table.push(row);
    }
    let mut result = ExperimentResult::new("bounds", None);
    result.tables.push(table);
    Ok(result)
}

/// Outcome of one algorithm on one trial.
#[derive(Clone, Copy)]
enum Outcome {
    Success,
    Failure,
    Error,
    NotApplicable,
}

/// Success rates per `(m, K)` cell. Trial `i` of every cell draws matrix and
/// signal from stream `i`.
pub fn cmd_phase(spec: &PhaseSpec) -> CliResult<ExperimentResult> {
    if spec.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if spec.m_values.is_empty() || spec.k_values.is_empty() || spec.algorithms.is_empty() {
        return Err(CliError::Usage(
            "phase needs at least one m, K and algorithm".into(),
        ));
    }
    let mut table = Table::new(
        "phase",
        &[
            "ensemble",
            "m",
            "n",
            "k",
            "algorithm",
            "trials",
            "successes",
            "errors",
            "success_rate",
        ],
    );
    for &m in &spec.m_values {
        EnsembleSpec {
            kind: spec.kind,
            m,
            n: spec.n,
            seed: spec.seed,
        }
        .validate()?;
        for &k in &spec.k_values {
            if k == 0 || k > spec.n {
                return Err(crate::Error::InvalidSparsity { k, max: spec.n }.into());
            }
            let outcomes: Vec<Vec<Outcome>> = (0..spec.trials)
                .into_par_iter()
                .map(|trial| phase_trial(spec, m, k, trial as u64))
                .collect();
            for (ai, alg) in spec.algorithms.iter().enumerate() {
                let column: Vec<Outcome> = outcomes.iter().map(|o| o[ai]).collect();
                if column.iter().all(|o| matches!(o, Outcome::NotApplicable)) {
                    continue;
                }
                let successes = column
                    .iter()
                    .filter(|o| matches!(o, Outcome::Success))
                    .count();
                let errors = column
                    .iter()
                    .filter(|o| matches!(o, Outcome::Error))
                    .count();
                table.push(vec![
                    ensemble_label(spec.kind, m, spec.n).into(),
                    m.into(),
                    spec.n.into(),
                    k.into(),
                    alg.name().into(),
                    spec.trials.into(),
                    successes.into(),
                    errors.into(),
                    (successes as f64 / spec.trials as f64).into(),
                ]);
            }
        }
    }
    let mut result = ExperimentResult::new("phase", Some(spec.seed));
    result.tables.push(table);
    Ok(result)
}

fn phase_trial(spec: &PhaseSpec, m: usize, k: usize, stream: u64) -> Vec<Outcome> {
    let mut rng = trial_rng(spec.seed, stream);
    let a = sample_matrix(spec.kind, m, spec.n, &mut rng);
    let x = random_sparse(spec.n, k, &mut rng).expect("validated sparsity");
    let y = a.mul_vec(&x.to_dense()).expect("matching dimensions");
    spec.algorithms
        .iter()
        .map(|&alg| {
            if let Algorithm::Mols { per_iteration } = alg {
                if per_iteration > k || per_iteration * k > m {
                    return Outcome::NotApplicable;
                }
            }
            match pursue(alg, &a, &y, k) {
                Ok(t) if t.succeeds(x.support()) => Outcome::Success,
                Ok(_) => Outcome::Failure,
                Err(_) => Outcome::Error,
            }
        })
        .collect()
}

/// Evaluates the recovery inequalities on random instances from each family
/// (trial `i` on stream `i`) and optionally the failure instance.
pub fn cmd_lemma_check(spec: &LemmaCheckSpec) -> CliResult<ExperimentResult> {
    if spec.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if spec.families.is_empty() && !spec.include_counterexample {
        return Err(CliError::Usage(
            "lemma-check needs at least one instance family".into(),
        ));
    }
    let mut families = Table::new(
        "families",
        &[
            "family",
            "k",
            "instances",
            "errors",
            "theorem_hypothesis",
            "recovered",
        ],
    );
    let mut total = LemmaTally::default();
    for fam in &spec.families {
        EnsembleSpec {
            kind: fam.kind,
            m: fam.m,
            n: fam.n,
            seed: spec.seed,
        }
        .validate()?;
        if fam.k == 0 || fam.k >= fam.n {
            return Err(crate::Error::InvalidSparsity {
                k: fam.k,
                max: fam.n - 1,
            }
            .into());
        }
        let checks: Vec<crate::Result<InstanceChecks>> = (0..spec.trials as u64)
            .into_par_iter()
            .map(|stream| {
                let mut rng = trial_rng(spec.seed, stream);
                let a = sample_matrix(fam.kind, fam.m, fam.n, &mut rng);
                let x = random_sparse(fam.n, fam.k, &mut rng)?;
                check_instance(&a, &x)
            })
            .collect();
        let mut errors = 0;
        let (mut hyp, mut rec) = (0usize, 0usize);
        for c in checks {
            match c {
                Ok(c) => {
                    hyp += c.theorem_hypothesis as usize;
                    rec += c.recovered as usize;
                    total.add(&c);
                }
                Err(e) if e.is_numerical() => errors += 1,
                Err(e) => return Err(e.into()),
            }
        }
        families.push(vec![
            ensemble_label(fam.kind, fam.m, fam.n).into(),
            fam.k.into(),
            spec.trials.into(),
            errors.into(),
            hyp.into(),
            rec.into(),
        ]);
    }
    if spec.include_counterexample {
        let ce = counterexample_k2();
        let c = check_instance(&ce.a, &ce.x)?;
        total.add(&c);
        families.push(vec![
            "counterexample".into(),
            ce.x.sparsity().into(),
            1usize.into(),
            0usize.into(),
            (c.theorem_hypothesis as usize).into(),
            (c.recovered as usize).into(),
        ]);
    }

    let mut checks = Table::new(
        "checks",
        &[
            "check",
            "instances",
            "evaluations",
            "violations",
            "skipped",
            "min_margin",
        ],
    );
    for (name, (t, inst)) in CHECK_ROWS
        .iter()
        .zip(total.rows.iter().zip(total.instances))
    {
        checks.push(vec![
            (*name).into(),
            inst.into(),
            t.evaluations.into(),
            t.violations.into(),
            t.skipped.into(),
            t.min_margin.into(),
        ]);
    }
    let mut result = ExperimentResult::new("lemma-check", Some(spec.seed));
    result.tables = vec![checks, families];
    Ok(result)
}

/// Grid search of the 3x3 Gram family for the failing instance with the
/// smallest `δ₃`.
pub fn cmd_scan_gram(spec: &ScanGramSpec) -> CliResult<ExperimentResult> {
    let scan = scan_gram_family(spec.step)?;
    let mut table = Table::new(
        "scan",
        &[
            "step",
            "min_delta3",
            "argmin_a",
            "argmin_b",
            "evaluated",
            "not_positive_definite",
            "failing",
        ],
    );
    table.push(vec![
        spec.step.into(),
        scan.min_delta3.into(),
        scan.argmin.0.into(),
        scan.argmin.1.into(),
        scan.evaluated.into(),
        scan.not_positive_definite.into(),
        scan.failing.into(),
    ]);
    let mut result = ExperimentResult::new("scan-gram", None);
    result.tables.push(table);
    Ok(result)
}
