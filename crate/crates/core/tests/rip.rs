mod common;

use std::path::Path;

use pursuit_lab::cli::{check_instance, read_matrix, read_signal, LemmaTally};
use pursuit_lab::constructions::{
    counterexample_k2, sample_matrix, sharp_projection_matrix, trial_rng, EnsembleKind,
};
use pursuit_lab::matcore::DenseMatrix;
use pursuit_lab::rip::{
    bound_table, delta_monotone_check, exact_delta, normalize_columns, projection_lower_bound,
    transfer_bound, Side,
};
use pursuit_lab::Error;
use rand::Rng;

#[test]
fn exact_delta_matches_closed_form() {
    for stream in 0..15 {
        let a = sample_matrix(
            EnsembleKind::GaussianNormalized,
            6,
            9,
            &mut trial_rng(31, stream),
        );
        for k in 1..=3 {
            let got = exact_delta(&a, k).unwrap().delta;
            let want = common::delta_closed_form(&a, k);
            assert!((got - want).abs() < 1e-10, "order {k}: {got} vs {want}");
        }
    }
}

#[test]
fn certificate_names_extremal_subset() {
    let ce = counterexample_k2();
    let c = exact_delta(&ce.a, 3).unwrap();
    assert!((c.delta - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(c.side, Side::Lower);
    assert_eq!(c.extremal_subset, vec![0, 1, 2]);
    assert!((c.extremal_eigenvalue - 1.0 / 3.0).abs() < 1e-12);
    let c2 = exact_delta(&ce.a, 2).unwrap();
    assert!((c2.delta - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn monotone_in_order() {
    let a = sample_matrix(
        EnsembleKind::UniformNormalized,
        8,
        11,
        &mut trial_rng(32, 0),
    );
    for k in 1..5 {
        assert!(delta_monotone_check(&a, k, k + 1).unwrap());
    }
}

#[test]
fn sharp_instance_attains_projection_bound() {
    for rho in [0.2, 0.6] {
        for s in 1..=4 {
            let a = sharp_projection_matrix(rho, s).unwrap();
            let s_set: Vec<usize> = (0..s).collect();
            let p = projection_lower_bound(&a, &s_set, s).unwrap();
            assert!((p.delta - rho).abs() < 1e-10);
            assert!((p.observed - p.bound).abs() < 1e-10);
            let direct = common::norm(&common::complement(&a, &s_set, a.column(s)));
            assert!((direct - (1.0 - rho * rho).sqrt()).abs() < 1e-12);
        }
    }
}

#[test]
fn projection_bound_needs_unit_columns() {
    let a = DenseMatrix::diagonal(&[1.0, 2.0]).unwrap();
    assert!(matches!(
        projection_lower_bound(&a, &[0], 1),
        Err(Error::NotUnitColumns { column: 1, .. })
    ));
}

#[test]
fn transfer_bound_is_sound() {
    let mut rng = trial_rng(33, 0);
    let mut checked = 0;
    for stream in 0..60 {
        let base = sample_matrix(
            EnsembleKind::NearOrthonormal { spread: 0.5 },
            10,
            10,
            &mut trial_rng(34, stream),
        );
        let scales: Vec<f64> = (0..10).map(|_| rng.random_range(0.8..1.2)).collect();
        let a_hat = base.scale_columns(&scales).unwrap();
        let delta_hat = exact_delta(&a_hat, 2).unwrap().delta;
        if delta_hat >= 1.0 {
            continue;
        }
        let (a, d) = normalize_columns(&a_hat).unwrap();
        for (di, si) in d.iter().zip(&scales) {
            assert!((di * si - 1.0).abs() < 1e-12);
        }
        let delta = exact_delta(&a, 2).unwrap().delta;
        let b = transfer_bound(delta_hat, &d).unwrap();
        assert!(delta <= b.gamma + 1e-10);
        assert!(b.gamma <= b.corollary_bound + 1e-10);
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
#[allow(clippy::approx_constant)]
fn bound_table_k2() {
    let b = bound_table(2).unwrap();
    assert!((b.sufficient_new - 0.577350).abs() < 1e-6);
    assert!((b.necessary_new - 2.0 / 3.0).abs() < 1e-12);
    assert!((b.sufficient_prior - 0.292893).abs() < 1e-6);
    assert!((b.necessary_prior - 0.707107).abs() < 1e-6);
    assert!((b.general_matrix - 1.0 / (2.0 * 3f64.sqrt() + 1.0)).abs() < 1e-15);
}

#[test]
fn residual_inequality_fails_at_stated_order() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let a = read_matrix(&dir.join("residual_bound_stated_order.txt")).unwrap();
    let x = read_signal(&dir.join("residual_bound_stated_order_signal.txt")).unwrap();
    let mut tally = LemmaTally::default();
    tally.add(&check_instance(&a, &x).unwrap());
    assert_eq!(tally.row("residual_bound").unwrap().0.violations, 1);
    assert_eq!(
        tally
            .row("residual_bound_order_k_plus_1")
            .unwrap()
            .0
            .violations,
        0
    );

    // The same numbers without the library: OLS picks 7 then 2 (1-based),
    // both on the support, leaving u = x_5.
    let y = common::complement(&a, &[], &a.mul_vec(&x.to_dense()).unwrap());
    assert_eq!(common::ols_by_residual(&a, &y, 2), vec![6, 1]);
    let tk = [1, 6];
    let r = common::complement(&a, &tk, &y);
    let off: Vec<usize> = (0..18).filter(|i| ![1, 4, 6].contains(i)).collect();
    let scores = common::ols_scores(&a, &tk, &r);
    let j0 = *off
        .iter()
        .max_by(|&&i, &&j| scores[i].total_cmp(&scores[j]))
        .unwrap();
    let proj = common::norm(&common::complement(&a, &tk, a.column(j0)));
    let alpha = 1.0 / (proj * proj);
    let delta2 = common::delta_closed_form(&a, 2);
    assert!(
        delta2 < 1.0 / (alpha + 1.0).sqrt(),
        "hypothesis at order K-k+1 = 2 holds"
    );
    let worst = off
        .iter()
        .map(|&j| common::dot(a.column(j), &r).abs())
        .fold(0.0, f64::max);
    let lhs = common::dot(&r, &r);
    let rhs = alpha.sqrt() * x.value_at(4).abs() * worst;
    assert!(lhs < rhs, "{lhs} >= {rhs}");
    // Order K+1 = 4 does not satisfy the hypothesis on this matrix.
    assert!(exact_delta(&a, 4).unwrap().delta >= 1.0 / (alpha + 1.0).sqrt());
}

#[test]
fn enumeration_guard() {
    let a = sample_matrix(
        EnsembleKind::GaussianNormalized,
        10,
        60,
        &mut trial_rng(35, 0),
    );
    assert!(matches!(exact_delta(&a, 6), Err(Error::TooLarge { .. })));
}
