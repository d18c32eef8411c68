mod common;

use proptest::prelude::*;
use pursuit_lab::cli::format_significant;
use pursuit_lab::constructions::{random_sparse, sample_matrix, trial_rng, EnsembleKind};
use pursuit_lab::matcore::{project_complement, DenseMatrix};
use pursuit_lab::pursuit::run_ols;
use pursuit_lab::rip::{exact_delta, normalize_columns, transfer_bound};

fn matrix(m: usize, n: usize, seed: u64) -> DenseMatrix {
    sample_matrix(
        EnsembleKind::GaussianNormalized,
        m,
        n,
        &mut trial_rng(seed, 0),
    )
}

fn subset(n: usize, bits: u32, max: usize) -> Vec<usize> {
    (0..n).filter(|i| bits >> i & 1 == 1).take(max).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_idempotent_and_contracting(seed in any::<u64>(), bits in any::<u32>(), v in prop::collection::vec(-5.0f64..5.0, 8)) {
        let a = matrix(8, 10, seed);
        let s = subset(10, bits, 5);
        let p = project_complement(&a, &s, &v).unwrap();
        let pp = project_complement(&a, &s, &p).unwrap();
        prop_assert!(pp.max_abs_diff(&p) < 1e-10);
        prop_assert!(p.norm() <= common::norm(&v) + 1e-12);
    }

    #[test]
    fn ols_residual_orthogonal_and_monotone(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = trial_rng(seed, 1);
        let a = sample_matrix(EnsembleKind::GaussianNormalized, 9, 13, &mut rng);
        let x = random_sparse(13, k, &mut rng).unwrap();
        let y = a.mul_vec(&x.to_dense()).unwrap();
        let t = run_ols(&a, &y, k).unwrap();
        let mut last = y.norm();
        for it in &t.iterations {
            prop_assert!(it.residual_norm_after <= last + 1e-12);
            last = it.residual_norm_after;
            let r = project_complement(&a, &it.support_after, &y).unwrap();
            prop_assert!((r.norm() - it.residual_norm_after).abs() < 1e-10);
            for &i in &it.support_after {
                prop_assert!(common::dot(a.column(i), &r).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ols_ignores_column_scale(seed in any::<u64>(), scales in prop::collection::vec(0.1f64..10.0, 12)) {
        let mut rng = trial_rng(seed, 2);
        let a = sample_matrix(EnsembleKind::UniformNormalized, 8, 12, &mut rng);
        let x = random_sparse(12, 3, &mut rng).unwrap();
        let y = a.mul_vec(&x.to_dense()).unwrap();
        let scaled = a.scale_columns(&scales).unwrap();
        let s1 = run_ols(&a, &y, 3).unwrap().selection_sequence();
        let s2 = run_ols(&scaled, &y, 3).unwrap().selection_sequence();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn rip_sandwich(seed in any::<u64>(), k in 1usize..4, bits in any::<u32>(), coef in prop::collection::vec(-3.0f64..3.0, 3)) {
        let a = matrix(7, 9, seed);
        let delta = exact_delta(&a, k).unwrap().delta;
        let mut s = subset(9, bits, k);
        for i in 0..9 {
            if s.len() == k { break; }
            if !s.contains(&i) { s.push(i); }
        }
        let mut x = vec![0.0; 9];
        for (&i, c) in s.iter().zip(&coef) {
            x[i] = *c;
        }
        let xx = common::dot(&x, &x);
        let ax = a.mul_vec(&x).unwrap();
        let energy = common::dot(&ax, &ax);
        prop_assert!(energy >= (1.0 - delta) * xx - 1e-10);
        prop_assert!(energy <= (1.0 + delta) * xx + 1e-10);
    }

    #[test]
    fn projected_rip(seed in any::<u64>(), b1 in any::<u32>(), b2 in any::<u32>(), coef in prop::collection::vec(-3.0f64..3.0, 10)) {
        let a = matrix(8, 10, seed);
        let s1 = subset(10, b1, 2);
        let s2: Vec<usize> = subset(10, b2, 3).into_iter().filter(|i| !s1.contains(i)).collect();
        prop_assume!(!s2.is_empty());
        let mut union = s1.clone();
        union.extend(&s2);
        let delta = exact_delta(&a, union.len()).unwrap().delta;
        let mut u = vec![0.0; 10];
        for &i in &s2 {
            u[i] = coef[i];
        }
        let uu = common::dot(&u, &u);
        let p = project_complement(&a, &s1, &a.mul_vec(&u).unwrap()).unwrap();
        let pp = p.dot(&p);
        prop_assert!(pp >= (1.0 - delta) * uu - 1e-10);
        prop_assert!(pp <= (1.0 + delta) * uu + 1e-10);
    }

    #[test]
    fn transfer_bound_sound(seed in any::<u64>(), scales in prop::collection::vec(0.85f64..1.15, 8), k in 1usize..4) {
        let base = sample_matrix(EnsembleKind::NearOrthonormal { spread: 0.4 }, 10, 8, &mut trial_rng(seed, 3));
        let a_hat = base.scale_columns(&scales).unwrap();
        let delta_hat = exact_delta(&a_hat, k).unwrap().delta;
        prop_assume!(delta_hat < 1.0);
        let (a, d) = normalize_columns(&a_hat).unwrap();
        let b = transfer_bound(delta_hat, &d).unwrap();
        let delta = exact_delta(&a, k).unwrap().delta;
        prop_assert!(delta <= b.gamma + 1e-10);
        prop_assert!(b.gamma <= b.corollary_bound + 1e-10);
    }

    #[test]
    fn formatting_keeps_twelve_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = format_significant(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
    }
}
