//! Reference computations that share no code with the library: normal
//! equations instead of QR, closed-form eigenvalues instead of Jacobi, and the
//! raw residual criterion instead of correlation scores.

#![allow(dead_code)]

use pursuit_lab::matcore::DenseMatrix;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `M z = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        m.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= f * p;
            }
            b[r] -= f * b[c];
        }
    }
    let mut z = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| m[c][k] * z[k]).sum();
        z[c] = (b[c] - s) / m[c][c];
    }
    z
}

/// Least squares on the columns `cols` through the normal equations.
pub fn normal_equations(a: &DenseMatrix, cols: &[usize], y: &[f64]) -> Vec<f64> {
    let g: Vec<Vec<f64>> = cols
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| dot(a.column(i), a.column(j)))
                .collect()
        })
        .collect();
    let rhs: Vec<f64> = cols.iter().map(|&i| dot(a.column(i), y)).collect();
    solve(g, rhs)
}

/// `v − A_S (A_Sᵀ A_S)⁻¹ A_Sᵀ v`.
pub fn complement(a: &DenseMatrix, cols: &[usize], v: &[f64]) -> Vec<f64> {
    if cols.is_empty() {
        return v.to_vec();
    }
    let z = normal_equations(a, cols, v);
    let mut out = v.to_vec();
    for (zi, &c) in z.iter().zip(cols) {
        for (o, aij) in out.iter_mut().zip(a.column(c)) {
            *o -= zi * aij;
        }
    }
    out
}

/// Eigenvalues of `[[p, q], [q, r]]`, ascending.
pub fn eig2(p: f64, q: f64, r: f64) -> [f64; 2] {
    let mean = 0.5 * (p + r);
    let rad = (0.25 * (p - r) * (p - r) + q * q).sqrt();
    [mean - rad, mean + rad]
}

/// Eigenvalues of a symmetric 3x3 matrix from the trigonometric solution of
/// its characteristic cubic, ascending.
pub fn eig3(m: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    let mut b = m;
    for (i, row) in b.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v /= p;
        }
        row[i] -= q / p;
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    [lo, 3.0 * q - hi - lo, hi]
}

/// Isometry constant of order 1, 2 or 3 with closed-form eigenvalues.
pub fn delta_closed_form(a: &DenseMatrix, k: usize) -> f64 {
    let n = a.cols();
    let g = |i: usize, j: usize| dot(a.column(i), a.column(j));
    let mut worst = 0.0f64;
    let mut visit = |ev: &[f64]| {
        worst = worst.max(ev[ev.len() - 1] - 1.0).max(1.0 - ev[0]);
    };
    match k {
        1 => (0..n).for_each(|i| visit(&[g(i, i)])),
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    visit(&eig2(g(i, i), g(i, j), g(j, j)));
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    for l in j + 1..n {
                        let s = [i, j, l];
                        let mut m = [[0.0; 3]; 3];
                        for (r, &si) in s.iter().enumerate() {
                            for (c, &sj) in s.iter().enumerate() {
                                m[r][c] = g(si, sj);
                            }
                        }
                        visit(&eig3(m));
                    }
                }
            }
        }
        _ => panic!("closed form only for orders 1 to 3"),
    }
    worst
}

/// OLS straight from its definition: add the index whose inclusion leaves
/// the smallest residual. Candidates within a relative 1e-12 band of the
/// minimum go to the smallest index.
pub fn ols_by_residual(a: &DenseMatrix, y: &[f64], k: usize) -> Vec<usize> {
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..k {
        let residuals: Vec<(usize, f64)> = (0..a.cols())
            .filter(|i| !support.contains(i))
            .map(|i| {
                let mut t = support.clone();
                t.push(i);
                let r = complement(a, &t, y);
                (i, dot(&r, &r))
            })
            .collect();
        let best = residuals.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let band = 1e-12 * dot(y, y);
        let pick = residuals.iter().find(|p| p.1 <= best + band).unwrap().0;
        support.push(pick);
    }
    support
}

/// `|⟨A_i, r⟩| / ‖P⊥_T A_i‖` for every `i`, zero on `T`.
pub fn ols_scores(a: &DenseMatrix, support: &[usize], r: &[f64]) -> Vec<f64> {
    (0..a.cols())
        .map(|i| {
            if support.contains(&i) {
                0.0
            } else {
                dot(a.column(i), r).abs() / norm(&complement(a, support, a.column(i)))
            }
        })
        .collect()
}
