use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matcore::{dot, norm, DenseMatrix};
use crate::pursuit::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleKind {
    /// i.i.d. N(0, 1) entries, columns scaled to unit norm.
    GaussianNormalized,
    /// i.i.d. U(−1, 1) entries, columns scaled to unit norm.
    UniformNormalized,
    /// Orthonormal columns plus `spread`-scaled Gaussian noise, then
    /// normalized. Requires `n <= m`; small spreads give small isometry
    /// constants at every order.
    NearOrthonormal { spread: f64 },
}

impl EnsembleKind {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::GaussianNormalized => "gaussian",
            EnsembleKind::UniformNormalized => "uniform",
            EnsembleKind::NearOrthonormal { .. } => "nearortho",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidShape(format!(
                "{}x{} ensemble",
                self.m, self.n
            )));
        }
        match self.kind {
            EnsembleKind::NearOrthonormal { spread } => {
                if self.n > self.m {
                    return Err(Error::InvalidShape(format!(
                        "near-orthonormal ensemble needs n <= m, got {}x{}",
                        self.m, self.n
                    )));
                }
                if !(spread >= 0.0 && spread.is_finite()) {
                    return Err(Error::DomainError(format!("spread {spread} must be >= 0")));
                }
            }
            _ => {
                if self.m > self.n {
                    return Err(Error::InvalidShape(format!(
                        "ensemble needs m <= n, got {}x{}",
                        self.m, self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generator for trial `stream` under master `seed`. Streams are independent
/// ChaCha8 sequences, so trial `i` can be regenerated on its own.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn unit_column<R: Rng + ?Sized>(rng: &mut R, m: usize, draw: impl Fn(&mut R) -> f64) -> Vec<f64> {
    loop {
        let mut c: Vec<f64> = (0..m).map(|_| draw(rng)).collect();
        let nrm = norm(&c);
        if nrm > 1e-12 {
            c.iter_mut().for_each(|v| *v /= nrm);
            return c;
        }
    }
}

fn near_orthonormal<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    spread: f64,
) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut c: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        // Two Gram-Schmidt passes.
        for _ in 0..2 {
            for q in &basis {
                let p = dot(q, &c);
                c.iter_mut().zip(q).for_each(|(v, qi)| *v -= p * qi);
            }
        }
        let nrm = norm(&c);
        if nrm > 1e-8 {
            c.iter_mut().for_each(|v| *v /= nrm);
            basis.push(c);
        }
    }
    let scale = spread / (m as f64).sqrt();
    basis
        .into_iter()
        .map(|q| {
            let mut c: Vec<f64> = q
                .iter()
                .map(|v| v + scale * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let nrm = norm(&c);
            c.iter_mut().for_each(|v| *v /= nrm);
            c
        })
        .collect()
}

/// Draws an `m x n` matrix of the given kind from `rng`.
pub fn sample_matrix<R: Rng + ?Sized>(
    kind: EnsembleKind,
    m: usize,
    n: usize,
    rng: &mut R,
) -> DenseMatrix {
    let columns: Vec<Vec<f64>> = match kind {
        EnsembleKind::GaussianNormalized => (0..n)
            .map(|_| unit_column(rng, m, |r| r.sample(StandardNormal)))
            .collect(),
        EnsembleKind::UniformNormalized => (0..n)
            .map(|_| unit_column(rng, m, |r| r.random_range(-1.0..1.0)))
            .collect(),
        EnsembleKind::NearOrthonormal { spread } => near_orthonormal(rng, m, n, spread),
    };
    DenseMatrix::from_columns(&columns).expect("finite unit columns")
}

/// The ensemble's matrix for its seed (stream 0).
pub fn sample_ensemble(spec: &EnsembleSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    Ok(sample_matrix(
        spec.kind,
        spec.m,
        spec.n,
        &mut trial_rng(spec.seed, 0),
    ))
}

/// Uniformly random `k`-subset support with N(0, 1) values (redrawn while
/// smaller than 1e-3 in magnitude).
pub fn random_sparse<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<SparseVector> {
    if k == 0 || k > n {
        return Err(Error::InvalidSparsity { k, max: n });
    }
    let mut support = sample(rng, n, k).into_vec();
    support.sort_unstable();
    let values = (0..k)
        .map(|_| loop {
            let v: f64 = rng.sample(StandardNormal);
            if v.abs() >= 1e-3 {
                break v;
            }
        })
        .collect();
    SparseVector::new(n, support, values)
}
