use super::dense::{dot, DenseMatrix, Vector};
use crate::error::{Error, Result};
use crate::tolerances::RANK_RELATIVE;

/// Householder QR of an `m x p` column block, `p <= m`.
struct HouseholderQr {
    m: usize,
    p: usize,
    /// Column-major; upper triangle holds R above the diagonal.
    r: Vec<f64>,
    diag: Vec<f64>,
    reflectors: Vec<Vec<f64>>,
}

impl HouseholderQr {
    fn factor(m: usize, p: usize, mut r: Vec<f64>) -> Result<Self> {
        if p > m {
            return Err(Error::RankDeficient {
                min_diag: 0.0,
                max_diag: 0.0,
            });
        }
        let mut diag = vec![0.0; p];
        let mut reflectors = Vec::with_capacity(p);
        for k in 0..p {
            let x = &r[k * m + k..(k + 1) * m];
            let xnorm = dot(x, x).sqrt();
            if xnorm == 0.0 {
                reflectors.push(Vec::new());
                continue;
            }
            let alpha = if x[0] > 0.0 { -xnorm } else { xnorm };
            let mut v = x.to_vec();
            v[0] -= alpha;
            let vv = dot(&v, &v);
            diag[k] = alpha;
            if vv > 0.0 {
                for j in k + 1..p {
                    let col = &mut r[j * m + k..(j + 1) * m];
                    let s = 2.0 * dot(&v, col) / vv;
                    for (c, vi) in col.iter_mut().zip(&v) {
                        *c -= s * vi;
                    }
                }
                reflectors.push(v);
            } else {
                reflectors.push(Vec::new());
            }
        }
        let max_diag = diag.iter().fold(0.0_f64, |a, d| a.max(d.abs()));
        let min_diag = diag.iter().fold(f64::INFINITY, |a, d| a.min(d.abs()));
        if max_diag == 0.0 || min_diag <= RANK_RELATIVE * max_diag {
            return Err(Error::RankDeficient { min_diag, max_diag });
        }
        Ok(HouseholderQr {
            m,
            p,
            r,
            diag,
            reflectors,
        })
    }

    fn apply_qt(&self, y: &mut [f64]) {
        for (k, v) in self.reflectors.iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let vv = dot(v, v);
            let tail = &mut y[k..];
            let s = 2.0 * dot(v, tail) / vv;
            for (t, vi) in tail.iter_mut().zip(v) {
                *t -= s * vi;
            }
        }
    }

    fn apply_q(&self, y: &mut [f64]) {
        for (k, v) in self.reflectors.iter().enumerate().rev() {
            if v.is_empty() {
                continue;
            }
            let vv = dot(v, v);
            let tail = &mut y[k..];
            let s = 2.0 * dot(v, tail) / vv;
            for (t, vi) in tail.iter_mut().zip(v) {
                *t -= s * vi;
            }
        }
    }

    fn solve(&self, y: &[f64]) -> Vec<f64> {
        let mut qty = y.to_vec();
        self.apply_qt(&mut qty);
        let mut c = vec![0.0; self.p];
        for k in (0..self.p).rev() {
            let mut s = qty[k];
            for (j, cj) in c.iter().enumerate().skip(k + 1) {
                s -= self.r[j * self.m + k] * cj;
            }
            c[k] = s / self.diag[k];
        }
        c
    }
}

fn gather(a: &DenseMatrix, cols: &[usize]) -> Result<Vec<f64>> {
    let mut buf = Vec::with_capacity(a.rows() * cols.len());
    for &j in cols {
        if j >= a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "column {j} out of range for {} columns",
                a.cols()
            )));
        }
        buf.extend_from_slice(a.column(j));
    }
    Ok(buf)
}

/// Projector onto the orthogonal complement of a fixed column set, factored
/// once and applied to many vectors.
pub(crate) struct ComplementProjector {
    m: usize,
    qr: Option<HouseholderQr>,
}

impl ComplementProjector {
    pub(crate) fn new(a: &DenseMatrix, cols: &[usize]) -> Result<Self> {
        let qr = if cols.is_empty() {
            None
        } else {
            Some(HouseholderQr::factor(
                a.rows(),
                cols.len(),
                gather(a, cols)?,
            )?)
        };
        Ok(ComplementProjector { m: a.rows(), qr })
    }

    pub(crate) fn project(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.m);
        let mut out = v.to_vec();
        if let Some(qr) = &self.qr {
            qr.apply_qt(&mut out);
            out[..qr.p].iter_mut().for_each(|x| *x = 0.0);
            qr.apply_q(&mut out);
        }
        out
    }
}

/// Minimizes `‖y − A c‖₂` over `c` using Householder QR.
///
/// Fails with `RankDeficient` when the columns of `A` are numerically
/// dependent.
pub fn least_squares(a: &DenseMatrix, y: &Vector) -> Result<Vector> {
    let cols: Vec<usize> = (0..a.cols()).collect();
    least_squares_columns(a, &cols, y)
}

/// Least squares restricted to the listed columns of `a`; coefficients follow
/// the order of `cols`.
pub fn least_squares_columns(a: &DenseMatrix, cols: &[usize], y: &[f64]) -> Result<Vector> {
    if y.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but right-hand side of length {}",
            a.rows(),
            y.len()
        )));
    }
    if cols.is_empty() {
        return Ok(Vector::zeros(0));
    }
    let qr = HouseholderQr::factor(a.rows(), cols.len(), gather(a, cols)?)?;
    Ok(Vector::from_raw(qr.solve(y)))
}

/// `P⊥_S v`: the component of `v` orthogonal to the span of the listed
/// columns. An empty column set returns `v` unchanged.
pub fn project_complement(a: &DenseMatrix, cols: &[usize], v: &[f64]) -> Result<Vector> {
    if v.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but vector of length {}",
            a.rows(),
            v.len()
        )));
    }
    if cols.is_empty() {
        return Ok(Vector::from_raw(v.to_vec()));
    }
    let c = least_squares_columns(a, cols, v)?;
    let mut out = v.to_vec();
    for (&j, cj) in cols.iter().zip(c.iter()) {
        for (o, aij) in out.iter_mut().zip(a.column(j)) {
            *o -= aij * cj;
        }
    }
    Ok(Vector::from_raw(out))
}
