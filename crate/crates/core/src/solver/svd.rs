//! Singular value decomposition by one-sided Jacobi rotations, preconditioned
//! with a column-pivoted QR factorization.
//!
//! With `A P = Q R`, the Jacobi iteration runs on the columns of `X = Rᴴ`:
//! `X W = G` with `G` column-orthogonal. Then `σ_j = ‖g_j‖`, the right
//! singular vectors of `A` are `P g_j / σ_j` and `u_jᴴ b = w_jᴴ (Qᴴ b)`.
//! Small singular values come out with high relative accuracy, which is what
//! the truncation threshold looks at.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::cpqr;
use crate::error::{Result, WbmError};

const MAX_SWEEPS: usize = 80;

type C = Complex64;

/// Singular values in descending order; with `b`, also the matching right
/// singular vectors (as columns) and projections `u_jᴴ b`.
pub(crate) struct Spectrum {
    pub sigma: Vec<f64>,
    pub v: Option<DMatrix<C>>,
    pub utb: Option<Vec<C>>,
}

/// Column-major square matrix as a vector of columns.
struct Columns {
    cols: Vec<Vec<C>>,
}

impl Columns {
    fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| {
                let mut c = vec![C::new(0.0, 0.0); n];
                c[j] = C::new(1.0, 0.0);
                c
            })
            .collect();
        Self { cols }
    }

    fn pair(&mut self, p: usize, q: usize) -> (&mut [C], &mut [C]) {
        debug_assert!(p < q);
        let (lo, hi) = self.cols.split_at_mut(q);
        (&mut lo[p], &mut hi[0])
    }
}

/// With `h = e^{−iφ} q`, applies `p' = c p − s h`, `h' = s p + c h` and
/// `q' = e^{iφ} h'`. Returns the new squared norms.
fn rotate(p: &mut [C], q: &mut [C], c: f64, s: f64, phase: C) -> (f64, f64) {
    let (mut np, mut nq) = (0.0, 0.0);
    let conj_phase = phase.conj();
    for (x, y) in p.iter_mut().zip(q.iter_mut()) {
        let h = conj_phase * *y;
        let xp = *x * c - h * s;
        let hp = *x * s + h * c;
        *x = xp;
        *y = phase * hp;
        np += xp.norm_sqr();
        nq += hp.norm_sqr();
    }
    (np, nq)
}

fn rotate_only(p: &mut [C], q: &mut [C], c: f64, s: f64, phase: C) {
    let conj_phase = phase.conj();
    for (x, y) in p.iter_mut().zip(q.iter_mut()) {
        let h = conj_phase * *y;
        let xp = *x * c - h * s;
        *y = phase * (*x * s + h * c);
        *x = xp;
    }
}

/// Orthogonalizes the columns of `g` in place, accumulating the rotations
/// into `w` when given.
fn jacobi(g: &mut Columns, mut w: Option<&mut Columns>) -> Result<()> {
    let n = g.cols.len();
    let tol = f64::EPSILON * (n as f64).sqrt();
    let mut norms: Vec<f64> = g
        .cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (a, b) = (norms[p], norms[q]);
                if a == 0.0 || b == 0.0 {
                    continue;
                }
                let (gp, gq) = g.pair(p, q);
                let gamma: C = gp.iter().zip(gq.iter()).map(|(x, y)| x.conj() * y).sum();
                let mag = gamma.norm();
                if mag <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / mag;
                let zeta = (b - a) / (2.0 * mag);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                let (np, nq) = rotate(gp, gq, c, s, phase);
                norms[p] = np;
                norms[q] = nq;
                if let Some(w) = w.as_deref_mut() {
                    let (wp, wq) = w.pair(p, q);
                    rotate_only(wp, wq, c, s, phase);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(WbmError::InvalidInput(format!(
        "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"
    )))
}

pub(crate) fn spectrum(a: &DMatrix<C>, b: Option<&DVector<C>>) -> Result<Spectrum> {
    let (m, n) = a.shape();
    let keep = m.min(n);
    // Wide systems are padded with zero rows; the extra singular values are
    // zeros and get dropped below.
    let rows = m.max(n);
    let padded;
    let a = if m < n {
        padded = a.clone().resize_vertically(rows, C::new(0.0, 0.0));
        &padded
    } else {
        a
    };
    let rhs = match b {
        Some(b) => b.clone().resize_vertically(rows, C::new(0.0, 0.0)),
        None => DVector::from_element(rows, C::new(0.0, 0.0)),
    };
    let qr = cpqr::factor(a, &rhs, 0.0);

    // Columns of X = Rᴴ are the conjugated rows of R.
    let mut g = Columns {
        cols: (0..n)
            .map(|j| (0..n).map(|i| if i >= j { qr.r[(j, i)].conj() } else { C::new(0.0, 0.0) }).collect())
            .collect(),
    };
    let want_vectors = b.is_some();
    let mut w = want_vectors.then(|| Columns::identity(n));
    jacobi(&mut g, w.as_mut())?;

    let sigma: Vec<f64> = g
        .cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    order.truncate(keep);

    let (v, utb) = match w {
        Some(w) => {
            let mut v = DMatrix::from_element(n, keep, C::new(0.0, 0.0));
            let mut utb = Vec::with_capacity(keep);
            for (k, &j) in order.iter().enumerate() {
                let s = sigma[j];
                if s > 0.0 {
                    for (i, gij) in g.cols[j].iter().enumerate() {
                        v[(qr.perm[i], k)] = gij / s;
                    }
                }
                utb.push(
                    w.cols[j]
                        .iter()
                        .zip(qr.qtb.iter())
                        .map(|(wi, bi)| wi.conj() * bi)
                        .sum(),
                );
            }
            (Some(v), Some(utb))
        }
        None => (None, None),
    };
    Ok(Spectrum {
        sigma: order.iter().map(|&j| sigma[j]).collect(),
        v,
        utb,
    })
}
