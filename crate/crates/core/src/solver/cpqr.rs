//! Householder QR with column pivoting and a relative pivot threshold.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Factorization state after the pivoted elimination stopped.
pub(crate) struct PivotedQr {
    /// Upper triangle holds `R`; the rest is scratch.
    pub r: DMatrix<Complex64>,
    /// `Qᴴ b`.
    pub qtb: DVector<Complex64>,
    /// `perm[j]` is the original column placed at position `j`.
    pub perm: Vec<usize>,
    /// Number of accepted pivots.
    pub rank: usize,
}

/// Eliminates columns until the largest remaining column norm falls below
/// `eps · |r_11|`. Column norms are downdated and recomputed when
/// cancellation makes the downdate unreliable.
pub(crate) fn factor(a: &DMatrix<Complex64>, b: &DVector<Complex64>, eps: f64) -> PivotedQr {
    let (m, n) = a.shape();
    let mut r = a.clone();
    let mut qtb = b.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);

    let col_norm = |r: &DMatrix<Complex64>, j: usize, from: usize| -> f64 {
        r.view((from, j), (m - from, 1)).norm()
    };
    let mut partial: Vec<f64> = (0..n).map(|j| col_norm(&r, j, 0)).collect();
    let mut reference = partial.clone();
    let tol = f64::EPSILON.sqrt();

    let mut r11 = 0.0;
    let mut rank = 0;
    for k in 0..steps {
        let (offset, &best) = partial[k..]
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.total_cmp(y.1))
            .expect("nonempty pivot range");
        let p = k + offset;
        if k == 0 {
            r11 = best;
            if r11 == 0.0 {
                break;
            }
        } else if best < eps * r11 {
            break;
        }
        if p != k {
            r.swap_columns(k, p);
            perm.swap(k, p);
            partial.swap(k, p);
            reference.swap(k, p);
        }

        // Reflector mapping r[k.., k] to alpha e_1.
        let norm_x = col_norm(&r, k, k);
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 > 0.0 {
            for j in k + 1..n {
                reflect(&v, vnorm2, &mut r.column_mut(j).as_mut_slice()[k..]);
            }
            reflect(&v, vnorm2, &mut qtb.as_mut_slice()[k..]);
        }
        r[(k, k)] = alpha;
        for i in k + 1..m {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
        rank = k + 1;

        for j in k + 1..n {
            if partial[j] == 0.0 {
                continue;
            }
            let ratio = r[(k, j)].norm() / partial[j];
            let shrink = (1.0 - ratio * ratio).max(0.0);
            let drift = shrink * (partial[j] / reference[j]).powi(2);
            if drift <= tol {
                partial[j] = if k + 1 < m { col_norm(&r, j, k + 1) } else { 0.0 };
                reference[j] = partial[j];
            } else {
                partial[j] *= shrink.sqrt();
            }
        }
    }

    PivotedQr {
        r,
        qtb,
        perm,
        rank,
    }
}

/// Applies `I - 2 v vᴴ / (vᴴ v)` in place.
fn reflect(v: &[Complex64], vnorm2: f64, x: &mut [Complex64]) {
    let dot: Complex64 = v.iter().zip(x.iter()).map(|(vi, xi)| vi.conj() * xi).sum();
    let s = dot * (2.0 / vnorm2);
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= s * vi;
    }
}

/// Basic solution: back-substitution on the leading `rank × rank` block,
/// zeros for the dropped columns.
pub(crate) fn solve(qr: &PivotedQr) -> DVector<Complex64> {
    let n = qr.r.ncols();
    let k = qr.rank;
    let mut z = vec![Complex64::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut acc = qr.qtb[i];
        for (j, zj) in z.iter().enumerate().skip(i + 1) {
            acc -= qr.r[(i, j)] * zj;
        }
        z[i] = acc / qr.r[(i, i)];
    }
    let mut alpha = DVector::from_element(n, Complex64::new(0.0, 0.0));
    for (i, zi) in z.into_iter().enumerate() {
        alpha[qr.perm[i]] = zi;
    }
    alpha
}
