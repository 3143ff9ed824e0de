//! Exact-arithmetic oracles shared by several test targets.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Q = Complex<BigRational>;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exact partial sums of the ascending series at the rational point `num/den`.
/// Returns (J0, sum H_k t_k, J1/(x/2), sum (H_k + H_{k+1}) s_k) as f64.
fn rational_series(num: i64, den: i64, terms: u32) -> (f64, f64, f64, f64) {
    let q = BigRational::new(BigInt::from(num * num), BigInt::from(4 * den * den));
    let mut t0 = BigRational::one();
    let mut t1 = BigRational::one();
    let mut h = BigRational::zero();
    let mut j0 = BigRational::one();
    let mut hs0 = BigRational::zero();
    let mut j1 = BigRational::one();
    let mut hs1 = BigRational::one();
    for k in 1..=terms {
        let kk = BigInt::from(k);
        t0 = -(&t0 * &q) / BigRational::from_integer(&kk * &kk);
        t1 = -(&t1 * &q) / BigRational::from_integer(&kk * (&kk + 1));
        let h_prev = h.clone();
        h += BigRational::new(BigInt::one(), kk.clone());
        j0 += &t0;
        hs0 += &h * &t0;
        let h_next = &h + BigRational::new(BigInt::one(), &kk + 1);
        j1 += &t1;
        hs1 += (&h + &h_next) * &t1;
        let _ = h_prev;
    }
    (
        j0.to_f64().unwrap(),
        hs0.to_f64().unwrap(),
        j1.to_f64().unwrap(),
        hs1.to_f64().unwrap(),
    )
}

pub struct Oracle {
    pub j0: f64,
    pub y0: f64,
    pub j1: f64,
    pub y1: f64,
}

pub fn oracle(num: i64, den: i64) -> Oracle {
    let x = num as f64 / den as f64;
    let (j0, hs0, j1r, hs1) = rational_series(num, den, 70);
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let two_over_pi = 2.0 / std::f64::consts::PI;
    let j1 = 0.5 * x * j1r;
    Oracle {
        j0,
        y0: two_over_pi * (log_term * j0 - hs0),
        j1,
        y1: -two_over_pi / x + two_over_pi * log_term * j1
            - 0.5 * x * hs1 / std::f64::consts::PI,
    }
}

fn q(re: i64, im: i64) -> Q {
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

fn q_to_c(z: &Q) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

type QMat = Vec<Vec<Q>>;

fn q_mul(a: &QMat, b: &QMat) -> QMat {
    let (m, k, n) = (a.len(), b.len(), b[0].len());
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + a[i][l].clone() * b[l][j].clone()))
                .collect()
        })
        .collect()
}

fn q_adjoint(a: &QMat) -> QMat {
    (0..a[0].len())
        .map(|j| (0..a.len()).map(|i| a[i][j].conj()).collect())
        .collect()
}

fn q_inverse(a: &QMat) -> QMat {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular");
        m.swap(col, pivot);
        let inv = Q::one() / m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, pk) in m[r].iter_mut().zip(pivot) {
                    *x = x.clone() - f.clone() * pk;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn to_dmatrix(a: &QMat) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.len(), a[0].len(), |i, j| q_to_c(&a[i][j]))
}

pub struct Planted {
    pub a: DMatrix<Complex64>,
    pub b: DVector<Complex64>,
    /// Exact minimal-norm least-squares solution.
    pub x: DVector<Complex64>,
    /// Exact projection of b onto range(A).
    pub pb: DVector<Complex64>,
    /// Exact projector onto null(A).
    pub null: DMatrix<Complex64>,
}

/// A = B C with Gaussian-integer B (20×5) and C (5×10), so rank 5. The
/// pseudo-inverse is Cᴴ(CCᴴ)⁻¹(BᴴB)⁻¹Bᴴ, evaluated in exact arithmetic.
pub fn planted(rng: &mut ChaCha8Rng) -> Planted {
    let mut int = || q(rng.random_range(-5..=5), rng.random_range(-5..=5));
    let b_mat: QMat = (0..20).map(|_| (0..5).map(|_| int()).collect()).collect();
    let c_mat: QMat = (0..5).map(|_| (0..10).map(|_| int()).collect()).collect();
    let rhs: QMat = (0..20).map(|_| vec![int()]).collect();
    let a = q_mul(&b_mat, &c_mat);
    let bh = q_adjoint(&b_mat);
    let ch = q_adjoint(&c_mat);
    let btb_inv = q_inverse(&q_mul(&bh, &b_mat));
    let cct_inv = q_inverse(&q_mul(&c_mat, &ch));
    let x = q_mul(&ch, &q_mul(&cct_inv, &q_mul(&btb_inv, &q_mul(&bh, &rhs))));
    let pb = q_mul(&b_mat, &q_mul(&btb_inv, &q_mul(&bh, &rhs)));
    let row_proj = q_mul(&ch, &q_mul(&cct_inv, &c_mat));
    let null: QMat = (0..10)
        .map(|i| (0..10).map(|j| if i == j { Q::one() } else { Q::zero() } - row_proj[i][j].clone()).collect())
        .collect();
    let col = |m: &QMat| DVector::from_iterator(m.len(), m.iter().map(|r| q_to_c(&r[0])));
    Planted {
        a: to_dmatrix(&a),
        b: col(&rhs),
        x: col(&x),
        pb: col(&pb),
        null: to_dmatrix(&null),
    }
}

