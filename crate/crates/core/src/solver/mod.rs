//! Regularized dense least-squares solvers.
//!
//! Two methods are available. `Tsvd` keeps the singular triplets with
//! `σ_j ≥ ε σ_max` and returns the minimal-norm solution over that subspace.
//! `Cpqr` runs Householder QR with column pivoting, stops once the next pivot
//! falls below `ε |r_11|`, and back-substitutes on the retained block with the
//! dropped coefficients set to zero.

mod cpqr;
mod svd;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::assembly::LinearSystem;
use crate::error::{Result, WbmError};

pub const DEFAULT_TSVD_EPSILON: f64 = 1e-14;
pub const DEFAULT_CPQR_EPSILON: f64 = 2e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverMethod {
    Tsvd,
    Cpqr,
}

impl SolverMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SolverMethod::Tsvd => "tsvd",
            SolverMethod::Cpqr => "cpqr",
        }
    }

    pub fn default_epsilon(&self) -> f64 {
        match self {
            SolverMethod::Tsvd => DEFAULT_TSVD_EPSILON,
            SolverMethod::Cpqr => DEFAULT_CPQR_EPSILON,
        }
    }
}

impl fmt::Display for SolverMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverMethod {
    type Err = WbmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tsvd" => Ok(SolverMethod::Tsvd),
            "cpqr" => Ok(SolverMethod::Cpqr),
            other => Err(WbmError::Config(format!("unknown solver method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub method: SolverMethod,
    /// Relative threshold, `0 < ε < 1`.
    pub epsilon: f64,
}

impl SolverOptions {
    pub fn new(method: SolverMethod, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(WbmError::InvalidParameter(format!(
                "solver threshold must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(Self { method, epsilon })
    }

    pub fn with_default_epsilon(method: SolverMethod) -> Self {
        Self {
            method,
            epsilon: method.default_epsilon(),
        }
    }

    pub fn tsvd() -> Self {
        Self::with_default_epsilon(SolverMethod::Tsvd)
    }

    pub fn cpqr() -> Self {
        Self::with_default_epsilon(SolverMethod::Cpqr)
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::tsvd()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub coefficients: DVector<Complex64>,
    /// `‖Aα − b‖₂`.
    pub residual_norm: f64,
    /// `‖α‖₂`.
    pub coef_norm: f64,
    /// `σ_max / σ_min`, infinite for a zero matrix.
    pub condition_number: f64,
    /// Retained singular values or accepted pivots.
    pub numerical_rank: usize,
    pub method: SolverMethod,
    /// Relative threshold the solve used.
    pub threshold: f64,
}

fn check_finite(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<()> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(WbmError::InvalidInput(format!("empty {m}×{n} system")));
    }
    if b.len() != m {
        return Err(WbmError::InvalidInput(format!(
            "rhs has length {} but the matrix has {m} rows",
            b.len()
        )));
    }
    let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
    if !a.iter().all(finite) {
        return Err(WbmError::InvalidInput("matrix has non-finite entries".into()));
    }
    if !b.iter().all(finite) {
        return Err(WbmError::InvalidInput("rhs has non-finite entries".into()));
    }
    Ok(())
}

/// All `min(m, n)` singular values in descending order.
pub fn singular_values(a: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(WbmError::InvalidInput(format!("empty {m}×{n} matrix")));
    }
    Ok(svd::spectrum(a, None)?.sigma)
}

fn ratio(sigma: &[f64]) -> f64 {
    let max = sigma.first().copied().unwrap_or(0.0);
    let min = sigma.last().copied().unwrap_or(0.0);
    if max == 0.0 || min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `σ_max / σ_min` using the smallest computed singular value, however small.
pub fn condition_number_of(a: &DMatrix<Complex64>) -> Result<f64> {
    Ok(ratio(&singular_values(a)?))
}

pub fn condition_number(sys: &LinearSystem) -> Result<f64> {
    condition_number_of(&sys.matrix)
}

pub fn solve(sys: &LinearSystem, opts: &SolverOptions) -> Result<SolveReport> {
    solve_dense(&sys.matrix, &sys.rhs, opts)
}

pub fn solve_dense(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    check_finite(a, b)?;
    SolverOptions::new(opts.method, opts.epsilon)?;
    let (coefficients, rank, condition_number) = match opts.method {
        SolverMethod::Tsvd => tsvd(a, b, opts.epsilon)?,
        SolverMethod::Cpqr => {
            let qr = cpqr::factor(a, b, opts.epsilon);
            (cpqr::solve(&qr), qr.rank, condition_number_of(a)?)
        }
    };
    let residual_norm = (a * &coefficients - b).norm();
    let coef_norm = coefficients.norm();
    Ok(SolveReport {
        coefficients,
        residual_norm,
        coef_norm,
        condition_number,
        numerical_rank: rank,
        method: opts.method,
        threshold: opts.epsilon,
    })
}

/// Minimal-norm solution over the singular triplets with `σ_j ≥ ε σ_max`.
fn tsvd(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    eps: f64,
) -> Result<(DVector<Complex64>, usize, f64)> {
    let sp = svd::spectrum(a, Some(b))?;
    let v = sp.v.as_ref().expect("vectors requested");
    let utb = sp.utb.as_ref().expect("projections requested");
    let cond = ratio(&sp.sigma);
    let cutoff = eps * sp.sigma[0];

    let mut alpha = DVector::from_element(a.ncols(), Complex64::new(0.0, 0.0));
    let mut rank = 0;
    if sp.sigma[0] > 0.0 {
        for (j, &s) in sp.sigma.iter().enumerate() {
            if s < cutoff {
                break;
            }
            rank += 1;
            alpha.axpy(utb[j] / s, &v.column(j), Complex64::new(1.0, 0.0));
        }
    }
    Ok((alpha, rank, cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(m: usize, n: usize, data: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(m, n, &data.iter().map(|&x| c(x)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_returns_rhs() {
        let a = DMatrix::<Complex64>::identity(4, 4);
        let b = DVector::from_vec(vec![c(1.0), Complex64::new(0.0, 2.0), c(-3.0), c(0.5)]);
        for opts in [SolverOptions::tsvd(), SolverOptions::cpqr()] {
            let r = solve_dense(&a, &b, &opts).unwrap();
            assert!((&r.coefficients - &b).norm() < 1e-15);
            assert_eq!(r.numerical_rank, 4);
            assert!(r.residual_norm < 1e-15);
            assert_eq!(r.condition_number, 1.0);
        }
    }

    #[test]
    fn ones_matrix_minimal_norm() {
        let a = real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![c(2.0), c(2.0)]);
        let r = solve_dense(&a, &b, &SolverOptions::tsvd()).unwrap();
        assert!((r.coefficients[0] - c(1.0)).norm() < 1e-14);
        assert!((r.coefficients[1] - c(1.0)).norm() < 1e-14);
        assert_eq!(r.numerical_rank, 1);
    }

    #[test]
    fn tiny_singular_value_truncated() {
        let a = real(2, 2, &[1.0, 0.0, 0.0, 1e-20]);
        let b = DVector::from_vec(vec![c(1.0), c(1.0)]);
        for opts in [
            SolverOptions::new(SolverMethod::Tsvd, 1e-14).unwrap(),
            SolverOptions::new(SolverMethod::Cpqr, 1e-14).unwrap(),
        ] {
            let r = solve_dense(&a, &b, &opts).unwrap();
            assert_eq!(r.coefficients[0], c(1.0));
            assert_eq!(r.coefficients[1], c(0.0));
            assert_eq!(r.numerical_rank, 1);
            assert!((r.residual_norm - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_condition_number() {
        let a = real(2, 2, &[10.0, 0.0, 0.0, 0.1]);
        assert!((condition_number_of(&a).unwrap() - 100.0).abs() < 1e-12);
        assert_eq!(condition_number_of(&DMatrix::identity(3, 3)).unwrap(), 1.0);
    }

    #[test]
    fn zero_matrix() {
        let a = DMatrix::from_element(3, 2, c(0.0));
        let b = DVector::from_element(3, c(1.0));
        for opts in [SolverOptions::tsvd(), SolverOptions::cpqr()] {
            let r = solve_dense(&a, &b, &opts).unwrap();
            assert_eq!(r.numerical_rank, 0);
            assert!(r.coefficients.iter().all(|z| *z == c(0.0)));
            assert!(r.condition_number.is_infinite());
        }
    }

    #[test]
    fn non_finite_rejected() {
        let mut a = DMatrix::<Complex64>::identity(2, 2);
        a[(1, 0)] = Complex64::new(f64::NAN, 0.0);
        let b = DVector::from_element(2, c(1.0));
        assert!(matches!(
            solve_dense(&a, &b, &SolverOptions::tsvd()),
            Err(WbmError::InvalidInput(_))
        ));
    }

    #[test]
    fn threshold_bounds() {
        assert!(SolverOptions::new(SolverMethod::Tsvd, 0.0).is_err());
        assert!(SolverOptions::new(SolverMethod::Tsvd, 1.0).is_err());
        assert!(SolverOptions::new(SolverMethod::Cpqr, 2e-13).is_ok());
    }

    #[test]
    fn method_names_round_trip() {
        for m in [SolverMethod::Tsvd, SolverMethod::Cpqr] {
            assert_eq!(m.name().parse::<SolverMethod>().unwrap(), m);
        }
        assert!("lu".parse::<SolverMethod>().is_err());
    }

    #[test]
    fn cpqr_pivots_largest_column_first() {
        let a = real(3, 3, &[1.0, 0.0, 5.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0]);
        let b = DVector::from_vec(vec![c(6.0), c(2.0), c(1.0)]);
        let qr = cpqr::factor(&a, &b, 1e-14);
        assert_eq!(qr.perm[0], 2);
        assert_eq!(qr.rank, 3);
        let x = cpqr::solve(&qr);
        for v in x.iter() {
            assert!((v - c(1.0)).norm() < 1e-14);
        }
    }
}
