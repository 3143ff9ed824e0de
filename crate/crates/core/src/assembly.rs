//! Dense linear systems for the two WBM formulations.
//!
//! Weighted residual: the boundary residual is tested against every wave
//! function, giving a square `N × N` system whose entries are boundary
//! integrals. Neumann data gives `a_ij = ∮ Φ_i ∂Φ_j/∂n ds`, `b_i = ∮ Φ_i w ds`;
//! Dirichlet data gives `a_ij = ∮ Φ_i Φ_j ds`, `b_i = ∮ Φ_i w ds`. The test
//! functions enter unconjugated, so `A` is complex symmetric. Integrals use
//! the composite trapezoidal rule in the curve parameter.
//!
//! Collocation: the boundary condition is imposed at `M = ⌈γN⌉` equispaced
//! parameter values, giving a rectangular `M × N` system.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundarydata::{BoundaryCondition, ConditionType};
use crate::error::{Result, WbmError};
use crate::geometry::{BoundaryCurve, BoundarySample};
use crate::wavebasis::{WaveBasisSpec, WaveFunction};

/// Samples used to verify that the curve lies inside the bounding box.
const CONTAINMENT_SAMPLES: usize = 2048;

/// Lower bound on the number of quadrature nodes.
pub const MIN_QUADRATURE: usize = 400;

/// Default quadrature oversampling, `Q = max(20 N, 400)`.
pub const DEFAULT_QUAD_FACTOR: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formulation {
    WeightedResidual,
    Collocation,
}

impl Formulation {
    pub fn name(&self) -> &'static str {
        match self {
            Formulation::WeightedResidual => "weighted-residual",
            Formulation::Collocation => "collocation",
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formulation {
    type Err = WbmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "weighted-residual" | "wr" => Ok(Formulation::WeightedResidual),
            "collocation" | "col" => Ok(Formulation::Collocation),
            other => Err(WbmError::Config(format!("unknown formulation '{other}'"))),
        }
    }
}

/// A dense complex system `A α = b` tagged with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub matrix: DMatrix<Complex64>,
    pub rhs: DVector<Complex64>,
    pub formulation: Formulation,
    /// Oversampling factor (collocation only).
    pub gamma: Option<f64>,
    /// Quadrature node count (weighted residual only).
    pub quadrature: Option<usize>,
}

impl LinearSystem {
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Number of collocation rows `⌈γN⌉`.
pub fn collocation_rows(gamma: f64, n: usize) -> usize {
    // Guard against products like 1.1 * 10 = 11.000000000000002.
    ((gamma * n as f64) * (1.0 - 4.0 * f64::EPSILON)).ceil() as usize
}

pub fn quadrature_count(n: usize, factor: usize) -> usize {
    (factor * n).max(MIN_QUADRATURE)
}

pub fn default_quadrature_count(n: usize) -> usize {
    quadrature_count(n, DEFAULT_QUAD_FACTOR)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollocationOptions {
    pub gamma: f64,
    /// Scale row `i` (matrix and rhs) by `√(2π |f'(t_i)| / M)`.
    pub row_weights: bool,
}

impl Default for CollocationOptions {
    fn default() -> Self {
        Self {
            gamma: 2.0,
            row_weights: false,
        }
    }
}

fn check_inputs(spec: &WaveBasisSpec, curve: &BoundaryCurve, bc: &BoundaryCondition) -> Result<()> {
    spec.bbox.check_contains(curve, CONTAINMENT_SAMPLES)?;
    bc.field.check_against(curve)
}

/// One boundary row: basis traces and the datum.
fn trace_row(
    functions: &[WaveFunction],
    kind: ConditionType,
    s: &BoundarySample,
) -> Vec<Complex64> {
    match kind {
        ConditionType::Dirichlet => functions.iter().map(|f| f.value(s.point)).collect(),
        ConditionType::Neumann => functions
            .iter()
            .map(|f| f.normal_derivative(s.point, s.normal))
            .collect(),
    }
}

pub fn collocation_system(
    spec: &WaveBasisSpec,
    curve: &BoundaryCurve,
    bc: &BoundaryCondition,
    gamma: f64,
) -> Result<LinearSystem> {
    collocation_system_with(
        spec,
        curve,
        bc,
        &CollocationOptions {
            gamma,
            row_weights: false,
        },
    )
}

pub fn collocation_system_with(
    spec: &WaveBasisSpec,
    curve: &BoundaryCurve,
    bc: &BoundaryCondition,
    opts: &CollocationOptions,
) -> Result<LinearSystem> {
    if !(opts.gamma.is_finite() && opts.gamma > 1.0) {
        return Err(WbmError::InvalidParameter(format!(
            "oversampling factor must exceed 1, got {}",
            opts.gamma
        )));
    }
    check_inputs(spec, curve, bc)?;
    let functions = spec.functions();
    let n = functions.len();
    let m = collocation_rows(opts.gamma, n);
    let samples = curve.sample_boundary(m)?;

    let rows: Vec<(Vec<Complex64>, Complex64)> = samples
        .par_iter()
        .map(|s| {
            let mut row = trace_row(&functions, bc.kind, s);
            let mut datum = bc.trace(s.point, s.normal)?;
            if opts.row_weights {
                let w = (TAU * s.speed / m as f64).sqrt();
                row.iter_mut().for_each(|v| *v *= w);
                datum *= w;
            }
            Ok((row, datum))
        })
        .collect::<Result<_>>()?;

    let matrix = DMatrix::from_fn(m, n, |i, j| rows[i].0[j]);
    let rhs = DVector::from_iterator(m, rows.iter().map(|r| r.1));
    Ok(LinearSystem {
        matrix,
        rhs,
        formulation: Formulation::Collocation,
        gamma: Some(opts.gamma),
        quadrature: None,
    })
}

pub fn weighted_residual_system(
    spec: &WaveBasisSpec,
    curve: &BoundaryCurve,
    bc: &BoundaryCondition,
    quadrature: usize,
) -> Result<LinearSystem> {
    let n = spec.len();
    if quadrature < 2 * n {
        return Err(WbmError::InvalidParameter(format!(
            "quadrature count {quadrature} is below 2N = {}",
            2 * n
        )));
    }
    check_inputs(spec, curve, bc)?;
    let functions = spec.functions();
    let samples = curve.sample_boundary(quadrature)?;
    let h = TAU / quadrature as f64;

    // Per node: weighted test-function values, trial traces, weighted datum.
    let nodes: Vec<(Vec<Complex64>, Vec<Complex64>, Complex64)> = samples
        .par_iter()
        .map(|s| {
            let w = h * s.speed;
            let (test, trial): (Vec<_>, Vec<_>) = match bc.kind {
                ConditionType::Dirichlet => functions
                    .iter()
                    .map(|f| {
                        let v = f.value(s.point);
                        (v * w, v)
                    })
                    .unzip(),
                ConditionType::Neumann => functions
                    .iter()
                    .map(|f| {
                        let (v, dn) = f.value_and_normal_derivative(s.point, s.normal);
                        (v * w, dn)
                    })
                    .unzip(),
            };
            let datum = bc.trace(s.point, s.normal)?;
            Ok((test, trial, datum))
        })
        .collect::<Result<_>>()?;

    let test = DMatrix::from_fn(quadrature, n, |q, i| nodes[q].0[i]);
    let trial = DMatrix::from_fn(quadrature, n, |q, j| nodes[q].1[j]);
    let data = DVector::from_iterator(quadrature, nodes.iter().map(|r| r.2));

    let matrix = test.tr_mul(&trial);
    let rhs = test.tr_mul(&data);
    Ok(LinearSystem {
        matrix,
        rhs,
        formulation: Formulation::WeightedResidual,
        gamma: None,
        quadrature: Some(quadrature),
    })
}
