//! Error metrics, T sweeps, presets, configuration files and CSV output.

mod config;
mod output;
mod presets;

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::assembly::{
    collocation_rows, collocation_system_with, quadrature_count, weighted_residual_system,
    CollocationOptions, Formulation,
};
use crate::boundarydata::{BoundaryCondition, ConditionType};
use crate::error::{Result, WbmError};
use crate::geometry::BoundaryCurve;
use crate::point::Point2;
use crate::solver::{solve, SolveReport};
use crate::wavebasis::{WaveBasisSpec, WaveFunction};

pub use config::{parse_t_sweep, ExperimentConfig};
pub use output::{read_csv, write_csv, CSV_HEADER};
pub use presets::{preset, presets, Preset, PRESET_NAMES};

/// Relative floor below which the error metric switches to absolute error.
pub const ERROR_GUARD: f64 = 1e-8;

/// A wave-function expansion `ũ = Σ α_j Φ_j`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub spec: WaveBasisSpec,
    pub coefficients: DVector<Complex64>,
    pub report: Option<SolveReport>,
    functions: Vec<WaveFunction>,
}

impl Solution {
    pub fn new(spec: WaveBasisSpec, coefficients: DVector<Complex64>) -> Result<Self> {
        if coefficients.len() != spec.len() {
            return Err(WbmError::InvalidInput(format!(
                "{} coefficients for a basis of {} functions",
                coefficients.len(),
                spec.len()
            )));
        }
        Ok(Self {
            functions: spec.functions(),
            spec,
            coefficients,
            report: None,
        })
    }

    pub fn from_report(spec: WaveBasisSpec, report: SolveReport) -> Result<Self> {
        let mut sol = Self::new(spec, report.coefficients.clone())?;
        sol.report = Some(report);
        Ok(sol)
    }

    /// `ũ(p)`; meaningful for `p` inside the bounding box.
    pub fn evaluate(&self, p: Point2) -> Complex64 {
        self.functions
            .iter()
            .zip(self.coefficients.iter())
            .map(|(f, a)| a * f.value(p))
            .sum()
    }

    pub fn gradient(&self, p: Point2) -> [Complex64; 2] {
        let mut g = [Complex64::new(0.0, 0.0); 2];
        for (f, a) in self.functions.iter().zip(self.coefficients.iter()) {
            let [gx, gy] = f.gradient(p);
            g[0] += a * gx;
            g[1] += a * gy;
        }
        g
    }

    pub fn normal_derivative(&self, p: Point2, n: Point2) -> Complex64 {
        let [gx, gy] = self.gradient(p);
        gx * n.x + gy * n.y
    }

    /// The trace matching `kind`: value or normal derivative.
    pub fn trace(&self, kind: ConditionType, p: Point2, n: Point2) -> Complex64 {
        match kind {
            ConditionType::Dirichlet => self.evaluate(p),
            ConditionType::Neumann => self.normal_derivative(p, n),
        }
    }
}

pub fn evaluate_solution(sol: &Solution, p: Point2) -> Complex64 {
    sol.evaluate(p)
}

/// Mean relative error of the imposed trace at `n_p` points
/// `t_i = 2π(i + 1/2)/n_p`. Points where `|w| < 1e-8 max|w|` contribute
/// `|ũ − w| / max|w|`.
pub fn boundary_error(
    sol: &Solution,
    bc: &BoundaryCondition,
    curve: &BoundaryCurve,
    n_p: usize,
) -> Result<f64> {
    if n_p == 0 {
        return Err(WbmError::InvalidParameter("n_p must be at least 1".into()));
    }
    let samples = curve.sample_boundary_offset(n_p, PI / n_p as f64)?;
    let pairs: Vec<(Complex64, Complex64)> = samples
        .par_iter()
        .map(|s| {
            let w = bc.trace(s.point, s.normal)?;
            Ok((sol.trace(bc.kind, s.point, s.normal), w))
        })
        .collect::<Result<_>>()?;
    let w_max = pairs.iter().map(|(_, w)| w.norm()).fold(0.0, f64::max);
    if w_max == 0.0 {
        let abs: f64 = pairs.iter().map(|(u, _)| u.norm()).sum();
        return Ok(abs / n_p as f64);
    }
    let floor = ERROR_GUARD * w_max;
    let total: f64 = pairs
        .iter()
        .map(|(u, w)| {
            let d = (u - w).norm();
            if w.norm() < floor {
                d / w_max
            } else {
                d / w.norm()
            }
        })
        .sum();
    Ok(total / n_p as f64)
}

/// One (formulation, T) result.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub formulation: Formulation,
    pub t: f64,
    pub n: usize,
    /// Collocation rows, or quadrature nodes for the weighted residual.
    pub m: usize,
    pub error: f64,
    pub cond: f64,
    pub coef_norm: f64,
    pub residual_norm: f64,
    pub wall_ms: f64,
}

/// A (formulation, T) point that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub experiment: String,
    pub formulation: Formulation,
    pub t: f64,
    pub error: WbmError,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<SweepFailure>,
}

impl SweepOutcome {
    pub fn extend(&mut self, other: SweepOutcome) {
        self.records.extend(other.records);
        self.failures.extend(other.failures);
    }

    /// Records of one formulation in sweep order.
    pub fn series(&self, experiment: &str, formulation: Formulation) -> Vec<&ExperimentRecord> {
        self.records
            .iter()
            .filter(|r| r.experiment == experiment && r.formulation == formulation)
            .collect()
    }
}

/// Builds, solves and measures a single (formulation, T) point.
pub fn run_point(
    cfg: &ExperimentConfig,
    formulation: Formulation,
    t: f64,
) -> Result<(Solution, ExperimentRecord)> {
    let start = Instant::now();
    let curve = cfg.curve()?;
    let spec = WaveBasisSpec::new(cfg.bbox, cfg.k, t)?;
    let n = spec.len();
    let system = match formulation {
        Formulation::Collocation => collocation_system_with(
            &spec,
            &curve,
            &cfg.bc,
            &CollocationOptions {
                gamma: cfg.gamma,
                row_weights: cfg.row_weights,
            },
        )?,
        Formulation::WeightedResidual => {
            weighted_residual_system(&spec, &curve, &cfg.bc, quadrature_count(n, cfg.quad_factor))?
        }
    };
    let m = system.rows();
    let report = solve(&system, &cfg.solver)?;
    let sol = Solution::from_report(spec, report)?;
    let error = boundary_error(&sol, &cfg.bc, &curve, cfg.n_p)?;
    let report = sol.report.as_ref().expect("report attached");
    let wall_ms = if cfg.timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let record = ExperimentRecord {
        experiment: cfg.name.clone(),
        formulation,
        t,
        n,
        m: if formulation == Formulation::Collocation {
            m
        } else {
            system.quadrature.unwrap_or(m)
        },
        error,
        cond: report.condition_number,
        coef_norm: report.coef_norm,
        residual_norm: report.residual_norm,
        wall_ms,
    };
    Ok((sol, record))
}

/// Runs every (formulation, T) point. Points run concurrently; output is in
/// (formulation, T) order. A failing point is reported and skipped.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let jobs: Vec<(Formulation, f64)> = cfg
        .formulations
        .iter()
        .flat_map(|&f| cfg.t_sweep.iter().map(move |&t| (f, t)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(f, t)| (f, t, run_point(cfg, f, t).map(|(_, r)| r)))
        .collect();
    let mut out = SweepOutcome::default();
    for (formulation, t, res) in results {
        match res {
            Ok(r) => out.records.push(r),
            Err(error) => out.failures.push(SweepFailure {
                experiment: cfg.name.clone(),
                formulation,
                t,
                error,
            }),
        }
    }
    Ok(out)
}

/// `M` for the largest T of a sweep, used to validate `n_p`.
pub(crate) fn max_collocation_rows(cfg: &ExperimentConfig) -> Result<usize> {
    let t_max = cfg.t_sweep.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = WaveBasisSpec::new(cfg.bbox, cfg.k, t_max)?.len();
    Ok(collocation_rows(cfg.gamma, n))
}
