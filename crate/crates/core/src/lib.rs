//! Wave Based Method (WBM) solvers for interior two-dimensional Helmholtz
//! problems.
//!
//! The solution inside a smooth domain is expanded in wave functions defined
//! on a rectangular bounding box. Two discretizations are provided: the
//! classical weighted-residual system, whose entries are boundary integrals,
//! and an oversampled collocation system. Both are solved with regularized
//! dense least-squares solvers (truncated SVD or threshold column-pivoted QR).
//!
//! Module map:
//! - [`specfun`]: Bessel and Hankel functions of orders 0 and 1.
//! - [`geometry`]: analytic boundary curves, bounding boxes, singularity data.
//! - [`wavebasis`]: the truncated wave-function set.
//! - [`boundarydata`]: analytic fields and their Dirichlet/Neumann traces.
//! - [`assembly`]: weighted-residual and collocation linear systems.
//! - [`solver`]: regularized least-squares solvers and condition numbers.
//! - [`experiments`]: error metrics, sweeps, presets, config and CSV output.

pub mod assembly;
pub mod boundarydata;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod point;
pub mod solver;
pub mod specfun;
pub mod wavebasis;

pub use num_complex::Complex64;

pub use assembly::{Formulation, LinearSystem};
pub use boundarydata::{AnalyticField, BoundaryCondition, ConditionType, FieldKind};
pub use error::{Result, WbmError};
pub use experiments::{ExperimentConfig, ExperimentRecord, Solution, SweepOutcome};
pub use geometry::{BoundaryCurve, BoundingBox, CurveKind, SingularityInfo};
pub use point::Point2;
pub use solver::{SolveReport, SolverMethod, SolverOptions};
pub use wavebasis::{BasisIndex, Family, WaveBasisSpec};
