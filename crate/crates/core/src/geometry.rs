//! Analytic boundary curves, bounding boxes and Schwartz-function
//! singularity locations.
//!
//! Every curve is a 2π-periodic parameterization `f(t) = x(t) + i y(t)` with
//! a closed-form derivative. The outward normal is fixed at construction from
//! the sign of the enclosed area, so it does not depend on the direction in
//! which the parameterization traverses the curve.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Result, WbmError};
use crate::point::Point2;

/// Speed below which a curve is considered degenerate.
pub const MIN_SPEED: f64 = 1e-12;

/// Tolerance of the bounding-box containment checks.
pub const CONTAINMENT_TOL: f64 = 1e-12;

const ORIENTATION_SAMPLES: usize = 1024;
const SPEED_SCAN_SAMPLES: usize = 4096;
const DISTANCE_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Circle `center + radius e^{it}`.
    Disk { center: Point2, radius: f64 },
    /// `z0 + e^{it} - a / (e^{it} + b)`.
    Crescent { center: Point2, a: f64, b: f64 },
    /// `z0 + e^{it} / (1 + tau e^{2it})`.
    InvertedEllipse { center: Point2, tau: f64 },
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Disk { .. } => "disk",
            CurveKind::Crescent { .. } => "crescent",
            CurveKind::InvertedEllipse { .. } => "inverted-ellipse",
        }
    }
}

/// A smooth closed boundary curve with a fixed outward-normal convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCurve {
    kind: CurveKind,
    /// -1 if the parameter runs backwards, `t -> f(-t)`.
    direction: f64,
    /// +1 if the parameterization runs counterclockwise, -1 otherwise.
    orientation: f64,
}

/// One sampled boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub t: f64,
    pub point: Point2,
    pub normal: Point2,
    /// `|f'(t)|`, the arc-length Jacobian.
    pub speed: f64,
}

impl BoundaryCurve {
    pub fn new(kind: CurveKind) -> Result<Self> {
        match kind {
            CurveKind::Disk { center, radius } => {
                if !(radius.is_finite() && radius > 0.0) || !center.is_finite() {
                    return Err(WbmError::InvalidParameter(format!(
                        "disk radius must be positive and finite, got {radius}"
                    )));
                }
            }
            CurveKind::Crescent { center, a, b } => {
                if !(a.is_finite() && b.is_finite()) || !center.is_finite() {
                    return Err(WbmError::InvalidParameter(
                        "crescent parameters must be finite".into(),
                    ));
                }
                if (b.abs() - 1.0).abs() < 1e-12 {
                    return Err(WbmError::InvalidParameter(format!(
                        "crescent parameter |b| = 1 puts a pole on the curve (b = {b})"
                    )));
                }
            }
            CurveKind::InvertedEllipse { center, tau } => {
                if !tau.is_finite() || !center.is_finite() {
                    return Err(WbmError::InvalidParameter(
                        "inverted ellipse parameter must be finite".into(),
                    ));
                }
                if (tau.abs() - 1.0).abs() < 1e-12 {
                    return Err(WbmError::InvalidParameter(format!(
                        "inverted ellipse needs |tau| != 1, got {tau}"
                    )));
                }
            }
        }
        BoundaryCurve {
            kind,
            direction: 1.0,
            orientation: 1.0,
        }
        .oriented()
    }

    fn oriented(mut self) -> Result<Self> {
        self.check_speed()?;
        self.orientation = if self.signed_area() < 0.0 { -1.0 } else { 1.0 };
        Ok(self)
    }

    /// The same curve traversed in the opposite direction, `t -> f(-t)`.
    pub fn reversed(&self) -> Self {
        BoundaryCurve {
            kind: self.kind,
            direction: -self.direction,
            orientation: -self.orientation,
        }
    }

    pub fn disk(center: Point2, radius: f64) -> Result<Self> {
        Self::new(CurveKind::Disk { center, radius })
    }

    pub fn crescent(center: Point2, a: f64, b: f64) -> Result<Self> {
        Self::new(CurveKind::Crescent { center, a, b })
    }

    pub fn inverted_ellipse(center: Point2, tau: f64) -> Result<Self> {
        Self::new(CurveKind::InvertedEllipse { center, tau })
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    /// Whether the parameterization runs counterclockwise.
    pub fn is_counterclockwise(&self) -> bool {
        self.orientation > 0.0
    }

    /// `f(t)` and `f'(t)` as complex numbers.
    fn eval(&self, t: f64) -> (Complex64, Complex64) {
        let (z, dz) = self.eval_forward(self.direction * t);
        (z, self.direction * dz)
    }

    fn eval_forward(&self, t: f64) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, t);
        let i = Complex64::i();
        match self.kind {
            CurveKind::Disk { center, radius } => {
                let z0 = Complex64::new(center.x, center.y);
                (z0 + radius * e, i * radius * e)
            }
            CurveKind::Crescent { center, a, b } => {
                let z0 = Complex64::new(center.x, center.y);
                let d = e + b;
                (z0 + e - a / d, i * e + a * i * e / (d * d))
            }
            CurveKind::InvertedEllipse { center, tau } => {
                let z0 = Complex64::new(center.x, center.y);
                let e2 = e * e;
                let d = 1.0 + tau * e2;
                (z0 + e / d, i * e * (1.0 - tau * e2) / (d * d))
            }
        }
    }

    pub fn point(&self, t: f64) -> Point2 {
        let (z, _) = self.eval(t.rem_euclid(TAU));
        Point2::new(z.re, z.im)
    }

    /// Tangent vector `f'(t)`.
    pub fn derivative(&self, t: f64) -> Point2 {
        let (_, dz) = self.eval(t.rem_euclid(TAU));
        Point2::new(dz.re, dz.im)
    }

    /// `|f'(t)|`.
    pub fn speed(&self, t: f64) -> f64 {
        self.derivative(t).norm()
    }

    /// Outward unit normal at parameter `t`.
    pub fn unit_normal(&self, t: f64) -> Result<Point2> {
        let d = self.derivative(t);
        let speed = d.norm();
        if speed.is_nan() || speed < MIN_SPEED {
            return Err(WbmError::DegenerateCurve { t, speed });
        }
        // Rotating the tangent by -π/2 gives the outward normal of a
        // counterclockwise curve.
        let s = self.orientation / speed;
        Ok(Point2::new(d.y * s, -d.x * s))
    }

    pub fn sample_at(&self, t: f64) -> Result<BoundarySample> {
        let (z, dz) = self.eval(t.rem_euclid(TAU));
        let speed = dz.norm();
        if speed.is_nan() || speed < MIN_SPEED {
            return Err(WbmError::DegenerateCurve { t, speed });
        }
        let s = self.orientation / speed;
        Ok(BoundarySample {
            t,
            point: Point2::new(z.re, z.im),
            normal: Point2::new(dz.im * s, -dz.re * s),
            speed,
        })
    }

    /// `m` samples at the equispaced parameters `t_j = 2πj/m`.
    pub fn sample_boundary(&self, m: usize) -> Result<Vec<BoundarySample>> {
        self.sample_boundary_offset(m, 0.0)
    }

    /// `m` samples at `t_j = 2πj/m + offset`.
    pub fn sample_boundary_offset(&self, m: usize, offset: f64) -> Result<Vec<BoundarySample>> {
        if m == 0 {
            return Err(WbmError::InvalidParameter(
                "boundary sample count must be at least 1".into(),
            ));
        }
        (0..m)
            .map(|j| self.sample_at(TAU * j as f64 / m as f64 + offset))
            .collect()
    }

    /// Signed area of the polygon through equispaced samples; positive for a
    /// counterclockwise parameterization.
    pub fn signed_area(&self) -> f64 {
        let pts: Vec<Point2> = (0..ORIENTATION_SAMPLES)
            .map(|j| self.point(TAU * j as f64 / ORIENTATION_SAMPLES as f64))
            .collect();
        let mut area = 0.0;
        for (j, p) in pts.iter().enumerate() {
            let q = pts[(j + 1) % pts.len()];
            area += p.x * q.y - q.x * p.y;
        }
        0.5 * area
    }

    fn check_speed(&self) -> Result<()> {
        for j in 0..SPEED_SCAN_SAMPLES {
            let t = TAU * j as f64 / SPEED_SCAN_SAMPLES as f64;
            let speed = self.speed(t);
            if speed.is_nan() || speed < MIN_SPEED {
                return Err(WbmError::DegenerateCurve { t, speed });
            }
        }
        Ok(())
    }

    /// Minimum distance from `p` to the curve over a dense parameter sampling.
    pub fn distance_to(&self, p: Point2) -> f64 {
        (0..DISTANCE_SAMPLES)
            .map(|j| self.point(TAU * j as f64 / DISTANCE_SAMPLES as f64).distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Closed-form singularities of the Schwartz function of the curve.
    ///
    /// Crescent: branch points `z0 - b ± 2i√a` and a pole at `z0 - a/b`.
    /// Inverted ellipse: branch points `z0 ± √(1/(4τ))`. Disk: none.
    pub fn schwartz_singularities(&self, bbox: &BoundingBox) -> SingularityInfo {
        let mut raw = Vec::new();
        match self.kind {
            CurveKind::Disk { .. } => {}
            CurveKind::Crescent { center, a, b } => {
                let z0 = Complex64::new(center.x, center.y);
                let offset = 2.0 * Complex64::new(a, 0.0).sqrt() * Complex64::i();
                raw.push((z0 - b + offset, SingularityKind::BranchPoint));
                raw.push((z0 - b - offset, SingularityKind::BranchPoint));
                if b != 0.0 {
                    raw.push((z0 - a / b, SingularityKind::Pole));
                }
            }
            CurveKind::InvertedEllipse { center, tau } => {
                let z0 = Complex64::new(center.x, center.y);
                let offset = Complex64::new(1.0 / (4.0 * tau), 0.0).sqrt();
                raw.push((z0 + offset, SingularityKind::BranchPoint));
                raw.push((z0 - offset, SingularityKind::BranchPoint));
            }
        }
        let singularities = raw
            .into_iter()
            .map(|(z, kind)| {
                let location = Point2::new(z.re, z.im);
                Singularity {
                    location,
                    kind,
                    inside_box: bbox.contains(location, CONTAINMENT_TOL),
                    on_box_edge: bbox.on_edge(location, CONTAINMENT_TOL),
                    distance_to_curve: self.distance_to(location),
                }
            })
            .collect();
        SingularityInfo { singularities }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    Pole,
    BranchPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    pub location: Point2,
    pub kind: SingularityKind,
    /// Inside the closed bounding box (edges included).
    pub inside_box: bool,
    pub on_box_edge: bool,
    pub distance_to_curve: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularityInfo {
    pub singularities: Vec<Singularity>,
}

impl SingularityInfo {
    pub fn is_empty(&self) -> bool {
        self.singularities.is_empty()
    }

    pub fn poles(&self) -> impl Iterator<Item = &Singularity> {
        self.singularities
            .iter()
            .filter(|s| s.kind == SingularityKind::Pole)
    }

    pub fn branch_points(&self) -> impl Iterator<Item = &Singularity> {
        self.singularities
            .iter()
            .filter(|s| s.kind == SingularityKind::BranchPoint)
    }
}

/// Axis-aligned rectangle `[x0, x0 + lx] × [y0, y0 + ly]` on which the wave
/// functions live. Basis coordinates are taken relative to `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub origin: Point2,
    pub lx: f64,
    pub ly: f64,
}

impl BoundingBox {
    pub fn new(origin: Point2, lx: f64, ly: f64) -> Result<Self> {
        if !(lx.is_finite() && lx > 0.0 && ly.is_finite() && ly > 0.0) || !origin.is_finite() {
            return Err(WbmError::InvalidParameter(format!(
                "bounding box sides must be positive and finite, got {lx} × {ly}"
            )));
        }
        Ok(Self { origin, lx, ly })
    }

    /// Box with the given center and side lengths.
    pub fn centered(center: Point2, lx: f64, ly: f64) -> Result<Self> {
        Self::new(Point2::new(center.x - 0.5 * lx, center.y - 0.5 * ly), lx, ly)
    }

    pub fn square(origin: Point2, edge: f64) -> Result<Self> {
        Self::new(origin, edge, edge)
    }

    pub fn center(&self) -> Point2 {
        Point2::new(self.origin.x + 0.5 * self.lx, self.origin.y + 0.5 * self.ly)
    }

    /// Coordinates relative to the box origin.
    pub fn local(&self, p: Point2) -> Point2 {
        p - self.origin
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let q = self.local(p);
        q.x >= -tol && q.x <= self.lx + tol && q.y >= -tol && q.y <= self.ly + tol
    }

    pub fn on_edge(&self, p: Point2, tol: f64) -> bool {
        let q = self.local(p);
        self.contains(p, tol)
            && ((q.x.abs() <= tol)
                || ((q.x - self.lx).abs() <= tol)
                || (q.y.abs() <= tol)
                || ((q.y - self.ly).abs() <= tol))
    }

    /// Fails if any of `samples` equispaced boundary points lies outside.
    pub fn check_contains(&self, curve: &BoundaryCurve, samples: usize) -> Result<()> {
        for j in 0..samples.max(1) {
            let t = TAU * j as f64 / samples.max(1) as f64;
            let p = curve.point(t);
            if !self.contains(p, CONTAINMENT_TOL) {
                return Err(WbmError::InvalidParameter(format!(
                    "boundary point ({}, {}) at t = {t} lies outside the box [{}, {}] × [{}, {}]",
                    p.x,
                    p.y,
                    self.origin.x,
                    self.origin.x + self.lx,
                    self.origin.y,
                    self.origin.y + self.ly
                )));
            }
        }
        Ok(())
    }
}

/// Parameter value halfway between two equispaced samples: used to offset
/// error-evaluation points from collocation points.
pub fn half_step(m: usize) -> f64 {
    PI / m as f64
}
