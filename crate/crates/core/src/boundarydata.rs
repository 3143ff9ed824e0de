//! Analytic incident fields and the boundary data they induce.

use num_complex::Complex64;

use crate::error::{Result, WbmError};
use crate::geometry::BoundaryCurve;
use crate::point::Point2;
use crate::specfun::{hankel1_0, hankel1_1};

/// Minimum admissible distance between a point source and the boundary.
pub const MIN_SOURCE_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    /// `e^{ik(x cos θ + y sin θ)}`.
    PlaneWave { angle: f64 },
    /// `H0⁽¹⁾(k |p - source|)`.
    PointSource { source: Point2 },
    /// A constant, valid only as Dirichlet data.
    Constant { value: Complex64 },
}

impl FieldKind {
    pub fn name(&self) -> &'static str {
        match self {
            FieldKind::PlaneWave { .. } => "plane-wave",
            FieldKind::PointSource { .. } => "point-source",
            FieldKind::Constant { .. } => "constant",
        }
    }
}

/// A field `amplitude · w(p)` at wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticField {
    pub kind: FieldKind,
    pub k: f64,
    pub amplitude: Complex64,
}

impl AnalyticField {
    pub fn new(kind: FieldKind, k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(WbmError::InvalidParameter(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        Ok(Self {
            kind,
            k,
            amplitude: Complex64::new(1.0, 0.0),
        })
    }

    pub fn plane_wave(angle: f64, k: f64) -> Result<Self> {
        Self::new(FieldKind::PlaneWave { angle }, k)
    }

    pub fn point_source(source: Point2, k: f64) -> Result<Self> {
        Self::new(FieldKind::PointSource { source }, k)
    }

    pub fn constant(value: Complex64, k: f64) -> Result<Self> {
        Self::new(FieldKind::Constant { value }, k)
    }

    /// The same field multiplied by `c`.
    pub fn scaled(mut self, c: Complex64) -> Self {
        self.amplitude *= c;
        self
    }

    /// Whether the field solves the Helmholtz equation (constants do not).
    pub fn is_helmholtz_solution(&self) -> bool {
        !matches!(self.kind, FieldKind::Constant { .. })
    }

    pub fn value(&self, p: Point2) -> Result<Complex64> {
        let v = match self.kind {
            FieldKind::PlaneWave { angle } => {
                let (s, c) = angle.sin_cos();
                Complex64::from_polar(1.0, self.k * (p.x * c + p.y * s))
            }
            FieldKind::PointSource { source } => hankel1_0(self.k * p.distance(source))
                .map_err(|_| WbmError::Domain {
                    function: "point source field",
                    arg: p.distance(source),
                })?,
            FieldKind::Constant { value } => value,
        };
        Ok(self.amplitude * v)
    }

    pub fn gradient(&self, p: Point2) -> Result<[Complex64; 2]> {
        match self.kind {
            FieldKind::PlaneWave { angle } => {
                let (s, c) = angle.sin_cos();
                let ikv = Complex64::i() * self.k * self.value(p)?;
                Ok([ikv * c, ikv * s])
            }
            FieldKind::PointSource { source } => {
                let d = p - source;
                let r = d.norm();
                let h1 = hankel1_1(self.k * r).map_err(|_| WbmError::Domain {
                    function: "point source gradient",
                    arg: r,
                })?;
                let radial = -self.k * h1 * self.amplitude / r;
                Ok([radial * d.x, radial * d.y])
            }
            FieldKind::Constant { .. } => Ok([Complex64::new(0.0, 0.0); 2]),
        }
    }

    /// `∇w·n`. The amplitude is applied after the dot product so the result
    /// scales with it to rounding even where the two terms cancel.
    pub fn normal_derivative(&self, p: Point2, n: Point2) -> Result<Complex64> {
        let unit = AnalyticField { amplitude: Complex64::new(1.0, 0.0), ..*self };
        let [gx, gy] = unit.gradient(p)?;
        Ok(self.amplitude * (gx * n.x + gy * n.y))
    }

    /// Fails if a point source lies on (or within 1e-9 of) the curve.
    pub fn check_against(&self, curve: &BoundaryCurve) -> Result<()> {
        if let FieldKind::PointSource { source } = self.kind {
            let distance = curve.distance_to(source);
            if distance <= MIN_SOURCE_DISTANCE {
                return Err(WbmError::SourceOnBoundary { distance });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionType {
    Dirichlet,
    Neumann,
}

impl ConditionType {
    pub fn name(&self) -> &'static str {
        match self {
            ConditionType::Dirichlet => "dirichlet",
            ConditionType::Neumann => "neumann",
        }
    }
}

/// Dirichlet (`u = w`) or Neumann (`∂u/∂n = ∂w/∂n`) data from a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    pub kind: ConditionType,
    pub field: AnalyticField,
}

impl BoundaryCondition {
    pub fn new(kind: ConditionType, field: AnalyticField) -> Result<Self> {
        if kind == ConditionType::Neumann && !field.is_helmholtz_solution() {
            return Err(WbmError::InvalidParameter(
                "constant fields can only be used as Dirichlet data".into(),
            ));
        }
        Ok(Self { kind, field })
    }

    pub fn dirichlet(field: AnalyticField) -> Result<Self> {
        Self::new(ConditionType::Dirichlet, field)
    }

    pub fn neumann(field: AnalyticField) -> Result<Self> {
        Self::new(ConditionType::Neumann, field)
    }

    /// Boundary datum at `p` with outward unit normal `n`.
    pub fn trace(&self, p: Point2, n: Point2) -> Result<Complex64> {
        match self.kind {
            ConditionType::Dirichlet => self.field.value(p),
            ConditionType::Neumann => self.field.normal_derivative(p, n),
        }
    }
}
