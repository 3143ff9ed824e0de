//! The truncated set of WBM wave functions on a bounding box.
//!
//! Families 1 and 2 are standing waves in x, `cos(kx x) e^{-i ky y}`, and
//! families 3 and 4 are standing waves in y, `e^{-i kx x} cos(ky y)`, with
//! `kx^2 + ky^2 = k^2`. The standing wavenumbers are `mπ/Lx` (resp. `nπ/Ly`)
//! for `m = 0..=Nm` (resp. `n = 0..=Nn`).
//!
//! When the travelling component is imaginary the function is evanescent.
//! The two members of each evanescent pair decay away from opposite box
//! edges, and every function is scaled so that its modulus on the box is at
//! most one.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, WbmError};
use crate::geometry::BoundingBox;
use crate::point::Point2;

/// The four wave-function families, in coefficient-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Standing in x, travelling in +y (or decaying away from y = 0).
    XStandingForward,
    /// Standing in x, travelling in -y (or decaying away from y = Ly).
    XStandingBackward,
    /// Standing in y, travelling in +x (or decaying away from x = 0).
    YStandingForward,
    /// Standing in y, travelling in -x (or decaying away from x = Lx).
    YStandingBackward,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::XStandingForward,
        Family::XStandingBackward,
        Family::YStandingForward,
        Family::YStandingBackward,
    ];

    /// 1-based family number matching the coefficient blocks α⁽¹⁾…α⁽⁴⁾.
    pub fn number(self) -> u8 {
        match self {
            Family::XStandingForward => 1,
            Family::XStandingBackward => 2,
            Family::YStandingForward => 3,
            Family::YStandingBackward => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Family> {
        Family::ALL.get(usize::from(n).wrapping_sub(1)).copied()
    }

    fn standing_in_x(self) -> bool {
        matches!(self, Family::XStandingForward | Family::XStandingBackward)
    }

    fn forward(self) -> bool {
        matches!(self, Family::XStandingForward | Family::YStandingForward)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub family: Family,
    pub order: usize,
}

impl BasisIndex {
    pub fn new(family: Family, order: usize) -> Self {
        Self { family, order }
    }
}

/// Basis counts from the truncation rule `Nm = ⌈kTLx/π⌉`, `Nn = ⌈kTLy/π⌉`.
pub fn truncation_counts(k: f64, t: f64, bbox: &BoundingBox) -> Result<(usize, usize)> {
    if !(k.is_finite() && k > 0.0) {
        return Err(WbmError::InvalidParameter(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(WbmError::InvalidParameter(format!(
            "truncation parameter must be positive, got {t}"
        )));
    }
    let nm = (k * t * bbox.lx / PI).ceil() as usize;
    let nn = (k * t * bbox.ly / PI).ceil() as usize;
    Ok((nm, nn))
}

/// Wavenumber `k`, truncation parameter `T` and bounding box, with the
/// derived basis counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveBasisSpec {
    pub bbox: BoundingBox,
    pub k: f64,
    pub truncation: f64,
    pub nm: usize,
    pub nn: usize,
}

impl WaveBasisSpec {
    pub fn new(bbox: BoundingBox, k: f64, truncation: f64) -> Result<Self> {
        let (nm, nn) = truncation_counts(k, truncation, &bbox)?;
        Ok(Self {
            bbox,
            k,
            truncation,
            nm,
            nn,
        })
    }

    /// Total number of degrees of freedom, `2(Nm+1) + 2(Nn+1)`.
    pub fn len(&self) -> usize {
        2 * (self.nm + 1) + 2 * (self.nn + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn max_order(&self, family: Family) -> usize {
        if family.standing_in_x() {
            self.nm
        } else {
            self.nn
        }
    }

    /// All indices in coefficient-vector order.
    pub fn indices(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        Family::ALL.into_iter().flat_map(move |family| {
            (0..=self.max_order(family)).map(move |order| BasisIndex { family, order })
        })
    }

    /// Position of `idx` in the coefficient vector.
    pub fn position(&self, idx: BasisIndex) -> Result<usize> {
        self.check(idx)?;
        let before: usize = Family::ALL
            .iter()
            .take_while(|&&f| f != idx.family)
            .map(|&f| self.max_order(f) + 1)
            .sum();
        Ok(before + idx.order)
    }

    fn check(&self, idx: BasisIndex) -> Result<()> {
        let max_order = self.max_order(idx.family);
        if idx.order > max_order {
            return Err(WbmError::InvalidIndex {
                family: idx.family.number(),
                order: idx.order,
                max_order,
            });
        }
        Ok(())
    }

    /// `(kx, ky)` for a basis index.
    pub fn wavenumbers(&self, idx: BasisIndex) -> Result<(Complex64, Complex64)> {
        let f = self.function(idx)?;
        let standing = Complex64::new(f.standing, 0.0);
        Ok(if idx.family.standing_in_x() {
            (standing, f.travel)
        } else {
            (f.travel, standing)
        })
    }

    pub fn function(&self, idx: BasisIndex) -> Result<WaveFunction> {
        self.check(idx)?;
        let in_x = idx.family.standing_in_x();
        let (standing_len, travel_len) = if in_x {
            (self.bbox.lx, self.bbox.ly)
        } else {
            (self.bbox.ly, self.bbox.lx)
        };
        let standing = idx.order as f64 * PI / standing_len;
        let disc = self.k * self.k - standing * standing;
        let forward = idx.family.forward();
        let (travel, log_scale) = if disc >= 0.0 {
            let s = disc.sqrt();
            (Complex64::new(if forward { s } else { -s }, 0.0), 0.0)
        } else {
            let beta = (-disc).sqrt();
            if forward {
                // e^{-i(-iβ)s} = e^{-βs}: largest at s = 0.
                (Complex64::new(0.0, -beta), 0.0)
            } else {
                // e^{βs}: largest at s = L, scaled by e^{-βL}.
                (Complex64::new(0.0, beta), -beta * travel_len)
            }
        };
        Ok(WaveFunction {
            index: idx,
            origin: self.bbox.origin,
            standing_in_x: in_x,
            standing,
            travel,
            log_scale,
        })
    }

    /// All functions in coefficient-vector order.
    pub fn functions(&self) -> Vec<WaveFunction> {
        self.indices()
            .map(|idx| self.function(idx).expect("enumerated index is valid"))
            .collect()
    }

    pub fn evaluate(&self, idx: BasisIndex, p: Point2) -> Result<Complex64> {
        Ok(self.function(idx)?.value(p))
    }

    pub fn gradient(&self, idx: BasisIndex, p: Point2) -> Result<[Complex64; 2]> {
        Ok(self.function(idx)?.gradient(p))
    }

    /// `∇Φ · n` for a unit vector `n`.
    pub fn normal_derivative(&self, idx: BasisIndex, p: Point2, n: Point2) -> Result<Complex64> {
        Ok(self.function(idx)?.normal_derivative(p, n))
    }
}

/// One scaled wave function with its wavenumbers precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFunction {
    pub index: BasisIndex,
    origin: Point2,
    standing_in_x: bool,
    /// Real wavenumber of the cosine factor.
    standing: f64,
    /// Wavenumber of the exponential factor; purely imaginary if evanescent.
    travel: Complex64,
    /// Logarithm of the sup-norm scaling factor (0 unless growing).
    log_scale: f64,
}

impl WaveFunction {
    pub fn is_evanescent(&self) -> bool {
        self.travel.im != 0.0
    }

    /// Scaling factor applied to the unscaled function.
    pub fn scale(&self) -> f64 {
        self.log_scale.exp()
    }

    /// Coordinates (standing, travelling) relative to the box origin.
    fn split(&self, p: Point2) -> (f64, f64) {
        let q = p - self.origin;
        if self.standing_in_x {
            (q.x, q.y)
        } else {
            (q.y, q.x)
        }
    }

    /// Scaled `e^{-i travel s}`.
    fn exponential(&self, s: f64) -> Complex64 {
        let modulus = (self.travel.im * s + self.log_scale).exp();
        Complex64::from_polar(modulus, -self.travel.re * s)
    }

    pub fn value(&self, p: Point2) -> Complex64 {
        let (c, s) = self.split(p);
        (self.standing * c).cos() * self.exponential(s)
    }

    pub fn gradient(&self, p: Point2) -> [Complex64; 2] {
        let (c, s) = self.split(p);
        let e = self.exponential(s);
        let (sin, cos) = (self.standing * c).sin_cos();
        let d_standing = -self.standing * sin * e;
        let d_travel = -Complex64::i() * self.travel * cos * e;
        if self.standing_in_x {
            [d_standing, d_travel]
        } else {
            [d_travel, d_standing]
        }
    }

    pub fn normal_derivative(&self, p: Point2, n: Point2) -> Complex64 {
        debug_assert!(
            (n.norm() - 1.0).abs() < 1e-8,
            "normal must have unit length, got {n:?}"
        );
        let [gx, gy] = self.gradient(p);
        gx * n.x + gy * n.y
    }

    /// Value and normal derivative together.
    pub fn value_and_normal_derivative(&self, p: Point2, n: Point2) -> (Complex64, Complex64) {
        let (c, s) = self.split(p);
        let e = self.exponential(s);
        let (sin, cos) = (self.standing * c).sin_cos();
        let value = cos * e;
        let d_standing = -self.standing * sin * e;
        let d_travel = -Complex64::i() * self.travel * value;
        let dn = if self.standing_in_x {
            d_standing * n.x + d_travel * n.y
        } else {
            d_travel * n.x + d_standing * n.y
        };
        (value, dn)
    }
}
