//! Experiment configuration and its flat `key = value` file format.
//!
//! ```text
//! # disk, Neumann plane wave
//! name = disk
//! geometry.kind = disk
//! geometry.center_x = 1.5
//! geometry.center_y = 1.5
//! geometry.radius = 1
//! box.origin_x = 0
//! box.origin_y = 0
//! box.lx = 3
//! box.ly = 3
//! k = 0.924
//! bc.type = neumann
//! bc.field = plane-wave
//! bc.angle = 0.3
//! formulations = weighted-residual, collocation
//! t_sweep = 1:30
//! ```
//!
//! Optional keys and defaults: `k = 0.924`, `gamma = 2`, `quad_factor = 20`,
//! `solver.method = tsvd`, `solver.epsilon` (method default), `n_p = 1000`,
//! `formulations` (both), `collocation.row_weights = false`, `timing = true`,
//! `output` (none). `t_sweep` takes a comma list or an inclusive
//! `start:stop[:step]` range.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::assembly::{Formulation, DEFAULT_QUAD_FACTOR};
use crate::boundarydata::{AnalyticField, BoundaryCondition, ConditionType, FieldKind};
use crate::error::{Result, WbmError};
use crate::geometry::{BoundaryCurve, BoundingBox, CurveKind};
use crate::point::Point2;
use crate::solver::{SolverMethod, SolverOptions};

use super::max_collocation_rows;

pub const DEFAULT_K: f64 = 0.924;
pub const DEFAULT_GAMMA: f64 = 2.0;
pub const DEFAULT_N_P: usize = 1000;

const CONTAINMENT_SAMPLES: usize = 2048;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Value of the `experiment` CSV column.
    pub name: String,
    pub geometry: CurveKind,
    pub bbox: BoundingBox,
    pub k: f64,
    pub bc: BoundaryCondition,
    pub formulations: Vec<Formulation>,
    pub gamma: f64,
    pub quad_factor: usize,
    pub solver: SolverOptions,
    pub t_sweep: Vec<f64>,
    pub n_p: usize,
    pub row_weights: bool,
    /// Record wall time; when off, `wall_ms` is written as 0.
    pub timing: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn curve(&self) -> Result<BoundaryCurve> {
        BoundaryCurve::new(self.geometry)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |msg: String| Err(WbmError::Config(msg));
        if self.name.is_empty() || self.name.contains([',', '"', '\n']) {
            return cfg_err(format!("invalid experiment name '{}'", self.name));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return cfg_err(format!("k must be positive, got {}", self.k));
        }
        if self.bc.field.k != self.k {
            return cfg_err(format!(
                "boundary field wavenumber {} differs from k = {}",
                self.bc.field.k, self.k
            ));
        }
        if self.formulations.is_empty() {
            return cfg_err("no formulations selected".into());
        }
        if !(self.gamma.is_finite() && self.gamma > 1.0) {
            return cfg_err(format!("gamma must exceed 1, got {}", self.gamma));
        }
        if self.quad_factor < 2 {
            return cfg_err(format!("quad_factor must be at least 2, got {}", self.quad_factor));
        }
        SolverOptions::new(self.solver.method, self.solver.epsilon)?;
        if self.t_sweep.is_empty() {
            return cfg_err("empty T sweep".into());
        }
        if self.t_sweep.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return cfg_err("T values must be positive".into());
        }
        if self.t_sweep.windows(2).any(|w| w[1] <= w[0]) {
            return cfg_err("T sweep must be strictly increasing".into());
        }
        let curve = self.curve()?;
        self.bbox.check_contains(&curve, CONTAINMENT_SAMPLES)?;
        self.bc.field.check_against(&curve)?;
        let m = max_collocation_rows(self)?;
        if self.n_p <= m {
            return cfg_err(format!(
                "n_p = {} must exceed the largest collocation count M = {m}",
                self.n_p
            ));
        }
        Ok(())
    }

    pub fn from_str_checked(text: &str) -> Result<Self> {
        let cfg: Self = text.parse()?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| WbmError::Io(format!("{}: {e}", path.display())))?;
        Self::from_str_checked(&text)
    }
}

/// Parses `"1,2,5"`, `"1:30"` or `"2:40:2"` (inclusive range).
pub fn parse_t_sweep(s: &str) -> Result<Vec<f64>> {
    let bad = || WbmError::Config(format!("invalid t_sweep '{s}'"));
    if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let (start, stop, step) = match parts[..] {
            [a, b] => (a, b, 1.0),
            [a, b, c] => (a, b, c),
            _ => return Err(bad()),
        };
        if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| start + i as f64 * step).collect())
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect()
    }
}

struct Entries {
    map: BTreeMap<String, String>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn required(&mut self, key: &str) -> Result<String> {
        self.take(key)
            .ok_or_else(|| WbmError::Config(format!("missing key '{key}'")))
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>> {
        self.take(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| WbmError::Config(format!("{key}: '{v}' is not a number")))
            })
            .transpose()
    }

    fn required_number(&mut self, key: &str) -> Result<f64> {
        self.number(key)?
            .ok_or_else(|| WbmError::Config(format!("missing key '{key}'")))
    }

    fn count(&mut self, key: &str) -> Result<Option<usize>> {
        self.take(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| WbmError::Config(format!("{key}: '{v}' is not a count")))
            })
            .transpose()
    }

    fn flag(&mut self, key: &str) -> Result<Option<bool>> {
        self.take(key)
            .map(|v| match v.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(WbmError::Config(format!("{key}: '{v}' is not a boolean"))),
            })
            .transpose()
    }

    fn center(&mut self) -> Result<Point2> {
        Ok(Point2::new(
            self.required_number("geometry.center_x")?,
            self.required_number("geometry.center_y")?,
        ))
    }
}

impl FromStr for ExperimentConfig {
    type Err = WbmError;

    fn from_str(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                WbmError::Config(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let key = key.trim().to_string();
            if map.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(WbmError::Config(format!(
                    "line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
        }
        let mut e = Entries { map };

        let name = e.take("name").unwrap_or_else(|| "experiment".into());
        let geometry = match e.required("geometry.kind")?.as_str() {
            "disk" => CurveKind::Disk {
                center: e.center()?,
                radius: e.required_number("geometry.radius")?,
            },
            "crescent" => CurveKind::Crescent {
                center: e.center()?,
                a: e.required_number("geometry.a")?,
                b: e.required_number("geometry.b")?,
            },
            "inverted-ellipse" => CurveKind::InvertedEllipse {
                center: e.center()?,
                tau: e.required_number("geometry.tau")?,
            },
            other => return Err(WbmError::Config(format!("unknown geometry.kind '{other}'"))),
        };
        let bbox = BoundingBox::new(
            Point2::new(
                e.required_number("box.origin_x")?,
                e.required_number("box.origin_y")?,
            ),
            e.required_number("box.lx")?,
            e.required_number("box.ly")?,
        )?;
        let k = e.number("k")?.unwrap_or(DEFAULT_K);
        let kind = match e.required("bc.type")?.as_str() {
            "dirichlet" => ConditionType::Dirichlet,
            "neumann" => ConditionType::Neumann,
            other => return Err(WbmError::Config(format!("unknown bc.type '{other}'"))),
        };
        let field_kind = match e.required("bc.field")?.as_str() {
            "plane-wave" => FieldKind::PlaneWave {
                angle: e.required_number("bc.angle")?,
            },
            "point-source" => FieldKind::PointSource {
                source: Point2::new(
                    e.required_number("bc.source_x")?,
                    e.required_number("bc.source_y")?,
                ),
            },
            "constant" => FieldKind::Constant {
                value: Complex64::new(
                    e.number("bc.value")?.unwrap_or(1.0),
                    e.number("bc.value_im")?.unwrap_or(0.0),
                ),
            },
            other => return Err(WbmError::Config(format!("unknown bc.field '{other}'"))),
        };
        let bc = BoundaryCondition::new(kind, AnalyticField::new(field_kind, k)?)?;

        let formulations = match e.take("formulations") {
            Some(list) => list
                .split(',')
                .map(|s| s.parse::<Formulation>())
                .collect::<Result<Vec<_>>>()?,
            None => vec![Formulation::WeightedResidual, Formulation::Collocation],
        };
        let gamma = e.number("gamma")?.unwrap_or(DEFAULT_GAMMA);
        let quad_factor = e.count("quad_factor")?.unwrap_or(DEFAULT_QUAD_FACTOR);
        let method = match e.take("solver.method") {
            Some(m) => m.parse::<SolverMethod>()?,
            None => SolverMethod::Tsvd,
        };
        let solver = match e.number("solver.epsilon")? {
            Some(eps) => SolverOptions::new(method, eps)?,
            None => SolverOptions::with_default_epsilon(method),
        };
        let t_sweep = parse_t_sweep(&e.required("t_sweep")?)?;
        let n_p = e.count("n_p")?.unwrap_or(DEFAULT_N_P);
        let row_weights = e.flag("collocation.row_weights")?.unwrap_or(false);
        let timing = e.flag("timing")?.unwrap_or(true);
        let output = e.take("output").map(PathBuf::from);

        if let Some(key) = e.map.keys().next() {
            return Err(WbmError::Config(format!("unknown key '{key}'")));
        }
        Ok(Self {
            name,
            geometry,
            bbox,
            k,
            bc,
            formulations,
            gamma,
            quad_factor,
            solver,
            t_sweep,
            n_p,
            row_weights,
            timing,
            output,
        })
    }
}

/// Writes the config in the file format accepted by `parse`.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "geometry.kind = {}", self.geometry.name())?;
        let center = match self.geometry {
            CurveKind::Disk { center, radius } => {
                writeln!(f, "geometry.radius = {radius:?}")?;
                center
            }
            CurveKind::Crescent { center, a, b } => {
                writeln!(f, "geometry.a = {a:?}")?;
                writeln!(f, "geometry.b = {b:?}")?;
                center
            }
            CurveKind::InvertedEllipse { center, tau } => {
                writeln!(f, "geometry.tau = {tau:?}")?;
                center
            }
        };
        writeln!(f, "geometry.center_x = {:?}", center.x)?;
        writeln!(f, "geometry.center_y = {:?}", center.y)?;
        writeln!(f, "box.origin_x = {:?}", self.bbox.origin.x)?;
        writeln!(f, "box.origin_y = {:?}", self.bbox.origin.y)?;
        writeln!(f, "box.lx = {:?}", self.bbox.lx)?;
        writeln!(f, "box.ly = {:?}", self.bbox.ly)?;
        writeln!(f, "k = {:?}", self.k)?;
        writeln!(f, "bc.type = {}", self.bc.kind.name())?;
        writeln!(f, "bc.field = {}", self.bc.field.kind.name())?;
        match self.bc.field.kind {
            FieldKind::PlaneWave { angle } => writeln!(f, "bc.angle = {angle:?}")?,
            FieldKind::PointSource { source } => {
                writeln!(f, "bc.source_x = {:?}", source.x)?;
                writeln!(f, "bc.source_y = {:?}", source.y)?;
            }
            FieldKind::Constant { value } => {
                writeln!(f, "bc.value = {:?}", value.re)?;
                writeln!(f, "bc.value_im = {:?}", value.im)?;
            }
        }
        let forms: Vec<&str> = self.formulations.iter().map(|x| x.name()).collect();
        writeln!(f, "formulations = {}", forms.join(", "))?;
        writeln!(f, "gamma = {:?}", self.gamma)?;
        writeln!(f, "quad_factor = {}", self.quad_factor)?;
        writeln!(f, "solver.method = {}", self.solver.method)?;
        writeln!(f, "solver.epsilon = {:?}", self.solver.epsilon)?;
        let ts: Vec<String> = self.t_sweep.iter().map(|t| format!("{t:?}")).collect();
        writeln!(f, "t_sweep = {}", ts.join(", "))?;
        writeln!(f, "n_p = {}", self.n_p)?;
        writeln!(f, "collocation.row_weights = {}", self.row_weights)?;
        writeln!(f, "timing = {}", self.timing)?;
        if let Some(out) = &self.output {
            writeln!(f, "output = {}", out.display())?;
        }
        Ok(())
    }
}
