//! The five built-in studies.

use num_complex::Complex64;

use crate::assembly::{Formulation, DEFAULT_QUAD_FACTOR};
use crate::boundarydata::{AnalyticField, BoundaryCondition};
use crate::error::{Result, WbmError};
use crate::geometry::{BoundingBox, CurveKind};
use crate::point::Point2;
use crate::solver::SolverOptions;

use super::config::{DEFAULT_GAMMA, DEFAULT_K, DEFAULT_N_P};
use super::{run_sweep, ExperimentConfig, SweepOutcome};

pub const PRESET_NAMES: [&str; 5] = [
    "disk-boxsize",
    "disk-pointsource",
    "crescent-const",
    "crescent-tallbox",
    "inverted-ellipse",
];

/// Plane-wave incidence angle of the disk study.
pub const DISK_ANGLE: f64 = 0.3;

/// Crescent `(a, b)` parameters, labelled I to III.
pub const CRESCENTS: [(&str, f64, f64); 3] = [("I", 0.5, 0.5), ("II", 0.4, 0.6), ("III", 0.1, 0.9)];

/// A named study made of one or more sweeps sharing an output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub variants: Vec<ExperimentConfig>,
}

impl Preset {
    pub fn run(&self) -> Result<SweepOutcome> {
        let mut out = SweepOutcome::default();
        for cfg in &self.variants {
            out.extend(run_sweep(cfg)?);
        }
        Ok(out)
    }

    pub fn variant(&self, experiment: &str) -> Option<&ExperimentConfig> {
        self.variants.iter().find(|c| c.name == experiment)
    }
}

fn sweep(start: u32, stop: u32, step: u32) -> Vec<f64> {
    (start..=stop).step_by(step as usize).map(f64::from).collect()
}

fn base(
    name: String,
    geometry: CurveKind,
    bbox: BoundingBox,
    bc: BoundaryCondition,
    t_sweep: Vec<f64>,
) -> ExperimentConfig {
    ExperimentConfig {
        name,
        geometry,
        bbox,
        k: DEFAULT_K,
        bc,
        formulations: vec![Formulation::WeightedResidual, Formulation::Collocation],
        gamma: DEFAULT_GAMMA,
        quad_factor: DEFAULT_QUAD_FACTOR,
        solver: SolverOptions::tsvd(),
        t_sweep,
        n_p: DEFAULT_N_P,
        row_weights: false,
        timing: true,
        output: None,
    }
}

fn unit_disk() -> CurveKind {
    CurveKind::Disk {
        center: Point2::new(1.5, 1.5),
        radius: 1.0,
    }
}

fn disk_boxsize() -> Result<Preset> {
    let bc = BoundaryCondition::neumann(AnalyticField::plane_wave(DISK_ANGLE, DEFAULT_K)?)?;
    let variants = [2.0, 2.5, 3.0, 3.5]
        .into_iter()
        .map(|edge: f64| {
            let bbox = BoundingBox::centered(Point2::new(1.5, 1.5), edge, edge)?;
            Ok(base(format!("disk-boxsize/edge={edge}"), unit_disk(), bbox, bc, sweep(1, 30, 1)))
        })
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "disk-boxsize",
        description: "unit disk, Neumann plane wave, square boxes of edge 2 to 3.5",
        variants,
    })
}

fn disk_pointsource() -> Result<Preset> {
    let bbox = BoundingBox::square(Point2::new(0.0, 0.0), 3.0)?;
    let variants = [-1.0, -0.01, 0.01, 0.2, 0.4]
        .into_iter()
        .map(|xs: f64| {
            let field = AnalyticField::point_source(Point2::new(xs, 1.5), DEFAULT_K)?;
            let bc = BoundaryCondition::dirichlet(field)?;
            Ok(base(format!("disk-pointsource/xs={xs}"), unit_disk(), bbox, bc, sweep(2, 40, 2)))
        })
        .collect::<Result<_>>()?;
    Ok(Preset {
        name: "disk-pointsource",
        description: "unit disk, Dirichlet data from a point source at (x_s, 1.5)",
        variants,
    })
}

fn constant_dirichlet() -> Result<BoundaryCondition> {
    BoundaryCondition::dirichlet(AnalyticField::constant(Complex64::new(1.0, 0.0), DEFAULT_K)?)
}

fn crescent_const() -> Result<Preset> {
    let bbox = BoundingBox::square(Point2::new(0.0, 0.0), 3.0)?;
    let bc = constant_dirichlet()?;
    let variants = CRESCENTS
        .iter()
        .map(|&(label, a, b)| {
            let geometry = CurveKind::Crescent {
                center: Point2::new(1.5, 1.5),
                a,
                b,
            };
            let mut cfg = base(format!("crescent-const/{label}"), geometry, bbox, bc, sweep(2, 40, 2));
            cfg.n_p = 3000;
            cfg
        })
        .collect();
    Ok(Preset {
        name: "crescent-const",
        description: "crescents I-III in the edge-3 box, constant Dirichlet data",
        variants,
    })
}

/// Center of the tall-box crescents. The box keeps the crescent pole outside.
pub const TALLBOX_CRESCENT_CENTER: Point2 = Point2 { x: 0.575, y: 1.75 };

fn crescent_tallbox() -> Result<Preset> {
    let bbox = BoundingBox::centered(Point2::new(0.64, 1.75), 1.4, 3.5)?;
    let bc = constant_dirichlet()?;
    let variants = CRESCENTS[..2]
        .iter()
        .map(|&(label, a, b)| {
            let geometry = CurveKind::Crescent {
                center: TALLBOX_CRESCENT_CENTER,
                a,
                b,
            };
            base(format!("crescent-tallbox/{label}"), geometry, bbox, bc, sweep(2, 40, 2))
        })
        .collect();
    Ok(Preset {
        name: "crescent-tallbox",
        description: "crescents I and II in a 1.4 x 3.5 box excluding the pole",
        variants,
    })
}

fn inverted_ellipse() -> Result<Preset> {
    let bbox = BoundingBox::new(Point2::new(0.0, 0.0), 2.0, 3.5)?;
    let bc = constant_dirichlet()?;
    let variants = [0.25, 0.35]
        .into_iter()
        .map(|tau: f64| {
            let geometry = CurveKind::InvertedEllipse {
                center: Point2::new(1.0, 1.75),
                tau,
            };
            let mut cfg = base(format!("inverted-ellipse/tau={tau}"), geometry, bbox, bc, sweep(5, 120, 5));
            cfg.gamma = 4.0;
            cfg.n_p = 2000;
            cfg
        })
        .collect();
    Ok(Preset {
        name: "inverted-ellipse",
        description: "inverted ellipses tau = 0.25, 0.35 in [0,2] x [0,3.5], gamma = 4",
        variants,
    })
}

pub fn presets() -> Vec<Preset> {
    PRESET_NAMES
        .iter()
        .map(|name| preset(name).expect("built-in presets are valid"))
        .collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "disk-boxsize" => disk_boxsize(),
        "disk-pointsource" => disk_pointsource(),
        "crescent-const" => crescent_const(),
        "crescent-tallbox" => crescent_tallbox(),
        "inverted-ellipse" => inverted_ellipse(),
        other => Err(WbmError::Config(format!(
            "unknown preset '{other}' (available: {})",
            PRESET_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for p in presets() {
            assert!(!p.variants.is_empty());
            for cfg in &p.variants {
                cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", cfg.name));
                assert!(cfg.name.starts_with(p.name));
            }
        }
    }

    #[test]
    fn preset_parameters() {
        let disk = preset("disk-boxsize").unwrap();
        let edges: Vec<f64> = disk.variants.iter().map(|c| c.bbox.lx).collect();
        assert_eq!(edges, vec![2.0, 2.5, 3.0, 3.5]);
        assert_eq!(disk.variants[0].k, 0.924);

        let cres = preset("crescent-const").unwrap();
        assert!(cres.variants.iter().all(|c| c.n_p == 3000 && c.bbox.lx == 3.0));

        let ell = preset("inverted-ellipse").unwrap();
        assert!(ell.variants.iter().all(|c| c.gamma == 4.0));
        assert_eq!(ell.variants[0].bbox, BoundingBox::new(Point2::new(0.0, 0.0), 2.0, 3.5).unwrap());
    }

    #[test]
    fn tallbox_pole_outside_box() {
        let p = preset("crescent-tallbox").unwrap();
        for cfg in &p.variants {
            let info = cfg.curve().unwrap().schwartz_singularities(&cfg.bbox);
            assert!(info.poles().all(|s| !s.inside_box));
        }
    }

    #[test]
    fn presets_round_trip_through_config_text() {
        for p in presets() {
            for cfg in &p.variants {
                let again: ExperimentConfig = cfg.to_string().parse().unwrap();
                assert_eq!(&again, cfg);
            }
        }
    }

    #[test]
    fn unknown_preset() {
        assert!(preset("nope").unwrap_err().is_config_error());
    }
}
