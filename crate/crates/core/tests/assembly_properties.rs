use std::f64::consts::TAU;

use nalgebra::DMatrix;
use proptest::prelude::*;
use wbm_core::assembly::{
    collocation_rows, collocation_system, collocation_system_with, weighted_residual_system,
    CollocationOptions,
};
use wbm_core::wavebasis::{BasisIndex, Family};
use wbm_core::{
    AnalyticField, BoundaryCondition, BoundaryCurve, BoundingBox, Complex64, Formulation, Point2,
    WaveBasisSpec,
};

const K: f64 = 0.924;

/// J0(0.924), evaluated to 30 digits with mpmath.
const J0_K: f64 = 0.797_679_042_703_020_3;

fn disk_setup(t: f64) -> (WaveBasisSpec, BoundaryCurve) {
    let bbox = BoundingBox::square(Point2::new(0.0, 0.0), 3.0).unwrap();
    let spec = WaveBasisSpec::new(bbox, K, t).unwrap();
    (spec, BoundaryCurve::disk(Point2::new(1.5, 1.5), 1.0).unwrap())
}

fn neumann_plane_wave() -> BoundaryCondition {
    BoundaryCondition::neumann(AnalyticField::plane_wave(0.3, K).unwrap()).unwrap()
}

fn ones() -> BoundaryCondition {
    BoundaryCondition::dirichlet(AnalyticField::constant(Complex64::new(1.0, 0.0), K).unwrap()).unwrap()
}

fn max_abs(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn symmetry_defect(a: &DMatrix<Complex64>) -> f64 {
    max_abs(&(a - a.transpose())) / max_abs(a)
}

#[test]
fn weighted_residual_symmetric_at_q_20n() {
    let (spec, curve) = disk_setup(2.0);
    assert_eq!(spec.len(), 12);
    let sys = weighted_residual_system(&spec, &curve, &neumann_plane_wave(), 240).unwrap();
    assert_eq!((sys.rows(), sys.cols()), (12, 12));
    assert!(symmetry_defect(&sys.matrix) <= 1e-10);

    // The same holds for the other curves at larger T.
    let crescent = BoundaryCurve::crescent(Point2::new(1.5, 1.5), 0.5, 0.5).unwrap();
    let (spec, _) = disk_setup(6.0);
    let sys = weighted_residual_system(&spec, &crescent, &neumann_plane_wave(), 20 * spec.len()).unwrap();
    assert!(symmetry_defect(&sys.matrix) <= 1e-10);
}

#[test]
fn symmetry_defect_shrinks_with_quadrature() {
    let (spec, curve) = disk_setup(2.0);
    let bc = neumann_plane_wave();
    let defects: Vec<f64> = [24, 30, 40]
        .iter()
        .map(|&q| symmetry_defect(&weighted_residual_system(&spec, &curve, &bc, q).unwrap().matrix))
        .collect();
    assert!(defects[0] > defects[1] && defects[1] > defects[2], "{defects:?}");
}

#[test]
fn quadrature_self_convergence() {
    for bc in [neumann_plane_wave(), ones()] {
        let (spec, curve) = disk_setup(4.0);
        let n = spec.len();
        let coarse = weighted_residual_system(&spec, &curve, &bc, 10 * n).unwrap();
        let fine = weighted_residual_system(&spec, &curve, &bc, 20 * n).unwrap();
        // Relative to the largest entry: entries that vanish analytically
        // only carry rounding noise.
        let scale = max_abs(&fine.matrix);
        for (a, b) in coarse.matrix.iter().zip(fine.matrix.iter()) {
            assert!((a - b).norm() < 1e-12 * scale, "{a} vs {b}");
        }
        let scale = fine.rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in coarse.rhs.iter().zip(fine.rhs.iter()) {
            assert!((a - b).norm() < 1e-12 * scale);
        }
    }
}

#[test]
fn dirichlet_rhs_matches_bessel_closed_form() {
    // ∮ e^{-ik(1.5 + sin t)} dt over the unit circle = 2π J0(k) e^{-1.5ik}.
    let (spec, curve) = disk_setup(2.0);
    let sys = weighted_residual_system(&spec, &curve, &ones(), 2000).unwrap();
    let pos = spec.position(BasisIndex::new(Family::XStandingForward, 0)).unwrap();
    let expected = Complex64::from_polar(TAU * J0_K, -1.5 * K);
    assert!((sys.rhs[pos] - expected).norm() < 1e-14);
}

#[test]
fn quadrature_below_2n_rejected() {
    let (spec, curve) = disk_setup(2.0);
    assert!(weighted_residual_system(&spec, &curve, &ones(), 23).is_err());
    assert!(weighted_residual_system(&spec, &curve, &ones(), 24).is_ok());
}

#[test]
fn collocation_shape_and_rhs() {
    let (spec, curve) = disk_setup(2.0);
    let sys = collocation_system(&spec, &curve, &ones(), 2.0).unwrap();
    assert_eq!((sys.rows(), sys.cols()), (24, 12));
    assert_eq!(sys.formulation, Formulation::Collocation);
    assert!(sys.rhs.iter().all(|z| *z == Complex64::new(1.0, 0.0)));
    assert_eq!(collocation_rows(4.0, 394), 1576);
    assert_eq!(collocation_rows(1.1, 10), 11);
    assert!(collocation_system(&spec, &curve, &ones(), 1.0).is_err());
}

#[test]
fn collocation_row_weights_scale_rows_and_rhs() {
    let (spec, curve) = disk_setup(3.0);
    let bc = neumann_plane_wave();
    let plain = collocation_system(&spec, &curve, &bc, 2.0).unwrap();
    let opts = CollocationOptions { gamma: 2.0, row_weights: true };
    let weighted = collocation_system_with(&spec, &curve, &bc, &opts).unwrap();
    let m = plain.rows();
    let w = (TAU / m as f64).sqrt();
    assert!((&plain.matrix * Complex64::new(w, 0.0) - &weighted.matrix).norm() < 1e-14 * plain.matrix.norm());
    assert!((&plain.rhs * Complex64::new(w, 0.0) - &weighted.rhs).norm() < 1e-14 * plain.rhs.norm());
}

#[test]
fn rejects_uncontained_curve_and_source_on_curve() {
    let small = BoundingBox::square(Point2::new(0.0, 0.0), 2.0).unwrap();
    let spec = WaveBasisSpec::new(small, K, 2.0).unwrap();
    let curve = BoundaryCurve::disk(Point2::new(1.5, 1.5), 1.0).unwrap();
    assert!(collocation_system(&spec, &curve, &ones(), 2.0).is_err());

    let (spec, curve) = disk_setup(2.0);
    let on = BoundaryCondition::dirichlet(AnalyticField::point_source(Point2::new(2.5, 1.5), K).unwrap()).unwrap();
    assert!(collocation_system(&spec, &curve, &on, 2.0).is_err());
    assert!(weighted_residual_system(&spec, &curve, &on, 400).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn collocation_entries_are_basis_traces(t in 1u32..15, i in 0.0..1.0f64, j in 0.0..1.0f64, neumann in any::<bool>()) {
        let (spec, curve) = disk_setup(f64::from(t));
        let bc = if neumann { neumann_plane_wave() } else {
            BoundaryCondition::dirichlet(AnalyticField::point_source(Point2::new(0.4, 1.5), K).unwrap()).unwrap()
        };
        let sys = collocation_system(&spec, &curve, &bc, 2.0).unwrap();
        let row = ((i * sys.rows() as f64) as usize).min(sys.rows() - 1);
        let col = ((j * sys.cols() as f64) as usize).min(sys.cols() - 1);
        let s = curve.sample_at(TAU * row as f64 / sys.rows() as f64).unwrap();
        let idx = spec.indices().nth(col).unwrap();
        let expected = if neumann {
            spec.normal_derivative(idx, s.point, s.normal).unwrap()
        } else {
            spec.evaluate(idx, s.point).unwrap()
        };
        prop_assert!((sys.matrix[(row, col)] - expected).norm() <= 1e-15 * expected.norm().max(1.0));
        prop_assert_eq!(sys.rhs[row], bc.trace(s.point, s.normal).unwrap());
    }

    #[test]
    fn rhs_linear_in_field(re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let (spec, curve) = disk_setup(3.0);
        let c = Complex64::new(re, im);
        let field = AnalyticField::plane_wave(0.3, K).unwrap();
        let base = BoundaryCondition::neumann(field).unwrap();
        let scaled = BoundaryCondition::neumann(field.scaled(c)).unwrap();
        let a = weighted_residual_system(&spec, &curve, &base, 400).unwrap();
        let b = weighted_residual_system(&spec, &curve, &scaled, 400).unwrap();
        prop_assert_eq!(&a.matrix, &b.matrix);
        prop_assert!((&a.rhs * c - &b.rhs).norm() <= 1e-14 * (a.rhs.norm() * c.norm()).max(1e-300));
        let a = collocation_system(&spec, &curve, &base, 2.0).unwrap();
        let b = collocation_system(&spec, &curve, &scaled, 2.0).unwrap();
        prop_assert!((&a.rhs * c - &b.rhs).norm() <= 1e-14 * (a.rhs.norm() * c.norm()).max(1e-300));
    }
}
