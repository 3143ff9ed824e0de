use proptest::prelude::*;
use wbm_core::specfun::hankel1_0;
use wbm_core::{AnalyticField, BoundaryCondition, BoundaryCurve, Complex64, Point2};

const K: f64 = 0.924;

fn fields() -> Vec<AnalyticField> {
    vec![
        AnalyticField::plane_wave(0.3, K).unwrap(),
        AnalyticField::plane_wave(-2.0, 3.1).unwrap(),
        AnalyticField::point_source(Point2::new(0.4, 1.5), K).unwrap(),
        AnalyticField::point_source(Point2::new(-1.0, 1.5), 2.5).unwrap(),
    ]
}

fn source(f: &AnalyticField) -> Option<Point2> {
    match f.kind {
        wbm_core::FieldKind::PointSource { source } => Some(source),
        _ => None,
    }
}

/// Random point in [-1, 4]² at least 0.5 away from any source.
fn point_away(f: &AnalyticField, x: f64, y: f64) -> Option<Point2> {
    let p = Point2::new(x, y);
    match source(f) {
        Some(s) if p.distance(s) <= 0.5 => None,
        _ => Some(p),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gradient_matches_central_differences(i in 0..4usize, x in -1.0..4.0f64, y in -1.0..4.0f64) {
        let f = fields()[i];
        let Some(p) = point_away(&f, x, y) else { return Ok(()) };
        let h = 1e-6;
        let v = |q: Point2| f.value(q).unwrap();
        let fd = [
            (v(p + Point2::new(h, 0.0)) - v(p - Point2::new(h, 0.0))) / (2.0 * h),
            (v(p + Point2::new(0.0, h)) - v(p - Point2::new(0.0, h))) / (2.0 * h),
        ];
        let g = f.gradient(p).unwrap();
        let scale = g[0].norm().max(g[1].norm()).max(f.k * v(p).norm());
        for (a, b) in fd.iter().zip(g) {
            prop_assert!((a - b).norm() <= 1e-7 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn helmholtz_residual_away_from_source(i in 0..4usize, x in -1.0..4.0f64, y in -1.0..4.0f64) {
        let f = fields()[i];
        let Some(p) = point_away(&f, x, y) else { return Ok(()) };
        let h = 1e-4;
        let v = |q: Point2| f.value(q).unwrap();
        let c = v(p);
        let lap = (v(p + Point2::new(h, 0.0)) + v(p - Point2::new(h, 0.0))
            + v(p + Point2::new(0.0, h)) + v(p - Point2::new(0.0, h)) - c * 4.0) / (h * h);
        let residual = (lap + c * (f.k * f.k)).norm();
        prop_assert!(residual <= 1e-6 * f.k * f.k * c.norm(), "residual {residual:e} at {p:?}");
    }

    #[test]
    fn trace_is_linear(i in 0..4usize, t in 0.0..std::f64::consts::TAU, re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let f = fields()[i];
        let c = Complex64::new(re, im);
        let curve = BoundaryCurve::disk(Point2::new(1.5, 1.5), 1.0).unwrap();
        let s = curve.sample_at(t).unwrap();
        for make in [BoundaryCondition::dirichlet, BoundaryCondition::neumann] {
            let base = make(f).unwrap().trace(s.point, s.normal).unwrap();
            let scaled = make(f.scaled(c)).unwrap().trace(s.point, s.normal).unwrap();
            prop_assert!((scaled - c * base).norm() <= 1e-14 * (c * base).norm().max(1e-300));
        }
    }
}

#[test]
fn value_examples() {
    let pw = AnalyticField::plane_wave(0.3, K).unwrap();
    assert_eq!(pw.value(Point2::new(0.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    let g = pw.gradient(Point2::new(0.0, 0.0)).unwrap();
    assert!((g[0] - Complex64::new(0.0, K * 0.3f64.cos())).norm() < 1e-15);
    assert!((g[1] - Complex64::new(0.0, K * 0.3f64.sin())).norm() < 1e-15);

    let one = AnalyticField::constant(Complex64::new(1.0, 0.0), K).unwrap();
    assert_eq!(one.value(Point2::new(7.0, -2.0)).unwrap(), Complex64::new(1.0, 0.0));
    assert_eq!(one.gradient(Point2::new(7.0, -2.0)).unwrap(), [Complex64::new(0.0, 0.0); 2]);

    let ps = AnalyticField::point_source(Point2::new(0.0, 0.0), K).unwrap();
    let v = ps.value(Point2::new(0.6, 0.8)).unwrap();
    assert!((v - hankel1_0(K).unwrap()).norm() < 1e-15);
    assert!(ps.value(Point2::new(0.0, 0.0)).is_err());
}

#[test]
fn trace_examples() {
    let curve = BoundaryCurve::disk(Point2::new(0.0, 0.0), 1.0).unwrap();
    let bc = BoundaryCondition::neumann(AnalyticField::plane_wave(0.3, K).unwrap()).unwrap();
    let t = if curve.is_counterclockwise() { 0.3 } else { -0.3 };

    // Normal parallel to the propagation direction: ik·e^{ik d·p}.
    let s = curve.sample_at(t).unwrap();
    let expected = Complex64::new(0.0, K) * Complex64::from_polar(1.0, K);
    assert!((bc.trace(s.point, s.normal).unwrap() - expected).norm() < 1e-15);

    // Normal perpendicular to it.
    let s = curve.sample_at(t + std::f64::consts::FRAC_PI_2).unwrap();
    assert!(bc.trace(s.point, s.normal).unwrap().norm() < 1e-15);

    let ones = BoundaryCondition::dirichlet(AnalyticField::constant(Complex64::new(1.0, 0.0), K).unwrap()).unwrap();
    for s in curve.sample_boundary(17).unwrap() {
        assert_eq!(ones.trace(s.point, s.normal).unwrap(), Complex64::new(1.0, 0.0));
    }
}

#[test]
fn constant_neumann_rejected() {
    let one = AnalyticField::constant(Complex64::new(1.0, 0.0), K).unwrap();
    assert!(BoundaryCondition::neumann(one).is_err());
}

#[test]
fn source_on_boundary_rejected() {
    let curve = BoundaryCurve::disk(Point2::new(1.5, 1.5), 1.0).unwrap();
    let on = AnalyticField::point_source(Point2::new(2.5, 1.5), K).unwrap();
    assert!(on.check_against(&curve).is_err());
    let off = AnalyticField::point_source(Point2::new(0.4, 1.5), K).unwrap();
    off.check_against(&curve).unwrap();
}
