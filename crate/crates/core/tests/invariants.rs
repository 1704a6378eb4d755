//! Property tests for invariants that hold at every regular point.

use std::f64::consts::PI;

use circlag::atlas::{Chart, ChartPoint};
use circlag::catalog::SurfaceSpec;
use circlag::geom::{point_geometry, point_geometry_rotated, radius};
use circlag::global::{product_torus_willmore, willmore};
use num_complex::Complex64;
use proptest::prelude::*;

fn surface() -> impl Strategy<Value = SurfaceSpec> {
    prop_oneof![
        Just(SurfaceSpec::WhitneyC2),
        (0.0f64..2.5).prop_map(|t| SurfaceSpec::WhitneyCp2 { t }),
        (0.05f64..2.5).prop_map(|t| SurfaceSpec::WhitneyCh2 { t }),
        (0.0f64..0.7).prop_map(|s| SurfaceSpec::PsiCh2 { s }),
        Just(SurfaceSpec::EtaCh2),
        Just(SurfaceSpec::CliffordTorus),
        Just(SurfaceSpec::TotallyGeodesicCp2),
        (0.3f64..3.0, 0.3f64..3.0).prop_map(|(r1, r2)| SurfaceSpec::ProductTorusC2 { r1, r2 }),
    ]
}

/// A point of the standard domain, chosen by two unit fractions.
fn point_on(spec: &SurfaceSpec, a: f64, b: f64) -> Option<ChartPoint> {
    let grid = spec.standard_grid(40, 40).ok()?;
    let p = grid[((a * 40.0) as usize).min(39) * 40 + ((b * 40.0) as usize).min(39)];
    spec.well_conditioned(&p).then_some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_rotation_covariance(spec in surface(), a in 0.0f64..1.0, b in 0.0f64..1.0, alpha in -PI..PI) {
        let Some(p) = point_on(&spec, a, b) else { return Ok(()) };
        let base = point_geometry(&spec, &p).unwrap();
        let rot = point_geometry_rotated(&spec, &p, alpha).unwrap();
        let scale = base.quartic_scale();
        let phase = Complex64::from_polar(1.0, -4.0 * alpha);
        prop_assert!((rot.d - base.d * phase).norm() <= 1e-9 * scale);
        prop_assert!((rot.k_extrinsic - base.k_extrinsic).abs() <= 1e-10 * base.quadratic_scale());
        prop_assert!((rot.h2 - base.h2).abs() <= 1e-10 * base.quadratic_scale());
        prop_assert!((rot.sigma2 - base.sigma2).abs() <= 1e-10 * base.quadratic_scale());
        prop_assert!((rot.f.norm() - base.f.norm()).abs() <= 1e-9 * base.quadratic_scale());
        prop_assert!((rot.hc.norm() - base.hc.norm()).abs() <= 1e-9 * base.quadratic_scale());
    }

    #[test]
    fn radius_is_frame_and_route_independent(spec in surface(), a in 0.0f64..1.0, b in 0.0f64..1.0, alpha in -PI..PI) {
        prop_assume!(spec.expected_circular());
        let Some(p) = point_on(&spec, a, b) else { return Ok(()) };
        let base = radius(&point_geometry(&spec, &p).unwrap(), 1e-8).unwrap();
        let rot = radius(&point_geometry_rotated(&spec, &p, alpha).unwrap(), 1e-8).unwrap();
        prop_assert!(base.spread() <= 1e-8);
        prop_assert!((base.formula - rot.formula).abs() <= 1e-9);
    }

    #[test]
    fn sphere_charts_agree(t in 0.0f64..2.0, phi in 0.2f64..2.9, theta in 0.0f64..(2.0 * PI)) {
        let spec = SurfaceSpec::WhitneyCp2 { t };
        let sp = ChartPoint::new(Chart::Spherical, phi, theta);
        let x = sp.sphere_point().unwrap();
        let north = ChartPoint::new(Chart::StereoNorth, x[0] / (1.0 - x[2]), x[1] / (1.0 - x[2]));
        let a = point_geometry(&spec, &sp).unwrap();
        let b = point_geometry(&spec, &north).unwrap();
        prop_assert!((a.k_extrinsic - b.k_extrinsic).abs() <= 1e-9);
        prop_assert!((a.h2 - b.h2).abs() <= 1e-9);
    }
}

#[test]
fn willmore_converges_under_order_doubling() {
    let spec = SurfaceSpec::WhitneyCh2 { t: 1.5 };
    let errors: Vec<f64> = [(8, 16), (16, 32), (32, 64), (64, 128)]
        .iter()
        .map(|&o| (willmore(&spec, o).unwrap().w - 8.0 * PI).abs())
        .collect();
    for pair in errors.windows(2) {
        assert!(pair[1] <= pair[0] || pair[1] < 1e-12, "{errors:?}");
    }
    assert!(errors[3] < 1e-8, "{errors:?}");
}

#[test]
fn product_torus_willmore_is_symmetric_and_minimal_when_square() {
    assert!((product_torus_willmore(1.0, 3.0) - product_torus_willmore(3.0, 1.0)).abs() < 1e-15);
    assert!((product_torus_willmore(2.0, 2.0) - 2.0 * PI * PI).abs() < 1e-13);
    for (r1, r2) in [(1.0, 1.3), (0.4, 2.0)] {
        assert!(product_torus_willmore(r1, r2) > 2.0 * PI * PI);
    }
}
