//! Grid scans, global integrals and pinching reports.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{neumaier_sum, ChartPoint, QuadratureRule};
use crate::catalog::SurfaceSpec;
use crate::error::{Error, Result};
use crate::geom::{point_geometry, PointGeometry};

/// Default scale-aware tolerance for the circular flag of a scan.
pub const CIRCULAR_TOLERANCE: f64 = 1e-8;
/// Default tolerance on |H| for the minimal flag of a scan.
pub const MINIMAL_TOLERANCE: f64 = 1e-8;
/// Default slack on R ≥ 1/√2 in pinching reports.
pub const PINCHING_TOLERANCE: f64 = 1e-8;

/// A sampled extreme value and where it was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub point: ChartPoint,
    /// Height z of the point on S², for sphere charts.
    pub z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub surface: SurfaceSpec,
    pub grid: (usize, usize),
    /// Points actually evaluated (ill-conditioned points are skipped).
    pub points: usize,
    pub k_min: Extremum,
    pub k_max: Extremum,
    /// Extremes of √(½(c/4 + |H|² − K)); the ellipse radius where the
    /// ellipse is a circle.
    pub r_min: f64,
    pub r_max: f64,
    pub max_d: f64,
    /// max |D| / (1 + |σ|²)².
    pub max_d_scaled: f64,
    pub max_h: f64,
    pub compact: bool,
    pub circular: bool,
    pub circular_tol: f64,
    pub minimal: bool,
    pub minimal_tol: f64,
}

struct ScanSample {
    point: ChartPoint,
    k: f64,
    r: f64,
    d: f64,
    d_scaled: f64,
    h: f64,
}

impl ScanSample {
    fn of(pg: &PointGeometry) -> Self {
        ScanSample {
            point: pg.point,
            k: pg.k_extrinsic,
            r: pg.r,
            d: pg.d.norm(),
            d_scaled: pg.d.norm() / pg.quartic_scale(),
            h: pg.h2.max(0.0).sqrt(),
        }
    }
}

/// Scan over the standard n1 × n2 grid with the default flag tolerances.
pub fn curvature_scan(spec: &SurfaceSpec, grid: (usize, usize)) -> Result<ScanReport> {
    curvature_scan_with(spec, grid, CIRCULAR_TOLERANCE, MINIMAL_TOLERANCE)
}

/// Scan over the standard grid. Points are evaluated in parallel; the
/// reduction runs in grid order, and ties keep the first point.
pub fn curvature_scan_with(
    spec: &SurfaceSpec,
    grid: (usize, usize),
    circular_tol: f64,
    minimal_tol: f64,
) -> Result<ScanReport> {
    let points = spec.standard_grid(grid.0, grid.1)?;
    let samples: Vec<ScanSample> = points
        .par_iter()
        .map(|p| point_geometry(spec, p).map(|pg| ScanSample::of(&pg)))
        .collect::<Result<_>>()?;

    let first = &samples[0];
    let extremum = |s: &ScanSample| Extremum {
        value: s.k,
        point: s.point,
        z: s.point.sphere_point().map(|x| x[2]),
    };
    let mut k_min = extremum(first);
    let mut k_max = extremum(first);
    let (mut r_min, mut r_max) = (first.r, first.r);
    let (mut max_d, mut max_d_scaled, mut max_h) = (0.0f64, 0.0f64, 0.0f64);
    for s in &samples {
        if s.k < k_min.value {
            k_min = extremum(s);
        }
        if s.k > k_max.value {
            k_max = extremum(s);
        }
        r_min = r_min.min(s.r);
        r_max = r_max.max(s.r);
        max_d = max_d.max(s.d);
        max_d_scaled = max_d_scaled.max(s.d_scaled);
        max_h = max_h.max(s.h);
    }

    Ok(ScanReport {
        surface: *spec,
        grid,
        points: samples.len(),
        k_min,
        k_max,
        r_min,
        r_max,
        max_d,
        max_d_scaled,
        max_h,
        compact: spec.is_compact(),
        circular: max_d_scaled < circular_tol,
        circular_tol,
        minimal: max_h < minimal_tol,
        minimal_tol,
    })
}

/// Outcome of the radius pinching test on sampled data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinchingReport {
    pub surface: SurfaceSpec,
    pub r_min: f64,
    pub threshold: f64,
    pub tol: f64,
    /// R ≥ 1/√2 − tol at every grid point.
    pub radius_pinched: bool,
    pub circular: bool,
    pub compact: bool,
    /// Compact, circular and radius-pinched.
    pub hypothesis_holds: bool,
    /// Minimal with K ≤ 0 everywhere (the flat minimal case).
    pub flat_minimal: bool,
    /// Whether the catalog says this surface should satisfy the
    /// hypothesis (only the Clifford torus does).
    pub expected: bool,
    pub consistent: bool,
    pub verdict: String,
}

pub fn pinching_report(scan: &ScanReport) -> PinchingReport {
    pinching_report_with(scan, PINCHING_TOLERANCE)
}

pub fn pinching_report_with(scan: &ScanReport, tol: f64) -> PinchingReport {
    let threshold = FRAC_1_SQRT_2;
    let radius_pinched = scan.r_min >= threshold - tol;
    let hypothesis_holds = scan.compact && scan.circular && radius_pinched;
    let flat_minimal = scan.minimal && scan.k_max.value <= tol;
    let expected = matches!(scan.surface, SurfaceSpec::CliffordTorus);
    let consistent = hypothesis_holds == expected;

    let verdict = match (hypothesis_holds, consistent) {
        (true, true) => format!(
            "hypothesis holds (R >= 1/sqrt(2) with R_min = {:.12}); consistent with the Clifford torus characterization",
            scan.r_min
        ),
        (false, true) => {
            let reason = if !scan.compact {
                "surface is not compact".to_string()
            } else if !scan.circular {
                "ellipse of curvature is not a circle".to_string()
            } else {
                format!("R_min = {:.12} < 1/sqrt(2)", scan.r_min)
            };
            format!("hypothesis not satisfied ({reason})")
        }
        (true, false) => "INCONSISTENT: hypothesis holds on a surface other than the Clifford torus".into(),
        (false, false) => "INCONSISTENT: the Clifford torus fails the hypothesis".into(),
    };

    PinchingReport {
        surface: scan.surface,
        r_min: scan.r_min,
        threshold,
        tol,
        radius_pinched,
        circular: scan.circular,
        compact: scan.compact,
        hypothesis_holds,
        flat_minimal,
        expected,
        consistent,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WillmoreReport {
    pub surface: SurfaceSpec,
    /// ∫|H|² dA.
    pub h2_integral: f64,
    pub area: f64,
    pub c: f64,
    /// ∫|H|² dA + (c/2) Area.
    pub w: f64,
    pub chi: i32,
    /// 4πχ.
    pub bound: f64,
    /// |W − 4πχ|.
    pub defect: f64,
    pub orders: (usize, usize),
}

/// ∫|H|² dA + (c/2)·Area over a compact catalog surface.
///
/// Spheres use Gauss–Legendre in cos φ times the trapezoid rule in θ; the
/// product torus uses the trapezoid rule in both angles. The Clifford
/// section covers its torus three times and noncompact surfaces have no
/// finite area, so both are rejected.
pub fn willmore(spec: &SurfaceSpec, orders: (usize, usize)) -> Result<WillmoreReport> {
    spec.validate()?;
    if orders.0 < 2 || orders.1 < 3 {
        return Err(Error::Unsupported(format!(
            "quadrature orders must be at least 2x3, got {}x{}",
            orders.0, orders.1
        )));
    }
    let chi = spec.euler_characteristic();
    let rule = match (spec, chi) {
        (SurfaceSpec::ProductTorusC2 { .. }, _) => QuadratureRule::torus(orders.0, orders.1),
        (SurfaceSpec::CliffordTorus, _) => {
            return Err(Error::Unsupported(
                "the Clifford torus section is a triple cover; its integrals are not computed".into(),
            ))
        }
        (_, Some(2)) => QuadratureRule::sphere(orders.0, orders.1),
        _ => {
            return Err(Error::Unsupported(format!(
                "{} is not compact; the Willmore functional is not defined",
                spec.kind()
            )))
        }
    };
    let chi = chi.expect("compact catalog surfaces have a known Euler characteristic");

    let values: Vec<(f64, f64)> = rule
        .nodes
        .par_iter()
        .zip(rule.reference_density.par_iter())
        .map(|(p, rho)| {
            let pg = point_geometry(spec, p)?;
            let da = pg.area_density / rho;
            let pair = (pg.h2 * da, da);
            if pair.0.is_finite() && pair.1.is_finite() {
                Ok(pair)
            } else {
                Err(Error::NonFinite {
                    what: "Willmore integrand".into(),
                    p1: p.p1,
                    p2: p.p2,
                })
            }
        })
        .collect::<Result<_>>()?;

    let h2_integral = neumaier_sum(values.iter().zip(&rule.weights).map(|(v, w)| v.0 * w));
    let area = neumaier_sum(values.iter().zip(&rule.weights).map(|(v, w)| v.1 * w));
    let c = spec.ambient().c;
    let w = h2_integral + c / 2.0 * area;
    let bound = 4.0 * PI * chi as f64;
    Ok(WillmoreReport {
        surface: *spec,
        h2_integral,
        area,
        c,
        w,
        chi,
        bound,
        defect: (w - bound).abs(),
        orders: rule.orders,
    })
}

/// W = π²(r₁/r₂ + r₂/r₁) for the product torus S¹(r₁) × S¹(r₂).
pub fn product_torus_willmore(r1: f64, r2: f64) -> f64 {
    PI * PI * (r1 / r2 + r2 / r1)
}
