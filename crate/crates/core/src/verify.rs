//! The full invariant suite for one catalog surface.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::ChartPoint;
use crate::catalog::SurfaceSpec;
use crate::error::{Error, Result};
use crate::geom::{
    density_identity_defects, gauss_curvature_intrinsic, point_geometry, product_identity_check,
    PointGeometry,
};
use crate::global::{
    curvature_scan_with, pinching_report, product_torus_willmore, willmore, ScanReport,
    WillmoreReport,
};

/// Quantities the negative control must keep away from zero.
pub const NEGATIVE_CONTROL_MARGIN: f64 = 0.1;

/// Named tolerances, overridable one at a time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Exact algebraic structure: lift membership, horizontality, the
    /// Lagrangian condition, frame decomposition, route agreement.
    pub structural: f64,
    /// Identities between computed invariants, and circularity.
    pub geometric: f64,
    /// Relative agreement of extrinsic and finite-difference intrinsic K.
    pub fd: f64,
    /// Slack on known curvature bounds.
    pub range: f64,
    /// |W − 4πχ| in the equality case.
    pub willmore: f64,
    /// |W − π²(r₁/r₂ + r₂/r₁)| for the product torus.
    pub willmore_torus: f64,
    /// F·conj(Hc) against D.
    pub product: f64,
    /// Permutation symmetry of C_ijk.
    pub symmetry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-10,
            geometric: 1e-8,
            fd: 1e-4,
            range: 1e-6,
            willmore: 1e-5,
            willmore_torus: 1e-6,
            product: 1e-9,
            symmetry: 1e-10,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 8] = [
        "structural",
        "geometric",
        "fd",
        "range",
        "willmore",
        "willmore_torus",
        "product",
        "symmetry",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "structural" => &mut self.structural,
            "geometric" => &mut self.geometric,
            "fd" => &mut self.fd,
            "range" => &mut self.range,
            "willmore" => &mut self.willmore,
            "willmore_torus" => &mut self.willmore_torus,
            "product" => &mut self.product,
            "symmetry" => &mut self.symmetry,
            _ => return None,
        })
    }

    /// Overrides one tolerance by name. Values must be positive and finite.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Unsupported(format!(
                "tolerance `{name}` must be positive and finite, got {value}"
            )));
        }
        let slot = self.slot(name).ok_or_else(|| {
            Error::Unsupported(format!(
                "unknown tolerance `{name}` (expected one of {})",
                Self::NAMES.join(", ")
            ))
        })?;
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub grid: (usize, usize),
    pub quad: (usize, usize),
    /// Random points for the finite-difference and identity checks.
    pub samples: usize,
    pub seed: u64,
    /// Step of the central differences in the intrinsic curvature.
    pub fd_step: f64,
    pub tol: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: (64, 64),
            quad: (128, 256),
            samples: 200,
            seed: 0,
            fd_step: 1e-4,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// The identity or property being checked.
    pub reference: &'static str,
    pub max_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, reference: &'static str, max_defect: f64, tol: f64) -> Self {
        Check {
            name,
            reference,
            max_defect,
            tol,
            // NaN defects fail
            pass: max_defect <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub surface: &'static str,
    pub params: BTreeMap<&'static str, f64>,
    pub grid: (usize, usize),
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(rename = "K_range")]
    pub k_range: (f64, f64),
    #[serde(rename = "R_range")]
    pub r_range: (f64, f64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub willmore: Option<WillmoreReport>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// `n` well-conditioned random points of the standard domain.
pub fn sample_points(spec: &SurfaceSpec, n: usize, seed: u64) -> Result<Vec<ChartPoint>> {
    let domain = spec.standard_domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while points.len() < n {
        attempts += 1;
        if attempts > 100 * (n + 1) {
            return Err(Error::EmptyDomain);
        }
        let p = domain.sample(&mut rng)?;
        if spec.well_conditioned(&p) {
            points.push(p);
        }
    }
    Ok(points)
}

/// Every pointwise check that applies to `spec`, evaluated at one point.
/// `k_intrinsic` enables the Gauss equation check.
pub fn point_checks(
    spec: &SurfaceSpec,
    pg: &PointGeometry,
    k_intrinsic: Option<f64>,
    tol: &Tolerances,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut push = |name, reference, defect, tol| checks.push(Check::new(name, reference, defect, tol));
    let lift = spec.ambient().is_lift();

    if lift {
        push(
            "membership",
            "<psi, psi> = +1 on S^5, -1 on H^5_1",
            pg.membership_defect,
            tol.structural,
        );
        push(
            "horizontality",
            "<d psi, psi> = 0 (lift orthogonal to the fibers)",
            pg.horizontality_defect,
            tol.structural,
        );
    }
    push(
        "lagrangian",
        "Im <d_u, d_v> = 0 (symplectic form vanishes on the tangent plane)",
        pg.lagrangian_defect,
        tol.structural,
    );
    push(
        "frame_split",
        "second derivatives lie in span{tangent, J tangent, psi, i psi}",
        pg.split_residual.max(pg.normal_defect),
        tol.structural,
    );
    if lift {
        push(
            "lift_decomposition",
            "psi component of psi_uv is -g_uv/<psi,psi>, i psi component vanishes",
            pg.position_defect.max(pg.fiber_defect),
            tol.geometric,
        );
    }
    push(
        "cijk_symmetry",
        "C_ijk = <sigma(e_i, e_j), J e_k> is totally symmetric",
        pg.symmetry_defect(),
        tol.symmetry,
    );
    if let Some(k) = k_intrinsic {
        push(
            "gauss_equation",
            "K = c/4 + 2|H|^2 - |sigma|^2/2 against the intrinsic curvature of g",
            (pg.k_extrinsic - k).abs() / (1.0 + k.abs()),
            tol.fd,
        );
    }
    push(
        "defect_routes",
        "D from sigma vectors equals its expansion in C_ijk",
        (pg.d - pg.d_from_cijk).norm() / pg.quartic_scale(),
        tol.structural,
    );
    let (linear, cubic) = density_identity_defects(pg);
    push(
        "density_identities",
        "|Hc|^2 = |H|^2 and |F|^2 = c/2 + |H|^2 - 2K",
        linear.max(cubic),
        tol.geometric,
    );
    push(
        "product_identity",
        "F conj(Hc) reproduces D (real part and |imaginary part|)",
        product_identity_check(pg),
        tol.product,
    );

    if spec.expected_circular() {
        push(
            "circularity",
            "|sigma11 - sigma22|^2/4 = |sigma12|^2 and <sigma11 - sigma22, sigma12> = 0",
            pg.d.norm() / pg.quartic_scale(),
            tol.geometric,
        );
        let routes = [pg.r, pg.sigma12_norm(), pg.half_diff_norm()];
        let hi = routes.iter().cloned().fold(f64::MIN, f64::max);
        let lo = routes.iter().cloned().fold(f64::MAX, f64::min);
        push(
            "radius_routes",
            "R^2 = (c/4 + |H|^2 - K)/2 = |sigma12|^2 = |sigma11 - sigma22|^2/4",
            hi - lo,
            tol.geometric,
        );
    } else {
        push(
            "non_circularity",
            "negative control: |D| stays above the margin everywhere",
            (NEGATIVE_CONTROL_MARGIN - pg.d.norm()).max(0.0),
            tol.structural,
        );
    }

    if spec.expected_cubic_free() {
        push(
            "cubic_form_vanishes",
            "F = 0 on the Whitney-type and totally geodesic surfaces",
            pg.f.norm(),
            tol.geometric,
        );
        push(
            "whitney_radius",
            "F = 0 gives R^2 = (K - c/4)/2, i.e. |H|^2 = 2K - c/2",
            (pg.h2 - (2.0 * pg.k_extrinsic - pg.c / 2.0)).abs() / pg.quadratic_scale(),
            tol.geometric,
        );
    }
    if spec.expected_minimal() {
        push(
            "mean_curvature_vanishes",
            "Hc = 0 exactly on minimal surfaces",
            pg.hc.norm().max(pg.h2.max(0.0).sqrt()),
            tol.geometric,
        );
    }

    if let SurfaceSpec::ProductTorusC2 { r1, r2 } = *spec {
        push(
            "cubic_form_nonzero",
            "negative control: |F| stays above the margin everywhere",
            (NEGATIVE_CONTROL_MARGIN - pg.f.norm()).max(0.0),
            tol.structural,
        );
        push(
            "mean_curvature_nonzero",
            "negative control: |Hc| stays above the margin everywhere",
            (NEGATIVE_CONTROL_MARGIN - pg.hc.norm()).max(0.0),
            tol.structural,
        );
        let exact = (1.0 / (r1 * r1) + 1.0 / (r2 * r2)) / 4.0;
        push(
            "product_torus_defect",
            "D = (1/r1^2 + 1/r2^2)/4 in the coordinate-aligned frame",
            (pg.d.re - exact).abs().max(pg.d.im.abs()),
            tol.structural,
        );
    }

    if let SurfaceSpec::CliffordTorus = spec {
        push(
            "clifford_isotropy",
            "flat with constant radius 1/sqrt(2)",
            (pg.r - FRAC_1_SQRT_2).abs().max(pg.k_extrinsic.abs()),
            tol.geometric,
        );
    }
    checks
}

/// Folds per-point checks into one check per name, keeping the worst
/// defect (NaN wins) and first-seen order.
fn merge_checks(into: &mut Vec<Check>, point: Vec<Check>) {
    for c in point {
        match into.iter_mut().find(|e| e.name == c.name) {
            Some(e) => {
                if c.max_defect.is_nan() || c.max_defect > e.max_defect {
                    e.max_defect = c.max_defect;
                }
                e.pass = e.max_defect <= e.tol;
            }
            None => into.push(c),
        }
    }
}

/// Runs every check that applies to `spec`.
pub fn verify(spec: &SurfaceSpec, config: &VerifyConfig) -> Result<VerificationReport> {
    spec.validate()?;
    let tol = &config.tol;
    let grid = spec.standard_grid(config.grid.0, config.grid.1)?;
    let samples = sample_points(spec, config.samples, config.seed)?;

    let grid_checks: Vec<Vec<Check>> = grid
        .par_iter()
        .map(|p| Ok(point_checks(spec, &point_geometry(spec, p)?, None, tol)))
        .collect::<Result<_>>()?;
    let sample_checks: Vec<Vec<Check>> = samples
        .par_iter()
        .map(|p| {
            let pg = point_geometry(spec, p)?;
            let k = gauss_curvature_intrinsic(spec, p, config.fd_step)?;
            Ok(point_checks(spec, &pg, Some(k), tol))
        })
        .collect::<Result<_>>()?;

    let mut checks = Vec::new();
    for point in sample_checks.into_iter().chain(grid_checks) {
        merge_checks(&mut checks, point);
    }

    let scan = curvature_scan_with(spec, config.grid, tol.geometric, tol.geometric)?;
    range_checks(spec, &scan, &grid, tol, &mut checks);

    if spec.is_compact() {
        let pinching = pinching_report(&scan);
        checks.push(Check::new(
            "pinching_consistency",
            "R >= 1/sqrt(2) on a compact circular surface only for the Clifford torus",
            if pinching.consistent { 0.0 } else { 1.0 },
            0.0,
        ));
    }

    let willmore_report = match willmore(spec, config.quad) {
        Ok(w) => Some(w),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(w) = &willmore_report {
        match *spec {
            SurfaceSpec::ProductTorusC2 { r1, r2 } => {
                checks.push(Check::new(
                    "willmore_value",
                    "W = pi^2 (r1/r2 + r2/r1) for the product torus",
                    (w.w - product_torus_willmore(r1, r2)).abs(),
                    tol.willmore_torus,
                ));
                checks.push(Check::new(
                    "willmore_strict",
                    "W > 4 pi chi off the Whitney spheres",
                    (w.bound + tol.willmore_torus - w.w).max(0.0),
                    0.0,
                ));
            }
            _ => checks.push(Check::new(
                "willmore_equality",
                "int |H|^2 dA + (c/2) Area = 4 pi chi on Whitney spheres",
                w.defect,
                tol.willmore,
            )),
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        surface: spec.kind(),
        params: spec.params().into_iter().collect(),
        grid: config.grid,
        samples: config.samples,
        seed: config.seed,
        checks,
        k_range: (scan.k_min.value, scan.k_max.value),
        r_range: (scan.r_min, scan.r_max),
        willmore: willmore_report,
        pass,
    })
}

fn range_checks(
    spec: &SurfaceSpec,
    scan: &ScanReport,
    grid: &[ChartPoint],
    tol: &Tolerances,
    checks: &mut Vec<Check>,
) {
    if let Some((lo, hi)) = spec.curvature_bounds() {
        let violation = (lo - scan.k_min.value).max(scan.k_max.value - hi).max(0.0);
        checks.push(Check::new(
            "curvature_range",
            "sampled K stays within the known sharp bounds",
            violation,
            tol.range,
        ));
    }
    if spec.has_polar_extrema() {
        // the grid points nearest z = 0 and z = ±1
        let heights: Vec<f64> = grid
            .iter()
            .filter_map(|p| p.sphere_point().map(|x| x[2].abs()))
            .collect();
        let nearest_equator = heights.iter().cloned().fold(f64::INFINITY, f64::min);
        let nearest_pole = heights.iter().cloned().fold(0.0, f64::max);
        let at_max = scan.k_max.z.map_or(f64::NAN, f64::abs);
        let at_min = scan.k_min.z.map_or(f64::NAN, f64::abs);
        checks.push(Check::new(
            "curvature_extrema",
            "K is maximal at z = 0 and minimal at z = +-1",
            (at_max - nearest_equator).abs().max((at_min - nearest_pole).abs()),
            tol.structural,
        ));
    }
}
