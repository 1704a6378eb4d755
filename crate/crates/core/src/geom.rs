//! Pointwise invariants of a Lagrangian surface.
//!
//! Everything is expressed in the orthonormal frame e₁ = ∂₁/|∂₁|,
//! e₂ = Gram–Schmidt(∂₂), optionally rotated by a fixed angle. With
//! C_ijk = ⟨σ(e_i, e_j), J e_k⟩ the cubic and linear form densities are
//!
//! ```text
//! F  = ½[(C111 − 3 C122) + i (C222 − 3 C112)]
//! Hc = ½[(C111 + C122) + i (C112 + C222)]
//! ```
//!
//! i.e. the holomorphic cubic form and the mean-curvature one-form with the
//! conformal factor divided out. F vanishes exactly on the Whitney-type
//! surfaces and Hc exactly on minimal ones.

use num_complex::Complex64;
use serde::Serialize;

use crate::ambient::{
    horizontality_defect, lagrangian_defect, membership_defect, second_form_split, AmbientSpace,
};
use crate::atlas::ChartPoint;
use crate::catalog::SurfaceSpec;
use crate::error::{Error, Result};
use crate::numerics::{apply_j, real_pair, AmbientJet, CVec, Signature};

/// Scale-aware tolerance for agreement of the two circularity routes.
pub const ROUTE_TOLERANCE: f64 = 1e-10;
/// Scale-aware tolerance for the density identities.
pub const DENSITY_TOLERANCE: f64 = 1e-8;

/// Full extrinsic data at one surface point.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub point: ChartPoint,
    pub c: f64,
    pub signature: Signature,
    /// Induced metric in chart coordinates.
    pub metric: [[f64; 2]; 2],
    /// e_i = Σ_u frame[i][u] ∂_u.
    pub frame: [[f64; 2]; 2],
    /// e₁, e₂ as ambient vectors.
    pub e: [CVec; 2],
    /// σ(e_i, e_j) as ambient vectors.
    pub sigma: [[CVec; 2]; 2],
    /// C_ijk = ⟨σ(e_i, e_j), J e_k⟩.
    pub cijk: [[[f64; 2]; 2]; 2],
    /// Mean curvature vector H = ½ trace σ.
    pub mean: CVec,
    /// |H|².
    pub h2: f64,
    /// |σ|² = Σ_ij |σ(e_i, e_j)|².
    pub sigma2: f64,
    /// K from the Gauss equation: c/4 + 2|H|² − |σ|²/2.
    pub k_extrinsic: f64,
    /// Circularity defect from the σ-vectors.
    pub d: Complex64,
    /// The same defect from the expanded quadratic forms in C_ijk.
    pub d_from_cijk: Complex64,
    /// Cubic form density.
    pub f: Complex64,
    /// Linear (mean curvature) form density.
    pub hc: Complex64,
    /// √(½(c/4 + |H|² − K)), clamped at zero. Meaningful only where the
    /// ellipse is a circle; see [`radius`].
    pub r: f64,
    /// √det g.
    pub area_density: f64,
    pub membership_defect: f64,
    pub horizontality_defect: f64,
    pub lagrangian_defect: f64,
    pub split_residual: f64,
    pub position_defect: f64,
    pub fiber_defect: f64,
    pub normal_defect: f64,
}

/// Evaluates the catalog surface and assembles its point geometry.
pub fn point_geometry(spec: &SurfaceSpec, point: &ChartPoint) -> Result<PointGeometry> {
    let jet = spec.evaluate_lift(point)?;
    point_geometry_from_jet(&jet, &spec.ambient(), *point, 0.0)
}

/// As [`point_geometry`], with the orthonormal frame rotated by `alpha`.
pub fn point_geometry_rotated(
    spec: &SurfaceSpec,
    point: &ChartPoint,
    alpha: f64,
) -> Result<PointGeometry> {
    let jet = spec.evaluate_lift(point)?;
    point_geometry_from_jet(&jet, &spec.ambient(), *point, alpha)
}

/// Point geometry of an arbitrary jet of an immersion (or horizontal lift)
/// into `space`.
pub fn point_geometry_from_jet(
    jet: &AmbientJet,
    space: &AmbientSpace,
    point: ChartPoint,
    alpha: f64,
) -> Result<PointGeometry> {
    let split = second_form_split(jet, space)?;
    let sig = space.signature.clone();
    let g = split.metric;

    let e1 = [1.0 / g[0][0].sqrt(), 0.0];
    let ratio = g[0][1] / g[0][0];
    let perp = (g[1][1] - g[0][1] * ratio).sqrt();
    let e2 = [-ratio / perp, 1.0 / perp];
    let (sa, ca) = alpha.sin_cos();
    let frame = [
        [ca * e1[0] + sa * e2[0], ca * e1[1] + sa * e2[1]],
        [-sa * e1[0] + ca * e2[0], -sa * e1[1] + ca * e2[1]],
    ];

    let combine = |coeffs: [f64; 2], vecs: &[CVec; 2]| -> CVec {
        &vecs[0].scale(coeffs[0]) + &vecs[1].scale(coeffs[1])
    };
    let e = [
        combine(frame[0], &split.frame.tangent),
        combine(frame[1], &split.frame.tangent),
    ];
    let je = [apply_j(&e[0]), apply_j(&e[1])];

    let sigma_frame = |i: usize, j: usize| -> CVec {
        let mut acc = CVec::zeros(jet.dim());
        for u in 0..2 {
            for v in 0..2 {
                acc = &acc + &split.sigma[u][v].scale(frame[i][u] * frame[j][v]);
            }
        }
        acc
    };
    let s11 = sigma_frame(0, 0);
    let s12 = sigma_frame(0, 1);
    let s22 = sigma_frame(1, 1);
    let sigma = [[s11.clone(), s12.clone()], [s12.clone(), s22.clone()]];

    let mut cijk = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                cijk[i][j][k] = real_pair(&sigma[i][j], &je[k], &sig);
            }
        }
    }

    let mean = (&s11 + &s22).scale(0.5);
    let h2 = real_pair(&mean, &mean, &sig);
    let sigma2 = real_pair(&s11, &s11, &sig)
        + 2.0 * real_pair(&s12, &s12, &sig)
        + real_pair(&s22, &s22, &sig);
    let k_extrinsic = space.c / 4.0 + 2.0 * h2 - sigma2 / 2.0;

    let diff = &s11 - &s22;
    let d = Complex64::new(
        real_pair(&diff, &diff, &sig) / 4.0 - real_pair(&s12, &s12, &sig),
        real_pair(&diff, &s12, &sig),
    );
    let d_from_cijk = defect_from_cijk(&cijk);
    let (f, hc) = densities_from_cijk(&cijk);
    let r = (0.5 * (space.c / 4.0 + h2 - k_extrinsic)).max(0.0).sqrt();
    let area_density = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).sqrt();

    let pg = PointGeometry {
        point,
        c: space.c,
        signature: sig,
        metric: g,
        frame,
        e,
        sigma,
        cijk,
        mean,
        h2,
        sigma2,
        k_extrinsic,
        d,
        d_from_cijk,
        f,
        hc,
        r,
        area_density,
        membership_defect: membership_defect(jet, space),
        horizontality_defect: horizontality_defect(jet, space),
        lagrangian_defect: lagrangian_defect(jet, space),
        split_residual: split.residual,
        position_defect: split.position_defect,
        fiber_defect: split.fiber_defect,
        normal_defect: split.normal_defect,
    };
    let finite = [pg.h2, pg.sigma2, pg.k_extrinsic, pg.d.re, pg.d.im, pg.area_density]
        .iter()
        .all(|x| x.is_finite());
    if !finite {
        return Err(Error::NonFinite {
            what: "point geometry".into(),
            p1: point.p1,
            p2: point.p2,
        });
    }
    Ok(pg)
}

/// D = (|σ11−σ22|²/4 − |σ12|²) + i⟨σ11−σ22, σ12⟩ rebuilt from C_ijk:
/// 4 Re D = C111² − 2 C111 C122 − 3 C122² − 3 C112² − 2 C112 C222 + C222²,
/// Im D = C111 C112 − C122 C222.
fn defect_from_cijk(c: &[[[f64; 2]; 2]; 2]) -> Complex64 {
    let (c111, c112, c122, c222) = (c[0][0][0], c[0][0][1], c[0][1][1], c[1][1][1]);
    let re4 = c111 * c111 - 2.0 * c111 * c122 - 3.0 * c122 * c122 - 3.0 * c112 * c112
        - 2.0 * c112 * c222
        + c222 * c222;
    Complex64::new(re4 / 4.0, c111 * c112 - c122 * c222)
}

fn densities_from_cijk(c: &[[[f64; 2]; 2]; 2]) -> (Complex64, Complex64) {
    let (c111, c112, c122, c222) = (c[0][0][0], c[0][0][1], c[0][1][1], c[1][1][1]);
    let f = Complex64::new(c111 - 3.0 * c122, c222 - 3.0 * c112) * 0.5;
    let hc = Complex64::new(c111 + c122, c112 + c222) * 0.5;
    (f, hc)
}

impl PointGeometry {
    /// Scale for relative comparisons of quantities quadratic in σ.
    pub fn quadratic_scale(&self) -> f64 {
        1.0 + self.sigma2
    }

    /// Scale for quantities quartic in σ (the circularity defect).
    pub fn quartic_scale(&self) -> f64 {
        self.quadratic_scale().powi(2)
    }

    /// |D| < tol · (1 + |σ|²)².
    pub fn is_circular(&self, tol: f64) -> bool {
        self.d.norm() < tol * self.quartic_scale()
    }

    /// Largest |C_ijk − C_π(ijk)| over all index permutations.
    pub fn symmetry_defect(&self) -> f64 {
        let c = &self.cijk;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let v = c[i][j][k];
                    for w in [c[i][k][j], c[j][i][k], c[j][k][i], c[k][i][j], c[k][j][i]] {
                        worst = worst.max((v - w).abs());
                    }
                }
            }
        }
        worst
    }

    /// Coordinates of a normal vector on (Je₁, Je₂).
    pub fn normal_coords(&self, v: &CVec) -> [f64; 2] {
        [
            real_pair(v, &apply_j(&self.e[0]), &self.signature),
            real_pair(v, &apply_j(&self.e[1]), &self.signature),
        ]
    }

    /// |σ(e₁, e₂)|.
    pub fn sigma12_norm(&self) -> f64 {
        let s = &self.sigma[0][1];
        real_pair(s, s, &self.signature).max(0.0).sqrt()
    }

    /// |σ(e₁, e₁) − σ(e₂, e₂)| / 2.
    pub fn half_diff_norm(&self) -> f64 {
        let d = &self.sigma[0][0] - &self.sigma[1][1];
        real_pair(&d, &d, &self.signature).max(0.0).sqrt() / 2.0
    }
}

/// The circularity defect, after checking that the σ-vector route and the
/// C_ijk route agree.
pub fn circularity_defect(pg: &PointGeometry) -> Result<Complex64> {
    let gap = (pg.d - pg.d_from_cijk).norm();
    if gap > ROUTE_TOLERANCE * pg.quartic_scale() {
        return Err(Error::RouteDisagreement(gap));
    }
    Ok(pg.d)
}

/// Relative defects of |Hc|² = |H|² and |F|² = c/2 + |H|² − 2K.
pub fn density_identity_defects(pg: &PointGeometry) -> (f64, f64) {
    let scale = pg.quadratic_scale();
    let linear = (pg.hc.norm_sqr() - pg.h2).abs() / scale;
    let cubic = (pg.f.norm_sqr() - (pg.c / 2.0 + pg.h2 - 2.0 * pg.k_extrinsic)).abs() / scale;
    (linear, cubic)
}

/// (F, Hc), enforcing both density identities.
pub fn frame_densities(pg: &PointGeometry) -> Result<(Complex64, Complex64)> {
    let (linear, cubic) = density_identity_defects(pg);
    let worst = linear.max(cubic);
    if worst > DENSITY_TOLERANCE {
        return Err(Error::IdentityViolation {
            identity: if linear >= cubic {
                "|Hc|^2 = |H|^2"
            } else {
                "|F|^2 = c/2 + |H|^2 - 2K"
            },
            defect: worst,
        });
    }
    Ok((pg.f, pg.hc))
}

/// max(|Re(F·conj Hc) − Re D|, ||Im(F·conj Hc)| − |Im D||), relative to
/// the quartic scale.
///
/// In the frame convention used here F·conj(Hc) equals conj(D); only the
/// real part and the modulus of the imaginary part are compared.
pub fn product_identity_check(pg: &PointGeometry) -> f64 {
    let p = pg.f * pg.hc.conj();
    let re = (p.re - pg.d.re).abs();
    let im = (p.im.abs() - pg.d.im.abs()).abs();
    let modulus = (p.norm() - pg.d.norm()).abs();
    re.max(im).max(modulus) / pg.quartic_scale()
}

/// The three independent expressions of the ellipse radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusRoutes {
    /// √(½(c/4 + |H|² − K)).
    pub formula: f64,
    /// |σ(e₁, e₂)|.
    pub sigma12: f64,
    /// |σ(e₁, e₁) − σ(e₂, e₂)| / 2.
    pub half_diff: f64,
}

impl RadiusRoutes {
    pub fn spread(&self) -> f64 {
        let v = [self.formula, self.sigma12, self.half_diff];
        let hi = v.iter().cloned().fold(f64::MIN, f64::max);
        let lo = v.iter().cloned().fold(f64::MAX, f64::min);
        hi - lo
    }
}

/// Radius of the circular ellipse of curvature. Errors if the ellipse is
/// not a circle at tolerance `tol` (scale-aware, see
/// [`PointGeometry::is_circular`]).
pub fn radius(pg: &PointGeometry, tol: f64) -> Result<RadiusRoutes> {
    if !pg.is_circular(tol) {
        return Err(Error::NotCircular {
            defect: pg.d.norm(),
        });
    }
    Ok(RadiusRoutes {
        formula: pg.r,
        sigma12: pg.sigma12_norm(),
        half_diff: pg.half_diff_norm(),
    })
}

/// One point of the ellipse of curvature, in (Je₁, Je₂) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseSample {
    pub theta: f64,
    pub point: [f64; 2],
    pub center: [f64; 2],
    /// ||σ(v,v) − H| − |σ(e₁,e₂)||.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseFit {
    pub samples: Vec<EllipseSample>,
    /// Reference radius |σ(e₁, e₂)|.
    pub radius: f64,
    /// max over samples of the circle-fit residual.
    pub residual: f64,
}

/// σ(v,v) = H + cos 2θ (σ11 − σ22)/2 + sin 2θ σ12 for v = cos θ e₁ + sin θ e₂
/// on n equally spaced angles in [0, 2π).
pub fn ellipse_samples(pg: &PointGeometry, n_angles: usize) -> Result<EllipseFit> {
    if n_angles < 8 {
        return Err(Error::Unsupported(format!(
            "ellipse sampling needs at least 8 angles, got {n_angles}"
        )));
    }
    let center = pg.normal_coords(&pg.mean);
    let half = pg.normal_coords(&(&pg.sigma[0][0] - &pg.sigma[1][1]).scale(0.5));
    let s12 = pg.normal_coords(&pg.sigma[0][1]);
    let radius = pg.sigma12_norm();
    let samples: Vec<_> = (0..n_angles)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n_angles as f64;
            let (s, c) = (2.0 * theta).sin_cos();
            let point = [
                center[0] + c * half[0] + s * s12[0],
                center[1] + c * half[1] + s * s12[1],
            ];
            let dist = (point[0] - center[0]).hypot(point[1] - center[1]);
            EllipseSample {
                theta,
                point,
                center,
                residual: (dist - radius).abs(),
            }
        })
        .collect();
    let residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(EllipseFit {
        samples,
        radius,
        residual,
    })
}

/// Gauss curvature of the induced metric by the Brioschi formula, with
/// derivatives of g taken by central differences of step `step`. Uses only
/// first chart derivatives of the immersion.
pub fn gauss_curvature_intrinsic(spec: &SurfaceSpec, point: &ChartPoint, step: f64) -> Result<f64> {
    let space = spec.ambient();
    let metric_at = |h1: f64, h2: f64| -> Result<[f64; 3]> {
        let p = point.offset(h1, h2);
        p.chart.check(p.p1, p.p2).map_err(|e| {
            Error::ChartDomain(format!("finite-difference stencil leaves the chart: {e}"))
        })?;
        let jet = spec.evaluate_lift(&p)?;
        let sig = &space.signature;
        Ok([
            real_pair(&jet.d1, &jet.d1, sig),
            real_pair(&jet.d1, &jet.d2, sig),
            real_pair(&jet.d2, &jet.d2, sig),
        ])
    };
    let h = step;
    let c = metric_at(0.0, 0.0)?;
    let pu = metric_at(h, 0.0)?;
    let mu = metric_at(-h, 0.0)?;
    let pv = metric_at(0.0, h)?;
    let mv = metric_at(0.0, -h)?;
    let pp = metric_at(h, h)?;
    let pm = metric_at(h, -h)?;
    let mp = metric_at(-h, h)?;
    let mm = metric_at(-h, -h)?;

    let du = |k: usize| (pu[k] - mu[k]) / (2.0 * h);
    let dv = |k: usize| (pv[k] - mv[k]) / (2.0 * h);
    let (e, f, g) = (c[0], c[1], c[2]);
    let (e_u, e_v) = (du(0), dv(0));
    let (f_u, f_v) = (du(1), dv(1));
    let (g_u, g_v) = (du(2), dv(2));
    let e_vv = (pv[0] - 2.0 * c[0] + mv[0]) / (h * h);
    let g_uu = (pu[2] - 2.0 * c[2] + mu[2]) / (h * h);
    let f_uv = (pp[1] - pm[1] - mp[1] + mm[1]) / (4.0 * h * h);

    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let first = det3([
        [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
        [f_v - 0.5 * g_u, e, f],
        [0.5 * g_v, f, g],
    ]);
    let second = det3([
        [0.0, 0.5 * e_v, 0.5 * g_u],
        [0.5 * e_v, e, f],
        [0.5 * g_u, f, g],
    ]);
    let det = e * g - f * f;
    Ok((first - second) / (det * det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::Chart;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn torus(a: f64, b: f64) -> ChartPoint {
        ChartPoint::new(Chart::Torus, a, b)
    }

    #[test]
    fn totally_geodesic_point() {
        let pg = point_geometry(&SurfaceSpec::TotallyGeodesicCp2, &ChartPoint::new(Chart::Spherical, 1.0, 2.0)).unwrap();
        assert!(pg.sigma2 < 1e-20);
        assert!(pg.h2 < 1e-20);
        assert!((pg.k_extrinsic - 1.0).abs() < 1e-12);
        assert!(pg.r < 1e-10);
        assert_eq!(radius(&pg, 1e-8).unwrap().formula, pg.r);
    }

    #[test]
    fn clifford_point() {
        let pg = point_geometry(&SurfaceSpec::CliffordTorus, &torus(0.3, 1.1)).unwrap();
        assert!(pg.h2.sqrt() < 1e-10);
        assert!(pg.k_extrinsic.abs() < 1e-8);
        assert!((pg.r - FRAC_1_SQRT_2).abs() < 1e-8);
        assert!(pg.hc.norm() < 1e-10);
    }

    #[test]
    fn whitney_c2_equator() {
        for theta in [0.0, 1.0, 4.0] {
            let pg = point_geometry(&SurfaceSpec::WhitneyC2, &ChartPoint::new(Chart::Spherical, PI / 2.0, theta)).unwrap();
            assert!((pg.k_extrinsic - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn product_torus_defect_by_hand() {
        for (r1, r2) in [(1.0, 1.0), (1.0, 2.0), (0.5, 3.0)] {
            let spec = SurfaceSpec::ProductTorusC2 { r1, r2 };
            let pg = point_geometry(&spec, &torus(PI / 3.0, PI / 5.0)).unwrap();
            let expected = (1.0 / (r1 * r1) + 1.0 / (r2 * r2)) / 4.0;
            let d = circularity_defect(&pg).unwrap();
            assert!((d.re - expected).abs() < 1e-12);
            assert!(d.im.abs() < 1e-12);
            assert!(matches!(radius(&pg, 1e-8), Err(Error::NotCircular { .. })));
        }
    }

    #[test]
    fn defect_rotates_with_the_frame() {
        let spec = SurfaceSpec::ProductTorusC2 { r1: 1.0, r2: 2.0 };
        let p = torus(0.8, 2.1);
        let base = point_geometry(&spec, &p).unwrap();
        for alpha in [0.2, 1.0, -2.3] {
            let rot = point_geometry_rotated(&spec, &p, alpha).unwrap();
            let expected = base.d * Complex64::from_polar(1.0, -4.0 * alpha);
            assert!((rot.d - expected).norm() < 1e-12);
            assert!((rot.d_from_cijk - expected).norm() < 1e-12);
            // F·conj(Hc) = conj(D) in this frame convention
            let fh = rot.f * rot.hc.conj();
            let fh0 = base.f * base.hc.conj();
            assert!((fh - fh0 * Complex64::from_polar(1.0, 4.0 * alpha)).norm() < 1e-12);
            assert!((fh - rot.d.conj()).norm() < 1e-12);
            assert!((rot.f.norm() - base.f.norm()).abs() < 1e-12);
            assert!((rot.hc.norm() - base.hc.norm()).abs() < 1e-12);
            assert!((product_identity_check(&rot) - product_identity_check(&base)).abs() < 1e-10);
        }
    }

    #[test]
    fn product_torus_has_both_densities() {
        let pg = point_geometry(&SurfaceSpec::ProductTorusC2 { r1: 1.0, r2: 2.0 }, &torus(1.0, 1.0)).unwrap();
        let (f, hc) = frame_densities(&pg).unwrap();
        assert!(f.norm() > 0.1);
        assert!(hc.norm() > 0.1);
    }

    #[test]
    fn product_torus_unit_product_modulus() {
        let pg = point_geometry(&SurfaceSpec::ProductTorusC2 { r1: 1.0, r2: 1.0 }, &torus(0.4, 0.9)).unwrap();
        assert!(((pg.f * pg.hc.conj()).norm() - 0.5).abs() < 1e-10);
        assert!(product_identity_check(&pg) < 1e-12);
    }

    #[test]
    fn whitney_cp2_has_no_cubic_form() {
        let spec = SurfaceSpec::WhitneyCp2 { t: 0.9 };
        for (p, q) in [(0.3, 0.3), (1.2, 2.5), (2.7, 5.9)] {
            let pg = point_geometry(&spec, &ChartPoint::new(Chart::Spherical, p, q)).unwrap();
            let (f, _) = frame_densities(&pg).unwrap();
            assert!(f.norm() < 1e-8);
        }
    }

    #[test]
    fn radius_three_routes_on_whitney_cp2_equator() {
        let spec = SurfaceSpec::WhitneyCp2 { t: 1.0 };
        let pg = point_geometry(&spec, &ChartPoint::new(Chart::Spherical, PI / 2.0, 0.7)).unwrap();
        let k_closed_form = 1.0 + 2.0 * 1.0f64.sinh().powi(2);
        assert!((pg.k_extrinsic - k_closed_form).abs() < 1e-8);
        let routes = radius(&pg, 1e-8).unwrap();
        let expected = (0.5 * (1.0 + pg.h2 - k_closed_form)).max(0.0).sqrt();
        assert!((routes.formula - expected).abs() < 1e-8);
        assert!(routes.spread() < 1e-8);
    }

    #[test]
    fn ellipse_is_traced_twice() {
        let pg = point_geometry(&SurfaceSpec::WhitneyCh2 { t: 0.5 }, &ChartPoint::new(Chart::Spherical, 1.1, 0.2)).unwrap();
        let fit = ellipse_samples(&pg, 64).unwrap();
        assert_eq!(fit.samples.len(), 64);
        for k in 0..32 {
            let a = fit.samples[k].point;
            let b = fit.samples[k + 32].point;
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
        assert!(fit.residual < 1e-8);
        assert!(ellipse_samples(&pg, 4).is_err());
    }

    #[test]
    fn product_torus_ellipse_is_a_segment() {
        let pg = point_geometry(&SurfaceSpec::ProductTorusC2 { r1: 1.0, r2: 2.0 }, &torus(0.3, 0.3)).unwrap();
        let fit = ellipse_samples(&pg, 64).unwrap();
        assert!(fit.radius < 1e-14);
        assert!((fit.residual - pg.half_diff_norm()).abs() < 1e-12);
        // all samples on the line through the center along σ11 − σ22
        let c = fit.samples[0].center;
        let dir = [fit.samples[0].point[0] - c[0], fit.samples[0].point[1] - c[1]];
        for s in &fit.samples {
            let v = [s.point[0] - c[0], s.point[1] - c[1]];
            assert!((dir[0] * v[1] - dir[1] * v[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn intrinsic_curvature_sanity() {
        let k = gauss_curvature_intrinsic(&SurfaceSpec::CliffordTorus, &torus(0.5, 2.0), 1e-3).unwrap();
        assert!(k.abs() < 1e-5);
        let k = gauss_curvature_intrinsic(&SurfaceSpec::TotallyGeodesicCp2, &ChartPoint::new(Chart::Spherical, 1.0, 1.0), 1e-3).unwrap();
        assert!((k - 1.0).abs() < 1e-5);
        let k = gauss_curvature_intrinsic(&SurfaceSpec::WhitneyC2, &ChartPoint::new(Chart::Spherical, PI / 2.0 - 1e-3, 0.4), 1e-3).unwrap();
        assert!((k - 1.0).abs() < 1e-4);
        let err = gauss_curvature_intrinsic(&SurfaceSpec::WhitneyC2, &ChartPoint::new(Chart::Spherical, 5e-4, 0.4), 1e-3);
        assert!(matches!(err, Err(Error::ChartDomain(_))));
    }

    #[test]
    fn scaling_preserves_circularity_and_scales_radius() {
        let spec = SurfaceSpec::WhitneyC2;
        let p = ChartPoint::new(Chart::Spherical, 0.9, 1.7);
        let jet = spec.evaluate_lift(&p).unwrap();
        let base = point_geometry_from_jet(&jet, &AmbientSpace::c2(), p, 0.0).unwrap();
        for lambda in [0.5, 3.0] {
            let pg = point_geometry_from_jet(&jet.scaled(lambda), &AmbientSpace::c2(), p, 0.0).unwrap();
            assert!(pg.is_circular(1e-8));
            assert!((pg.r - base.r / lambda).abs() < 1e-10);
        }
    }
}
