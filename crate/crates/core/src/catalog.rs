//! Closed-form immersions with exact jets.
//!
//! Surfaces in C² are evaluated directly. Surfaces in CP² and CH² are
//! evaluated as horizontal lifts into S⁵ and H⁵₁, with the six real
//! coordinates of each formula paired as (re, im) in consecutive order.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::ambient::{AmbientSpace, Model};
use crate::atlas::{build_grid, Chart, ChartPoint, Domain, DomainJet};
use crate::error::{Error, Result};
use crate::numerics::{AmbientJet, Jet2};

/// Points of the Ψ_s family with |w(z)| below this multiple of |z| are
/// skipped by grids and samplers; conditioning degrades as s → π/4.
pub const PSI_W_MARGIN: f64 = 0.05;

/// Default colatitude margin for sphere grids.
pub const SPHERE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurfaceSpec {
    /// The Whitney sphere √2 (1 + iz)/(1 + z²) (x, y) in C², scaled so
    /// that its Gauss curvature ranges over [0, 1].
    WhitneyC2,
    /// Whitney spheres in CP², t ≥ 0; t = 0 is totally geodesic.
    WhitneyCp2 { t: f64 },
    /// Whitney spheres in CH², t > 0.
    WhitneyCh2 { t: f64 },
    /// Complete embeddings of C* in CH², s ∈ [0, π/4).
    PsiCh2 { s: f64 },
    /// A complete embedding of C in CH².
    EtaCh2,
    /// The minimal flat Lagrangian torus in CP².
    CliffordTorus,
    /// The real projective plane's double cover, S² → CP².
    TotallyGeodesicCp2,
    /// S¹(r₁) × S¹(r₂) ⊂ C²; Lagrangian but not circular.
    ProductTorusC2 { r1: f64, r2: f64 },
}

/// Static description of one catalog kind, for listings.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub kind: &'static str,
    pub ambient: Model,
    pub domain: &'static str,
    pub params: Vec<ParamInfo>,
    pub compact: bool,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    pub constraint: &'static str,
}

pub const KIND_NAMES: [&str; 8] = [
    "whitney-c2",
    "whitney-cp2",
    "whitney-ch2",
    "psi-ch2",
    "eta-ch2",
    "clifford-torus",
    "totally-geodesic-cp2",
    "product-torus-c2",
];

/// Every catalog kind with its parameter ranges.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let p = |name, constraint| ParamInfo { name, constraint };
    vec![
        CatalogEntry {
            kind: "whitney-c2",
            ambient: Model::C2,
            domain: "S^2",
            params: vec![],
            compact: true,
            description: "Whitney sphere sqrt(2) (1+iz)/(1+z^2) (x, y) with one double point",
        },
        CatalogEntry {
            kind: "whitney-cp2",
            ambient: Model::CP2,
            domain: "S^2",
            params: vec![p("t", "t >= 0 (t = 0 is totally geodesic)")],
            compact: true,
            description: "Whitney spheres in CP^2, horizontal lift to S^5",
        },
        CatalogEntry {
            kind: "whitney-ch2",
            ambient: Model::CH2,
            domain: "S^2",
            params: vec![p("t", "t > 0")],
            compact: true,
            description: "Whitney spheres in CH^2, horizontal lift to H^5_1",
        },
        CatalogEntry {
            kind: "psi-ch2",
            ambient: Model::CH2,
            domain: "C*",
            params: vec![p("s", "0 <= s < pi/4")],
            compact: false,
            description: "complete Lagrangian embedding of the punctured plane, w = cos s z + sin s conj(z)",
        },
        CatalogEntry {
            kind: "eta-ch2",
            ambient: Model::CH2,
            domain: "C",
            params: vec![],
            compact: false,
            description: "complete Lagrangian embedding of the plane",
        },
        CatalogEntry {
            kind: "clifford-torus",
            ambient: Model::CP2,
            domain: "T^2",
            params: vec![],
            compact: true,
            description: "Clifford torus, horizontal section (e^{i a}, e^{i b}, e^{-i(a+b)})/sqrt(3)",
        },
        CatalogEntry {
            kind: "totally-geodesic-cp2",
            ambient: Model::CP2,
            domain: "S^2",
            params: vec![],
            compact: true,
            description: "real points (x, y, z) of S^5; totally geodesic",
        },
        CatalogEntry {
            kind: "product-torus-c2",
            ambient: Model::C2,
            domain: "T^2",
            params: vec![p("r1", "r1 > 0"), p("r2", "r2 > 0")],
            compact: true,
            description: "product of circles (r1 e^{i a}, r2 e^{i b}); negative control, not circular",
        },
    ]
}

impl SurfaceSpec {
    /// Builds a spec from a kind name and optional parameters. Parameters a
    /// kind does not take are rejected.
    pub fn from_parts(
        kind: &str,
        t: Option<f64>,
        s: Option<f64>,
        r1: Option<f64>,
        r2: Option<f64>,
    ) -> Result<Self> {
        let reject_extra = |allowed: &[&str]| -> Result<()> {
            for (name, v) in [("t", t), ("s", s), ("r1", r1), ("r2", r2)] {
                if v.is_some() && !allowed.contains(&name) {
                    return Err(Error::InvalidParameter {
                        surface: kind.to_string(),
                        message: format!("does not take parameter `{name}`"),
                    });
                }
            }
            Ok(())
        };
        let required = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| Error::InvalidParameter {
                surface: kind.to_string(),
                message: format!("missing required parameter `{name}`"),
            })
        };
        let spec = match kind {
            "whitney-c2" => {
                reject_extra(&[])?;
                SurfaceSpec::WhitneyC2
            }
            "whitney-cp2" => {
                reject_extra(&["t"])?;
                SurfaceSpec::WhitneyCp2 { t: required("t", t)? }
            }
            "whitney-ch2" => {
                reject_extra(&["t"])?;
                SurfaceSpec::WhitneyCh2 { t: required("t", t)? }
            }
            "psi-ch2" => {
                reject_extra(&["s"])?;
                SurfaceSpec::PsiCh2 { s: required("s", s)? }
            }
            "eta-ch2" => {
                reject_extra(&[])?;
                SurfaceSpec::EtaCh2
            }
            "clifford-torus" => {
                reject_extra(&[])?;
                SurfaceSpec::CliffordTorus
            }
            "totally-geodesic-cp2" => {
                reject_extra(&[])?;
                SurfaceSpec::TotallyGeodesicCp2
            }
            "product-torus-c2" | "product-torus" => {
                reject_extra(&["r1", "r2"])?;
                SurfaceSpec::ProductTorusC2 {
                    r1: r1.unwrap_or(1.0),
                    r2: r2.unwrap_or(1.0),
                }
            }
            other => return Err(Error::UnknownSurface(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SurfaceSpec::WhitneyC2 => "whitney-c2",
            SurfaceSpec::WhitneyCp2 { .. } => "whitney-cp2",
            SurfaceSpec::WhitneyCh2 { .. } => "whitney-ch2",
            SurfaceSpec::PsiCh2 { .. } => "psi-ch2",
            SurfaceSpec::EtaCh2 => "eta-ch2",
            SurfaceSpec::CliffordTorus => "clifford-torus",
            SurfaceSpec::TotallyGeodesicCp2 => "totally-geodesic-cp2",
            SurfaceSpec::ProductTorusC2 { .. } => "product-torus-c2",
        }
    }

    /// Named parameters in a stable order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            SurfaceSpec::WhitneyCp2 { t } | SurfaceSpec::WhitneyCh2 { t } => vec![("t", t)],
            SurfaceSpec::PsiCh2 { s } => vec![("s", s)],
            SurfaceSpec::ProductTorusC2 { r1, r2 } => vec![("r1", r1), ("r2", r2)],
            _ => vec![],
        }
    }

    pub fn model(&self) -> Model {
        match self {
            SurfaceSpec::WhitneyC2 | SurfaceSpec::ProductTorusC2 { .. } => Model::C2,
            SurfaceSpec::WhitneyCp2 { .. }
            | SurfaceSpec::CliffordTorus
            | SurfaceSpec::TotallyGeodesicCp2 => Model::CP2,
            SurfaceSpec::WhitneyCh2 { .. } | SurfaceSpec::PsiCh2 { .. } | SurfaceSpec::EtaCh2 => {
                Model::CH2
            }
        }
    }

    pub fn ambient(&self) -> AmbientSpace {
        AmbientSpace::of(self.model())
    }

    /// Accepts exactly the admissible parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |message: String| {
            Err(Error::InvalidParameter {
                surface: self.kind().to_string(),
                message,
            })
        };
        match *self {
            SurfaceSpec::WhitneyCp2 { t } if !(t >= 0.0 && t.is_finite()) => {
                bad(format!("requires t >= 0, got t = {t}"))
            }
            SurfaceSpec::WhitneyCh2 { t } if !(t > 0.0 && t.is_finite()) => bad(format!(
                "requires t > 0 (the prefactor 1/(sinh^2 t + cosh^2 t z^2) blows up at z = 0 when t = 0), got t = {t}"
            )),
            SurfaceSpec::PsiCh2 { s } if !(0.0..FRAC_PI_4).contains(&s) => {
                bad(format!("requires 0 <= s < pi/4, got s = {s}"))
            }
            SurfaceSpec::ProductTorusC2 { r1, r2 }
                if !(r1 > 0.0 && r2 > 0.0 && r1.is_finite() && r2.is_finite()) =>
            {
                bad(format!("requires r1 > 0 and r2 > 0, got r1 = {r1}, r2 = {r2}"))
            }
            _ => Ok(()),
        }
    }

    pub fn default_chart(&self) -> Chart {
        self.standard_domain().chart()
    }

    pub fn accepts_chart(&self, chart: Chart) -> bool {
        match self {
            SurfaceSpec::WhitneyC2
            | SurfaceSpec::WhitneyCp2 { .. }
            | SurfaceSpec::WhitneyCh2 { .. }
            | SurfaceSpec::TotallyGeodesicCp2 => chart.is_sphere(),
            SurfaceSpec::PsiCh2 { .. } => chart == Chart::PolarAnnulus,
            SurfaceSpec::EtaCh2 => chart == Chart::Planar,
            SurfaceSpec::CliffordTorus | SurfaceSpec::ProductTorusC2 { .. } => {
                chart == Chart::Torus
            }
        }
    }

    /// The region sampled by standard grids and random points.
    pub fn standard_domain(&self) -> Domain {
        match self {
            SurfaceSpec::WhitneyC2
            | SurfaceSpec::WhitneyCp2 { .. }
            | SurfaceSpec::WhitneyCh2 { .. }
            | SurfaceSpec::TotallyGeodesicCp2 => Domain::Sphere {
                margin: SPHERE_MARGIN,
            },
            SurfaceSpec::PsiCh2 { .. } => Domain::Annulus {
                r_min: 0.2,
                r_max: 5.0,
            },
            SurfaceSpec::EtaCh2 => Domain::Rect {
                x: (-2.0, 2.0),
                y: (-2.0, 2.0),
            },
            SurfaceSpec::CliffordTorus | SurfaceSpec::ProductTorusC2 { .. } => Domain::Torus,
        }
    }

    /// Whether pointwise checks should use this point. Only the Ψ_s family
    /// has an ill-conditioned region.
    pub fn well_conditioned(&self, point: &ChartPoint) -> bool {
        match (*self, point.chart) {
            (SurfaceSpec::PsiCh2 { s }, Chart::PolarAnnulus) => {
                let w_over_z = (1.0 + (2.0 * s).sin() * (2.0 * point.p2).cos()).max(0.0).sqrt();
                w_over_z >= PSI_W_MARGIN
            }
            _ => true,
        }
    }

    /// The standard n1 × n2 grid with ill-conditioned points removed.
    pub fn standard_grid(&self, n1: usize, n2: usize) -> Result<Vec<ChartPoint>> {
        let grid: Vec<_> = build_grid(&self.standard_domain(), n1, n2)?
            .into_iter()
            .filter(|p| self.well_conditioned(p))
            .collect();
        if grid.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(grid)
    }

    pub fn is_compact(&self) -> bool {
        !matches!(self, SurfaceSpec::PsiCh2 { .. } | SurfaceSpec::EtaCh2)
    }

    pub fn euler_characteristic(&self) -> Option<i32> {
        match self {
            SurfaceSpec::WhitneyC2
            | SurfaceSpec::WhitneyCp2 { .. }
            | SurfaceSpec::WhitneyCh2 { .. }
            | SurfaceSpec::TotallyGeodesicCp2 => Some(2),
            SurfaceSpec::CliffordTorus | SurfaceSpec::ProductTorusC2 { .. } => Some(0),
            SurfaceSpec::PsiCh2 { .. } | SurfaceSpec::EtaCh2 => None,
        }
    }

    /// Ground truth: is the ellipse of curvature a circle everywhere?
    pub fn expected_circular(&self) -> bool {
        !matches!(self, SurfaceSpec::ProductTorusC2 { .. })
    }

    /// Ground truth: H ≡ 0.
    pub fn expected_minimal(&self) -> bool {
        match *self {
            SurfaceSpec::CliffordTorus | SurfaceSpec::TotallyGeodesicCp2 => true,
            SurfaceSpec::WhitneyCp2 { t } => t == 0.0,
            _ => false,
        }
    }

    /// Ground truth: the cubic form density vanishes identically.
    pub fn expected_cubic_free(&self) -> bool {
        !matches!(
            self,
            SurfaceSpec::CliffordTorus | SurfaceSpec::ProductTorusC2 { .. }
        )
    }

    /// One of the five explicit non-minimal families (or a member of them).
    pub fn is_whitney_type(&self) -> bool {
        matches!(
            self,
            SurfaceSpec::WhitneyC2
                | SurfaceSpec::WhitneyCp2 { .. }
                | SurfaceSpec::WhitneyCh2 { .. }
                | SurfaceSpec::PsiCh2 { .. }
                | SurfaceSpec::EtaCh2
        )
    }

    /// Known sharp bounds [K_min, K_max] of the Gauss curvature, attained
    /// at z = ±1 and z = 0 respectively for the sphere families.
    pub fn curvature_bounds(&self) -> Option<(f64, f64)> {
        match *self {
            SurfaceSpec::WhitneyC2 => Some((0.0, 1.0)),
            SurfaceSpec::WhitneyCp2 { t } => Some((1.0, 1.0 + 2.0 * t.sinh().powi(2))),
            SurfaceSpec::WhitneyCh2 { t } => Some((-1.0, -1.0 + 2.0 * t.cosh().powi(2))),
            SurfaceSpec::TotallyGeodesicCp2 => Some((1.0, 1.0)),
            SurfaceSpec::CliffordTorus => Some((0.0, 0.0)),
            _ => None,
        }
    }

    /// Whether K is non-constant with its maximum on z = 0 and minimum on
    /// z = ±1.
    pub fn has_polar_extrema(&self) -> bool {
        match *self {
            SurfaceSpec::WhitneyC2 | SurfaceSpec::WhitneyCh2 { .. } => true,
            SurfaceSpec::WhitneyCp2 { t } => t > 0.0,
            _ => false,
        }
    }

    /// Jets of the immersion (C² kinds) or of its horizontal lift.
    pub fn evaluate_lift(&self, point: &ChartPoint) -> Result<AmbientJet> {
        self.validate()?;
        if !self.accepts_chart(point.chart) {
            return Err(Error::ChartDomain(format!(
                "{} cannot be evaluated on the {} chart",
                self.kind(),
                point.chart.name()
            )));
        }
        let domain = point.jet()?;
        let comps = match (*self, domain) {
            (SurfaceSpec::WhitneyC2, DomainJet::Sphere([x, y, z])) => {
                // √2 normalizes the induced metric so that 0 ≤ K ≤ 1
                let factor = Jet2::from_re_im(Jet2::constant(SQRT_2), z * SQRT_2)
                    / (z * z + 1.0).to_complex();
                vec![factor.scale_real(x), factor.scale_real(y)]
            }
            (SurfaceSpec::WhitneyCp2 { t }, DomainJet::Sphere([x, y, z])) => {
                let (c, s) = (t.cosh(), t.sinh());
                let inv = (z * z * (s * s) + c * c).recip();
                vec![
                    Jet2::from_re_im(x * c * inv, x * z * s * inv),
                    Jet2::from_re_im(y * c * inv, y * z * s * inv),
                    Jet2::from_re_im(z * inv, (z * z + 1.0) * (s * c) * inv),
                ]
            }
            (SurfaceSpec::WhitneyCh2 { t }, DomainJet::Sphere([x, y, z])) => {
                let (c, s) = (t.cosh(), t.sinh());
                let inv = (z * z * (c * c) + s * s).recip();
                vec![
                    Jet2::from_re_im(x * s * inv, x * z * c * inv),
                    Jet2::from_re_im(y * s * inv, y * z * c * inv),
                    Jet2::from_re_im(z * inv, -((z * z + 1.0) * (s * c) * inv)),
                ]
            }
            (SurfaceSpec::TotallyGeodesicCp2, DomainJet::Sphere([x, y, z])) => {
                vec![x.to_complex(), y.to_complex(), z.to_complex()]
            }
            (SurfaceSpec::PsiCh2 { s }, DomainJet::Complex(z)) => {
                if z.v == Complex64::new(0.0, 0.0) {
                    return Err(Error::ExcludedPoint {
                        p1: point.p1,
                        p2: point.p2,
                        reason: "z = 0 is not in C*".into(),
                    });
                }
                let (cs, sn) = (s.cos(), s.sin());
                let zb = z.conj();
                let w = z * cs + zb * sn;
                let inv = w.norm_sqr().try_recip()?.to_complex();
                let r2 = z.norm_sqr();
                vec![
                    (z * z * (cs * cs) - zb * zb * (sn * sn)) * inv,
                    w.scale_real((r2 - Jet2::constant(1.0)) * (1.0 / SQRT_2)) * inv,
                    w.scale_real((r2 + 1.0) * (1.0 / SQRT_2)) * inv,
                ]
            }
            (SurfaceSpec::EtaCh2, DomainJet::Plane(x, y)) => {
                let inv = (x * x * 4.0 + 1.0).recip();
                let x2 = x * x;
                let y2 = y * y;
                let x3 = x2 * x;
                let xy2 = x * y2;
                vec![
                    Jet2::from_re_im(y * 2.0 * inv, x * y * 4.0 * inv),
                    Jet2::from_re_im(
                        (x * 2.0 - x3 * 4.0 - xy2 * 4.0) * inv,
                        (x2 * 6.0 + y2 * 2.0) * inv,
                    ),
                    Jet2::from_re_im((x2 * 6.0 + y2 * 2.0 + 1.0) * inv, (x3 * 4.0 + xy2 * 4.0) * inv),
                ]
            }
            (SurfaceSpec::CliffordTorus, DomainJet::Torus(a, b)) => {
                let k = 1.0 / 3.0f64.sqrt();
                vec![a.cis() * k, b.cis() * k, (-(a + b)).cis() * k]
            }
            (SurfaceSpec::ProductTorusC2 { r1, r2 }, DomainJet::Torus(a, b)) => {
                vec![a.cis() * r1, b.cis() * r2]
            }
            _ => unreachable!("chart compatibility checked above"),
        };
        let jet = AmbientJet::from_components(&comps);
        if !jet.is_finite() {
            return Err(Error::NonFinite {
                what: format!("{} jet", self.kind()),
                p1: point.p1,
                p2: point.p2,
            });
        }
        Ok(jet)
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        let params = self.params();
        if !params.is_empty() {
            let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", list.join(", "))?;
        }
        Ok(())
    }
}
