//! Chart parametrizations of the surface domains, sampling grids and
//! quadrature rules.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Jet2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// (colatitude φ, azimuth θ) on S²; excludes the poles.
    Spherical,
    /// Stereographic projection from the north pole; covers S² minus (0,0,1).
    StereoNorth,
    /// Stereographic projection from the south pole; covers S² minus (0,0,−1).
    StereoSouth,
    /// (x, y) on the plane.
    Planar,
    /// (r, θ) with z = r e^{iθ}, r > 0.
    PolarAnnulus,
    /// Angles (θ₁, θ₂) on the torus.
    Torus,
}

impl Chart {
    pub fn name(&self) -> &'static str {
        match self {
            Chart::Spherical => "spherical",
            Chart::StereoNorth => "stereo-north",
            Chart::StereoSouth => "stereo-south",
            Chart::Planar => "planar",
            Chart::PolarAnnulus => "polar-annulus",
            Chart::Torus => "torus",
        }
    }

    pub fn parse(name: &str) -> Option<Chart> {
        [
            Chart::Spherical,
            Chart::StereoNorth,
            Chart::StereoSouth,
            Chart::Planar,
            Chart::PolarAnnulus,
            Chart::Torus,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, Chart::Spherical | Chart::StereoNorth | Chart::StereoSouth)
    }

    /// Rejects parameters outside the chart's open domain.
    pub fn check(&self, p1: f64, p2: f64) -> Result<()> {
        if !p1.is_finite() || !p2.is_finite() {
            return Err(Error::ChartDomain(format!(
                "non-finite chart parameters ({p1}, {p2})"
            )));
        }
        match self {
            Chart::Spherical if !(p1 > 0.0 && p1 < PI) => Err(Error::ChartDomain(format!(
                "colatitude {p1} outside (0, π); use a stereographic chart near the poles"
            ))),
            Chart::PolarAnnulus if p1 <= 0.0 => Err(Error::ChartDomain(format!(
                "radius {p1} must be positive"
            ))),
            _ => Ok(()),
        }
    }

    /// Jets of the domain coordinates the catalog formulas consume.
    pub fn jet(&self, p1: f64, p2: f64) -> Result<DomainJet> {
        self.check(p1, p2)?;
        let a = Jet2::param1(p1);
        let b = Jet2::param2(p2);
        Ok(match self {
            Chart::Spherical => DomainJet::Sphere(sphere_chart(p1, p2)?),
            Chart::StereoNorth | Chart::StereoSouth => {
                let q = a * a + b * b;
                let inv = (q + 1.0).recip();
                let z = if *self == Chart::StereoNorth {
                    (q - Jet2::constant(1.0)) * inv
                } else {
                    (Jet2::constant(1.0) - q) * inv
                };
                DomainJet::Sphere([a * inv * 2.0, b * inv * 2.0, z])
            }
            Chart::Planar => DomainJet::Plane(a, b),
            Chart::PolarAnnulus => DomainJet::Complex(b.cis().scale_real(a)),
            Chart::Torus => DomainJet::Torus(a, b),
        })
    }
}

/// Domain coordinates with jets over the two chart parameters.
#[derive(Debug, Clone, Copy)]
pub enum DomainJet {
    /// (x, y, z) on the unit sphere.
    Sphere([Jet2<f64>; 3]),
    /// (x, y) on the plane.
    Plane(Jet2<f64>, Jet2<f64>),
    /// A complex coordinate z.
    Complex(Jet2<Complex64>),
    /// Two angles.
    Torus(Jet2<f64>, Jet2<f64>),
}

/// (sin φ cos θ, sin φ sin θ, cos φ) with exact second-order jets.
pub fn sphere_chart(phi: f64, theta: f64) -> Result<[Jet2<f64>; 3]> {
    Chart::Spherical.check(phi, theta)?;
    let p = Jet2::param1(phi);
    let t = Jet2::param2(theta);
    let s = p.sin();
    Ok([s * t.cos(), s * t.sin(), p.cos()])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub p1: f64,
    pub p2: f64,
}

impl ChartPoint {
    pub fn new(chart: Chart, p1: f64, p2: f64) -> Self {
        ChartPoint { chart, p1, p2 }
    }

    pub fn jet(&self) -> Result<DomainJet> {
        self.chart.jet(self.p1, self.p2)
    }

    /// The point of S² this chart point maps to, for sphere charts.
    pub fn sphere_point(&self) -> Option<[f64; 3]> {
        match self.jet() {
            Ok(DomainJet::Sphere(x)) => Some([x[0].v, x[1].v, x[2].v]),
            _ => None,
        }
    }

    /// The same parameters shifted by (h1, h2).
    pub fn offset(&self, h1: f64, h2: f64) -> Self {
        ChartPoint::new(self.chart, self.p1 + h1, self.p2 + h2)
    }
}

/// A chart region with the margins that keep sampling away from excluded
/// or ill-conditioned sets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Domain {
    /// Spherical chart with colatitude in [margin, π − margin].
    Sphere { margin: f64 },
    /// Planar chart on [x0, x1] × [y0, y1].
    Rect { x: (f64, f64), y: (f64, f64) },
    /// Polar chart with r_min ≤ |z| ≤ r_max.
    Annulus { r_min: f64, r_max: f64 },
    /// Full period in both angles.
    Torus,
}

impl Domain {
    pub fn chart(&self) -> Chart {
        match self {
            Domain::Sphere { .. } => Chart::Spherical,
            Domain::Rect { .. } => Chart::Planar,
            Domain::Annulus { .. } => Chart::PolarAnnulus,
            Domain::Torus => Chart::Torus,
        }
    }

    fn ranges(&self) -> Result<((f64, f64), (f64, f64))> {
        let r = match *self {
            Domain::Sphere { margin } => ((margin, PI - margin), (0.0, 2.0 * PI)),
            Domain::Rect { x, y } => (x, y),
            Domain::Annulus { r_min, r_max } => {
                if !(r_min > 0.0) {
                    return Err(Error::EmptyDomain);
                }
                ((r_min, r_max), (0.0, 2.0 * PI))
            }
            Domain::Torus => ((0.0, 2.0 * PI), (0.0, 2.0 * PI)),
        };
        let (a, b) = r;
        if !(a.0 < a.1 && b.0 < b.1) || self.margin_invalid() {
            return Err(Error::EmptyDomain);
        }
        Ok(r)
    }

    fn margin_invalid(&self) -> bool {
        matches!(*self, Domain::Sphere { margin } if !(margin > 0.0))
    }

    fn periodic(&self) -> (bool, bool) {
        match self {
            Domain::Sphere { .. } | Domain::Annulus { .. } => (false, true),
            Domain::Rect { .. } => (false, false),
            Domain::Torus => (true, true),
        }
    }

    /// A uniformly random point (area-uniform on the sphere).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<ChartPoint> {
        let ((a0, a1), (b0, b1)) = self.ranges()?;
        let p2 = rng.gen_range(b0..b1);
        let p1 = match self {
            Domain::Sphere { .. } => rng.gen_range(a1.cos()..a0.cos()).acos(),
            _ => rng.gen_range(a0..a1),
        };
        Ok(ChartPoint::new(self.chart(), p1, p2))
    }
}

/// Deterministic n1 × n2 lattice over the domain. Periodic directions
/// omit the duplicated endpoint; bounded directions include both ends.
/// Points are ordered with the second parameter varying fastest.
pub fn build_grid(domain: &Domain, n1: usize, n2: usize) -> Result<Vec<ChartPoint>> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::ChartDomain(format!(
            "grid must be at least 2x2, got {n1}x{n2}"
        )));
    }
    let ((a0, a1), (b0, b1)) = domain.ranges()?;
    let (per1, per2) = domain.periodic();
    let axis = |lo: f64, hi: f64, n: usize, periodic: bool| -> Vec<f64> {
        let steps = if periodic { n } else { n - 1 };
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
            .collect()
    };
    let first = axis(a0, a1, n1, per1);
    let second = axis(b0, b1, n2, per2);
    let chart = domain.chart();
    Ok(first
        .iter()
        .flat_map(|&p1| second.iter().map(move |&p2| ChartPoint::new(chart, p1, p2)))
        .collect())
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor quadrature over a chart domain.
///
/// The rule integrates against a reference measure: the round area element
/// for the sphere, dθ₁dθ₂ for the torus. `reference_density[k]` is that
/// measure's density per unit chart area at node k, so an induced area
/// element √det g enters integrands as √det g / reference_density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub nodes: Vec<ChartPoint>,
    pub weights: Vec<f64>,
    pub reference_density: Vec<f64>,
    pub orders: (usize, usize),
    /// Total reference measure of the domain.
    pub measure: f64,
}

impl QuadratureRule {
    /// Gauss–Legendre in cos φ times the trapezoid rule in θ.
    pub fn sphere(n_polar: usize, n_azimuth: usize) -> Self {
        let (x, w) = gauss_legendre(n_polar);
        let dtheta = 2.0 * PI / n_azimuth as f64;
        let mut nodes = Vec::with_capacity(n_polar * n_azimuth);
        let mut weights = Vec::with_capacity(n_polar * n_azimuth);
        let mut density = Vec::with_capacity(n_polar * n_azimuth);
        for (xi, wi) in x.iter().zip(&w) {
            let phi = xi.acos();
            for j in 0..n_azimuth {
                nodes.push(ChartPoint::new(Chart::Spherical, phi, dtheta * j as f64));
                weights.push(wi * dtheta);
                density.push(phi.sin());
            }
        }
        QuadratureRule {
            nodes,
            weights,
            reference_density: density,
            orders: (n_polar, n_azimuth),
            measure: 4.0 * PI,
        }
    }

    /// Trapezoid rule in both angles.
    pub fn torus(n1: usize, n2: usize) -> Self {
        let h1 = 2.0 * PI / n1 as f64;
        let h2 = 2.0 * PI / n2 as f64;
        let nodes: Vec<_> = (0..n1)
            .flat_map(|i| (0..n2).map(move |j| ChartPoint::new(Chart::Torus, h1 * i as f64, h2 * j as f64)))
            .collect();
        let len = nodes.len();
        QuadratureRule {
            nodes,
            weights: vec![h1 * h2; len],
            reference_density: vec![1.0; len],
            orders: (n1, n2),
            measure: 4.0 * PI * PI,
        }
    }
}

/// Σ w_k f(node_k) with Neumaier-compensated summation in node order.
/// Evaluation may run in parallel; the reduction order is fixed.
pub fn integrate<F>(f: F, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(&ChartPoint) -> f64 + Sync,
{
    try_integrate(|p| Ok(f(p)), rule)
}

/// As [`integrate`], for integrands that can fail.
pub fn try_integrate<F>(f: F, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(&ChartPoint) -> Result<f64> + Sync,
{
    let values: Vec<f64> = rule
        .nodes
        .par_iter()
        .map(|p| {
            let v = f(p)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite {
                    what: "integrand".into(),
                    p1: p.p1,
                    p2: p.p2,
                })
            }
        })
        .collect::<Result<_>>()?;
    Ok(neumaier_sum(values.iter().zip(&rule.weights).map(|(v, w)| v * w)))
}

pub fn neumaier_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}
