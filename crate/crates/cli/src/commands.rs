//! The six subcommands.

use std::collections::BTreeMap;
use std::path::PathBuf;

use circlag::atlas::{Chart, ChartPoint};
use circlag::catalog::{catalog_entries, CatalogEntry, SurfaceSpec};
use circlag::geom::{
    density_identity_defects, ellipse_samples, gauss_curvature_intrinsic, point_geometry, radius,
    product_identity_check, RadiusRoutes,
};
use circlag::global::{
    curvature_scan_with, pinching_report, product_torus_willmore, willmore, PinchingReport,
    ScanReport, WillmoreReport,
};
use circlag::verify::{point_checks, verify, Check, Tolerances};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{ellipse_csv, to_csv, to_json};
use crate::{parse_coordinate, Cli, CliError, Command, Outcome, PointArgs};

/// Step of the central differences behind `K_intrinsic` in probe reports.
const PROBE_FD_STEP: f64 = 1e-4;

pub fn dispatch(cli: &Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let (common, run): (_, fn(&Cli, &RunConfig) -> Result<Outcome, CliError>) = match &cli.command {
        Command::List { common, .. } => (common, list),
        Command::Probe { common, .. } => (common, probe),
        Command::Verify { common } => (common, verify_cmd),
        Command::Ellipse { common, .. } => (common, ellipse),
        Command::Willmore { common } => (common, willmore_cmd),
        Command::Scan { common } => (common, scan),
    };
    let config = common.resolve()?;
    let outcome = run(cli, &config)?;
    Ok((outcome, config.out.clone()))
}

/// The surface named by the configuration.
pub fn surface_from(config: &RunConfig) -> Result<SurfaceSpec, CliError> {
    let kind = config
        .surface
        .as_deref()
        .ok_or_else(|| CliError::Usage("no surface given (use --surface or a config file)".into()))?;
    Ok(SurfaceSpec::from_parts(
        kind, config.t, config.s, config.r1, config.r2,
    )?)
}

fn render<T: Serialize>(report: &T, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}

fn exit_for(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

fn list(cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let Command::List { json, .. } = &cli.command else {
        unreachable!()
    };
    let entries = catalog_entries();
    let format = if *json { Some(Format::Json) } else { config.format };
    let body = match format {
        Some(f) => render(&entries, f),
        None => list_table(&entries),
    };
    Ok(Outcome { body, exit: 0 })
}

fn list_table(entries: &[CatalogEntry]) -> String {
    let mut out = format!(
        "{:<22} {:<7} {:<6} {:<8} {}\n",
        "KIND", "AMBIENT", "DOMAIN", "COMPACT", "PARAMETERS"
    );
    for e in entries {
        let params = if e.params.is_empty() {
            "-".to_string()
        } else {
            e.params
                .iter()
                .map(|p| p.constraint)
                .collect::<Vec<_>>()
                .join("; ")
        };
        let ambient = serde_json::to_value(e.ambient).expect("model serializes");
        out.push_str(&format!(
            "{:<22} {:<7} {:<6} {:<8} {}\n",
            e.kind,
            ambient.as_str().unwrap_or_default(),
            e.domain,
            if e.compact { "yes" } else { "no" },
            params
        ));
    }
    out
}

fn chart_point(spec: &SurfaceSpec, args: &PointArgs) -> Result<ChartPoint, CliError> {
    let chart = match &args.chart {
        Some(name) => Chart::parse(name)
            .ok_or_else(|| CliError::Usage(format!("unknown chart `{name}`")))?,
        None => spec.default_chart(),
    };
    Ok(ChartPoint::new(
        chart,
        parse_coordinate(&args.p1)?,
        parse_coordinate(&args.p2)?,
    ))
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
struct ProbeReport {
    surface: &'static str,
    params: BTreeMap<&'static str, f64>,
    chart: &'static str,
    p1: f64,
    p2: f64,
    c: f64,
    K: f64,
    K_intrinsic: Option<f64>,
    H2: f64,
    R: Option<f64>,
    D_re: f64,
    D_im: f64,
    D_abs: f64,
    F_re: f64,
    F_im: f64,
    F_abs: f64,
    Hc_re: f64,
    Hc_im: f64,
    Hc_abs: f64,
    sigma2: f64,
    area_density: f64,
    metric: [[f64; 2]; 2],
    frame: [[f64; 2]; 2],
    C111: f64,
    C112: f64,
    C122: f64,
    C222: f64,
    sigma_normal: [[[f64; 2]; 2]; 2],
    mean_normal: [f64; 2],
    circular: bool,
    radius_routes: Option<RadiusRoutes>,
    defects: BTreeMap<&'static str, f64>,
    checks: Vec<Check>,
    pass: bool,
}

fn probe(cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let Command::Probe { point, .. } = &cli.command else {
        unreachable!()
    };
    let spec = surface_from(config)?;
    let tol = config.tolerances()?;
    let p = chart_point(&spec, point)?;
    let pg = point_geometry(&spec, &p)?;
    // the stencil may leave the chart near its boundary
    let k_intrinsic = gauss_curvature_intrinsic(&spec, &p, PROBE_FD_STEP).ok();
    let checks = point_checks(&spec, &pg, k_intrinsic, &tol);
    let pass = checks.iter().all(|c| c.pass);
    let routes = radius(&pg, tol.geometric).ok();
    let (linear, cubic) = density_identity_defects(&pg);
    let c = &pg.cijk;
    let sigma_normal = [
        [pg.normal_coords(&pg.sigma[0][0]), pg.normal_coords(&pg.sigma[0][1])],
        [pg.normal_coords(&pg.sigma[1][0]), pg.normal_coords(&pg.sigma[1][1])],
    ];
    let defects = BTreeMap::from([
        ("membership", pg.membership_defect),
        ("horizontality", pg.horizontality_defect),
        ("lagrangian", pg.lagrangian_defect),
        ("split_residual", pg.split_residual),
        ("position", pg.position_defect),
        ("fiber", pg.fiber_defect),
        ("normal_plane", pg.normal_defect),
        ("cijk_symmetry", pg.symmetry_defect()),
        ("defect_routes", (pg.d - pg.d_from_cijk).norm()),
        ("linear_density", linear),
        ("cubic_density", cubic),
        ("product_identity", product_identity_check(&pg)),
    ]);
    let report = ProbeReport {
        surface: spec.kind(),
        params: spec.params().into_iter().collect(),
        chart: p.chart.name(),
        p1: p.p1,
        p2: p.p2,
        c: pg.c,
        K: pg.k_extrinsic,
        K_intrinsic: k_intrinsic,
        H2: pg.h2,
        R: routes.map(|r| r.formula),
        D_re: pg.d.re,
        D_im: pg.d.im,
        D_abs: pg.d.norm(),
        F_re: pg.f.re,
        F_im: pg.f.im,
        F_abs: pg.f.norm(),
        Hc_re: pg.hc.re,
        Hc_im: pg.hc.im,
        Hc_abs: pg.hc.norm(),
        sigma2: pg.sigma2,
        area_density: pg.area_density,
        metric: pg.metric,
        frame: pg.frame,
        C111: c[0][0][0],
        C112: c[0][0][1],
        C122: c[0][1][1],
        C222: c[1][1][1],
        sigma_normal,
        mean_normal: pg.normal_coords(&pg.mean),
        circular: pg.is_circular(tol.geometric),
        radius_routes: routes,
        defects,
        checks,
        pass,
    };
    Ok(Outcome {
        body: render(&report, config.format.unwrap_or(Format::Json)),
        exit: exit_for(pass),
    })
}

fn verify_cmd(_cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = surface_from(config)?;
    let report = verify(&spec, &config.verify_config()?)?;
    Ok(Outcome {
        body: render(&report, config.format.unwrap_or(Format::Json)),
        exit: exit_for(report.pass),
    })
}

#[derive(Debug, Serialize)]
struct EllipseReport {
    surface: &'static str,
    params: BTreeMap<&'static str, f64>,
    chart: &'static str,
    p1: f64,
    p2: f64,
    radius: f64,
    residual: f64,
    samples: Vec<circlag::geom::EllipseSample>,
}

fn ellipse(cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let Command::Ellipse { point, n, .. } = &cli.command else {
        unreachable!()
    };
    let spec = surface_from(config)?;
    let p = chart_point(&spec, point)?;
    let pg = point_geometry(&spec, &p)?;
    let fit = ellipse_samples(&pg, *n)?;
    let body = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => ellipse_csv(&fit),
        Format::Json => to_json(&EllipseReport {
            surface: spec.kind(),
            params: spec.params().into_iter().collect(),
            chart: p.chart.name(),
            p1: p.p1,
            p2: p.p2,
            radius: fit.radius,
            residual: fit.residual,
            samples: fit.samples,
        }),
    };
    Ok(Outcome { body, exit: 0 })
}

#[derive(Debug, Serialize)]
struct WillmoreOutput {
    #[serde(flatten)]
    report: WillmoreReport,
    /// The value W should take: 4πχ on Whitney spheres, π²(r₁/r₂ + r₂/r₁)
    /// on the product torus.
    expected: f64,
    tol: f64,
    pass: bool,
}

fn willmore_cmd(_cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = surface_from(config)?;
    let tol: Tolerances = config.tolerances()?;
    let quad = config.verify_config()?.quad;
    let report = willmore(&spec, quad)?;
    let (expected, tol) = match spec {
        SurfaceSpec::ProductTorusC2 { r1, r2 } => (product_torus_willmore(r1, r2), tol.willmore_torus),
        _ => (report.bound, tol.willmore),
    };
    let pass = (report.w - expected).abs() <= tol;
    let out = WillmoreOutput {
        report,
        expected,
        tol,
        pass,
    };
    Ok(Outcome {
        body: render(&out, config.format.unwrap_or(Format::Json)),
        exit: exit_for(pass),
    })
}

#[derive(Debug, Serialize)]
struct ScanOutput {
    scan: ScanReport,
    pinching: PinchingReport,
}

fn scan(_cli: &Cli, config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = surface_from(config)?;
    let vc = config.verify_config()?;
    let scan = curvature_scan_with(&spec, vc.grid, vc.tol.geometric, vc.tol.geometric)?;
    let pinching = pinching_report(&scan);
    let exit = exit_for(pinching.consistent);
    Ok(Outcome {
        body: render(&ScanOutput { scan, pinching }, config.format.unwrap_or(Format::Json)),
        exit,
    })
}
