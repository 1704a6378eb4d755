//! Command-line front end: argument parsing, configuration, and report
//! output for the circlag library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Dims, Format, RunConfig, TolOverride};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "circlag",
    version,
    about = "Lagrangian surfaces with circular ellipse of curvature in C^2, CP^2 and CH^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog surfaces with their parameters and ambient spaces.
    List {
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full point geometry and identity defects at one chart point.
    Probe {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the invariant suite over grids, random samples and quadrature.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample the ellipse of curvature at one chart point.
    Ellipse {
        #[command(flatten)]
        point: PointArgs,
        /// Number of tangent directions.
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Integrate |H|^2 dA + (c/2) Area over a compact surface.
    Willmore {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Curvature and radius extremes over a grid, with the pinching verdict.
    Scan {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// First chart coordinate (accepts forms like pi/3 or -2pi/5).
    #[arg(allow_hyphen_values = true)]
    pub p1: String,
    /// Second chart coordinate.
    #[arg(allow_hyphen_values = true)]
    pub p2: String,
    /// Chart name; defaults to the surface's standard chart.
    #[arg(long)]
    pub chart: Option<String>,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Catalog surface kind (see `list`).
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<f64>,
    /// Scan grid, N1xN2.
    #[arg(long)]
    pub grid: Option<Dims>,
    /// Quadrature orders, N1xN2.
    #[arg(long)]
    pub quad: Option<Dims>,
    /// Tolerance override NAME=VALUE; may repeat.
    #[arg(long = "tol")]
    pub tol: Vec<TolOverride>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plain-text key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed for random sample points.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random sample points.
    #[arg(long)]
    pub samples: Option<usize>,
}

impl CommonArgs {
    /// The config file (if any) overlaid with the flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                RunConfig::parse(&text)?
            }
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            surface: self.surface.clone(),
            t: self.t,
            s: self.s,
            r1: self.r1,
            r2: self.r2,
            grid: self.grid,
            quad: self.quad,
            tol: self.tol.iter().map(|o| (o.name.clone(), o.value)).collect(),
            format: self.format,
            out: self.out.clone(),
            seed: self.seed,
            samples: self.samples,
        };
        Ok(base.overlay(flags))
    }
}

/// A finished command: the text to emit and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub exit: i32,
}

/// Runs a parsed command line, writing to `--out` when given.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, out) = commands::dispatch(cli)?;
    match out {
        Some(path) => {
            std::fs::write(&path, &outcome.body).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Outcome {
                body: String::new(),
                exit: outcome.exit,
            })
        }
        None => Ok(outcome),
    }
}

/// Parses a chart coordinate: a number, or a multiple of pi such as
/// `pi`, `-pi/3`, `2pi/5` or `0.5*pi`.
pub fn parse_coordinate(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse coordinate `{text}`"));
    let t = text.trim();
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let (before, after) = body.split_once("pi").ok_or_else(bad)?;
    let before = before.trim_end_matches('*');
    let factor = if before.is_empty() {
        1.0
    } else {
        before.parse::<f64>().map_err(|_| bad())?
    };
    let divisor = if after.is_empty() {
        1.0
    } else {
        after
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?
    };
    Ok(sign * factor * std::f64::consts::PI / divisor)
}
