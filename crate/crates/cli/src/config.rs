//! Run configuration: plain-text `key = value` files merged with flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use circlag::verify::{Tolerances, VerifyConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

/// An `N1xN2` pair of sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims(pub usize, pub usize);

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0, self.1)
    }
}

impl FromStr for Dims {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected N1xN2 with positive integers, got `{s}`");
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b == 0 {
            return Err(bad());
        }
        Ok(Dims(a, b))
    }
}

/// A `NAME=VALUE` tolerance override.
#[derive(Debug, Clone, PartialEq)]
pub struct TolOverride {
    pub name: String,
    pub value: f64,
}

impl FromStr for TolOverride {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
        let name = name.trim().to_string();
        if !Tolerances::NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown tolerance `{name}` (expected one of {})",
                Tolerances::NAMES.join(", ")
            ));
        }
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("tolerance `{name}` needs a number, got `{}`", value.trim()))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(format!("tolerance `{name}` must be positive, got {value}"));
        }
        Ok(TolOverride { name, value })
    }
}

/// Everything a command needs besides its positional arguments. Unset
/// fields fall back to the command's defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub surface: Option<String>,
    pub t: Option<f64>,
    pub s: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub grid: Option<Dims>,
    pub quad: Option<Dims>,
    /// Overrides by name; later entries win.
    pub tol: BTreeMap<String, f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

pub const CONFIG_KEYS: [&str; 12] = [
    "surface", "t", "s", "r1", "r2", "grid", "quad", "tol", "format", "out", "seed", "samples",
];

impl RunConfig {
    /// Parses a configuration file. Blank lines and `#` comments are
    /// skipped; `tol` may repeat, every other key may appear once.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = RunConfig::default();
        let mut seen = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CliError::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !CONFIG_KEYS.contains(&key) {
                return Err(err(format!(
                    "unknown key `{key}` (expected one of {})",
                    CONFIG_KEYS.join(", ")
                )));
            }
            if key != "tol" {
                if seen.contains(&key) {
                    return Err(err(format!("duplicate key `{key}`")));
                }
                seen.push(key);
            }
            config.set(key, value).map_err(err)?;
        }
        Ok(config)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
            value
                .parse()
                .map_err(|_| format!("`{key}` needs a number, got `{value}`"))
        }
        match key {
            "surface" => self.surface = Some(value.to_string()),
            "t" => self.t = Some(num(key, value)?),
            "s" => self.s = Some(num(key, value)?),
            "r1" => self.r1 = Some(num(key, value)?),
            "r2" => self.r2 = Some(num(key, value)?),
            "grid" => self.grid = Some(value.parse()?),
            "quad" => self.quad = Some(value.parse()?),
            "tol" => {
                let o: TolOverride = value.parse()?;
                self.tol.insert(o.name, o.value);
            }
            "format" => self.format = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value)),
            "seed" => self.seed = Some(num(key, value)?),
            "samples" => self.samples = Some(num(key, value)?),
            _ => unreachable!("keys are checked before set"),
        }
        Ok(())
    }

    /// Fields set in `other` replace fields here; tolerance overrides merge.
    pub fn overlay(mut self, other: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(surface, t, s, r1, r2, grid, quad, format, out, seed, samples);
        self.tol.extend(other.tol);
        self
    }

    /// Serializes back to the file format; `parse` inverts this exactly.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        if let Some(v) = &self.surface {
            line("surface", v.clone());
        }
        for (k, v) in [("t", self.t), ("s", self.s), ("r1", self.r1), ("r2", self.r2)] {
            if let Some(v) = v {
                line(k, format!("{v:?}"));
            }
        }
        if let Some(v) = self.grid {
            line("grid", v.to_string());
        }
        if let Some(v) = self.quad {
            line("quad", v.to_string());
        }
        for (name, v) in &self.tol {
            line("tol", format!("{name}={v:?}"));
        }
        if let Some(v) = self.format {
            line("format", v.to_string());
        }
        if let Some(v) = &self.out {
            line("out", v.display().to_string());
        }
        if let Some(v) = self.seed {
            line("seed", v.to_string());
        }
        if let Some(v) = self.samples {
            line("samples", v.to_string());
        }
        out
    }

    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        for (name, value) in &self.tol {
            tol.set(name, *value)?;
        }
        Ok(tol)
    }

    pub fn verify_config(&self) -> Result<VerifyConfig, CliError> {
        let defaults = VerifyConfig::default();
        Ok(VerifyConfig {
            grid: self.grid.map_or(defaults.grid, |d| (d.0, d.1)),
            quad: self.quad.map_or(defaults.quad, |d| (d.0, d.1)),
            samples: self.samples.unwrap_or(defaults.samples),
            seed: self.seed.unwrap_or(defaults.seed),
            tol: self.tolerances()?,
            ..defaults
        })
    }
}
