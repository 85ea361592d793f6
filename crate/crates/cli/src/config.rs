//! Run configuration. Precedence: command-line flags, then a key=value
//! config file, then built-in defaults.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use bosegas_core::exact_ground;
use bosegas_core::gaussian::GaussianConfig;
use bosegas_core::MethodTag;

use crate::table::Format;

pub const DEFAULT_GAMMA_MIN: f64 = 0.05;
pub const DEFAULT_GAMMA_MAX: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaSet {
    Single(f64),
    Range { min: f64, max: f64, points: usize, log: bool },
}

impl GammaSet {
    pub fn default_range() -> Self {
        GammaSet::Range {
            min: DEFAULT_GAMMA_MIN,
            max: DEFAULT_GAMMA_MAX,
            points: DEFAULT_POINTS,
            log: true,
        }
    }

    /// Sample points, strictly increasing.
    pub fn grid(&self) -> Vec<f64> {
        match *self {
            GammaSet::Single(g) => vec![g],
            GammaSet::Range { min, max, points, log } => {
                if points == 1 {
                    return vec![min];
                }
                (0..points)
                    .map(|i| {
                        let t = i as f64 / (points - 1) as f64;
                        if i == 0 {
                            min
                        } else if i == points - 1 {
                            max
                        } else if log {
                            (min.ln() + t * (max.ln() - min.ln())).exp()
                        } else {
                            min + t * (max - min)
                        }
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rho: f64,
    pub gamma: GammaSet,
    pub temperature: f64,
    pub nodes: usize,
    /// Gap-equation tolerance of the Gaussian solver.
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub methods: BTreeSet<Method>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Method {
    Exact,
    Gaussian,
    Bogoliubov,
}

impl From<Method> for MethodTag {
    fn from(m: Method) -> Self {
        match m {
            Method::Exact => MethodTag::Exact,
            Method::Gaussian => MethodTag::Gaussian,
            Method::Bogoliubov => MethodTag::Bogoliubov,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            rho: 1.0,
            gamma: GammaSet::default_range(),
            temperature: 0.0,
            nodes: exact_ground::DEFAULT_NODES,
            tol: GaussianConfig::default().tol,
            format: Format::Csv,
            out: None,
            methods: [Method::Exact, Method::Gaussian, Method::Bogoliubov].into(),
        }
    }
}

/// Settings that may or may not be given at one precedence level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub rho: Option<f64>,
    pub gamma: Option<f64>,
    pub gamma_min: Option<f64>,
    pub gamma_max: Option<f64>,
    pub points: Option<usize>,
    pub log: Option<bool>,
    pub temperature: Option<f64>,
    pub nodes: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub methods: Option<Vec<Method>>,
}

impl PartialConfig {
    /// Fields set here win over `lower`.
    pub fn over(self, lower: PartialConfig) -> PartialConfig {
        PartialConfig {
            rho: self.rho.or(lower.rho),
            gamma: self.gamma.or(lower.gamma),
            gamma_min: self.gamma_min.or(lower.gamma_min),
            gamma_max: self.gamma_max.or(lower.gamma_max),
            points: self.points.or(lower.points),
            log: self.log.or(lower.log),
            temperature: self.temperature.or(lower.temperature),
            nodes: self.nodes.or(lower.nodes),
            tol: self.tol.or(lower.tol),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
            methods: self.methods.or(lower.methods),
        }
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_file_text(text: &str) -> Result<Self> {
        let mut p = PartialConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value, got {raw:?}", n + 1))?;
            let (key, value) = (key.trim().replace('_', "-"), value.trim());
            let ctx = || format!("line {}: bad value {value:?} for {key}", n + 1);
            match key.as_str() {
                "rho" => p.rho = Some(value.parse().with_context(ctx)?),
                "gamma" => p.gamma = Some(value.parse().with_context(ctx)?),
                "gamma-min" => p.gamma_min = Some(value.parse().with_context(ctx)?),
                "gamma-max" => p.gamma_max = Some(value.parse().with_context(ctx)?),
                "points" => p.points = Some(value.parse().with_context(ctx)?),
                "log" => p.log = Some(value.parse().with_context(ctx)?),
                "temp" | "temperature" => p.temperature = Some(value.parse().with_context(ctx)?),
                "nodes" => p.nodes = Some(value.parse().with_context(ctx)?),
                "tol" => p.tol = Some(value.parse().with_context(ctx)?),
                "format" => {
                    p.format = Some(<Format as clap::ValueEnum>::from_str(value, true).map_err(|e| anyhow!(e)).with_context(ctx)?)
                }
                "out" => p.out = Some(PathBuf::from(value)),
                "methods" => {
                    let ms = value
                        .split(',')
                        .map(|m| <Method as clap::ValueEnum>::from_str(m.trim(), true).map_err(|e| anyhow!(e)))
                        .collect::<Result<Vec<_>>>()
                        .with_context(ctx)?;
                    p.methods = Some(ms);
                }
                _ => bail!("line {}: unknown key {key:?}", n + 1),
            }
        }
        Ok(p)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse_file_text(&text).with_context(|| format!("in config {}", path.display()))
    }

    /// Fills the gaps from the defaults and validates.
    pub fn resolve(self) -> Result<RunConfig> {
        let d = RunConfig::default();
        let range_given = self.gamma_min.is_some() || self.gamma_max.is_some() || self.points.is_some() || self.log.is_some();
        let gamma = match (self.gamma, range_given) {
            (Some(_), true) => bail!("give either gamma or a gamma range, not both"),
            (Some(g), false) => GammaSet::Single(g),
            (None, _) => GammaSet::Range {
                min: self.gamma_min.unwrap_or(DEFAULT_GAMMA_MIN),
                max: self.gamma_max.unwrap_or(DEFAULT_GAMMA_MAX),
                points: self.points.unwrap_or(DEFAULT_POINTS),
                log: self.log.unwrap_or(true),
            },
        };
        let cfg = RunConfig {
            rho: self.rho.unwrap_or(d.rho),
            gamma,
            temperature: self.temperature.unwrap_or(d.temperature),
            nodes: self.nodes.unwrap_or(d.nodes),
            tol: self.tol.unwrap_or(d.tol),
            format: self.format.unwrap_or(d.format),
            out: self.out.or(d.out),
            methods: self.methods.map(|m| m.into_iter().collect()).unwrap_or(d.methods),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            bail!("rho must be positive, got {}", self.rho);
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            bail!("temperature must be non-negative, got {}", self.temperature);
        }
        if self.nodes < 16 {
            bail!("nodes must be at least 16, got {}", self.nodes);
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            bail!("tol must lie in (0, 1), got {}", self.tol);
        }
        if self.methods.is_empty() {
            bail!("select at least one method");
        }
        match self.gamma {
            GammaSet::Single(g) => {
                if !(g > 0.0 && g.is_finite()) {
                    bail!("gamma must be positive, got {g}");
                }
            }
            GammaSet::Range { min, max, points, .. } => {
                if !(min > 0.0 && max.is_finite()) {
                    bail!("gamma range must be positive and finite, got [{min}, {max}]");
                }
                if points == 0 {
                    bail!("points must be at least 1");
                }
                if points > 1 && max.partial_cmp(&min) != Some(core::cmp::Ordering::Greater) {
                    bail!("gamma-max must exceed gamma-min, got [{min}, {max}]");
                }
            }
        }
        Ok(())
    }

    pub fn gaussian(&self) -> GaussianConfig {
        GaussianConfig {
            nodes: self.nodes,
            tol: self.tol,
            ..GaussianConfig::default()
        }
    }

    pub fn wants(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }

    /// Provenance lines for output headers; no timestamps.
    pub fn describe(&self) -> Vec<String> {
        let gamma = match self.gamma {
            GammaSet::Single(g) => format!("gamma={g:?}"),
            GammaSet::Range { min, max, points, log } => format!(
                "gamma-min={min:?} gamma-max={max:?} points={points} spacing={}",
                if log { "log" } else { "linear" }
            ),
        };
        let methods: Vec<&str> = self.methods.iter().map(|&m| MethodTag::from(m).as_str()).collect();
        vec![
            format!("rho={:?} temperature={:?} {gamma}", self.rho, self.temperature),
            format!("nodes={} gaussian-tol={:?} methods={}", self.nodes, self.tol, methods.join(",")),
        ]
    }
}
