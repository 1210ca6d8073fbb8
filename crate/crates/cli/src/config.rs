//! Flat `key = value` run configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! equation = heat        # heat | wave        (required)
//! alpha = 0.7            # stability index    (required)
//! dim = 1
//! delta = 1.5
//! horizon = 1
//! atoms = 1000
//! seed = 42
//! mode = additive        # additive | multiplicative
//! max_order = unbounded  # or a non-negative integer
//! t_points = 101
//! x_points = 101
//! x_min = 0
//! x_max = 1
//! output = field.csv
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use lepage_core::{ChaosConfig, Kernel, KernelKind, Mode, Params, Weight};

use crate::{key_error, CliError, Result};

const KEYS: &[&str] = &[
    "equation", "dim", "alpha", "delta", "horizon", "atoms", "seed", "mode", "max_order", "t_points", "x_points",
    "x_min", "x_max", "output",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub t_points: usize,
    pub x_points: usize,
    pub x_min: f64,
    pub x_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub equation: KernelKind,
    pub dim: usize,
    pub alpha: f64,
    pub delta: f64,
    pub horizon: f64,
    pub atoms: usize,
    pub seed: u64,
    pub mode: Mode,
    pub grid: Grid,
    pub max_order: Option<usize>,
    pub output_path: PathBuf,
}

impl RunConfig {
    /// Configuration with every optional key at its default.
    pub fn new(equation: KernelKind, alpha: f64) -> Self {
        Self {
            equation,
            dim: 1,
            alpha,
            delta: 1.5,
            horizon: 1.0,
            atoms: 1000,
            seed: 42,
            mode: Mode::Additive,
            grid: Grid {
                t_points: 101,
                x_points: 101,
                x_min: 0.0,
                x_max: 1.0,
            },
            max_order: None,
            output_path: PathBuf::from("field.csv"),
        }
    }

    pub fn kernel(&self) -> lepage_core::Result<Kernel> {
        Kernel::new(self.equation, self.dim)
    }

    pub fn params(&self) -> lepage_core::Result<Params> {
        Params::new(self.alpha, self.horizon, self.dim)
    }

    pub fn weight(&self) -> lepage_core::Result<Weight> {
        Weight::new(self.delta, &self.params()?)
    }

    pub fn chaos(&self) -> ChaosConfig {
        ChaosConfig {
            max_order: self.max_order,
            cloud_size: None,
            mode: self.mode,
        }
    }

    /// Checks every field against its domain, naming the offending key.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(key_error("alpha", format!("{} is outside (0, 2)", self.alpha)));
        }
        if self.dim == 0 {
            return Err(key_error("dim", "must be at least 1"));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(key_error("horizon", format!("{} is not positive", self.horizon)));
        }
        let kernel = self.kernel().map_err(|e| key_error("dim", e.to_string()))?;
        if !kernel.hypothesis_holds(self.alpha) {
            return Err(key_error(
                "alpha",
                format!(
                    "{:?} equation in dimension {} fails the integrability hypothesis for alpha = {}",
                    self.equation, self.dim, self.alpha
                ),
            ));
        }
        self.weight().map_err(|e| key_error("delta", e.to_string()))?;
        let g = &self.grid;
        if g.t_points < 2 {
            return Err(key_error("t_points", "grid needs at least 2 points"));
        }
        if g.x_points < 2 {
            return Err(key_error("x_points", "grid needs at least 2 points"));
        }
        if !(g.x_min < g.x_max) || !g.x_min.is_finite() || !g.x_max.is_finite() {
            return Err(key_error("x_max", format!("x range [{}, {}] is empty", g.x_min, g.x_max)));
        }
        Ok(())
    }
}

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| key_error(key, format!("cannot parse `{raw}` as {}", std::any::type_name::<T>())))
}

/// Parses and validates a configuration file.
pub fn parse_config(source: &str) -> Result<RunConfig> {
    let mut entries = BTreeMap::new();
    for (k, line) in source.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, raw)) = line.split_once('=') else {
            return Err(CliError::Syntax {
                line: k + 1,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(key_error(key, "unknown key"));
        }
        if entries.insert(key.to_string(), raw.trim().to_string()).is_some() {
            return Err(key_error(key, "given more than once"));
        }
    }
    let equation = match entries.get("equation").map(String::as_str) {
        Some("heat") => KernelKind::Heat,
        Some("wave") => KernelKind::Wave,
        Some(other) => return Err(key_error("equation", format!("`{other}` is neither heat nor wave"))),
        None => return Err(key_error("equation", "missing required key")),
    };
    let alpha = match entries.get("alpha") {
        Some(raw) => value("alpha", raw)?,
        None => return Err(key_error("alpha", "missing required key")),
    };
    let mut cfg = RunConfig::new(equation, alpha);
    for (key, raw) in &entries {
        match key.as_str() {
            "dim" => cfg.dim = value(key, raw)?,
            "delta" => cfg.delta = value(key, raw)?,
            "horizon" => cfg.horizon = value(key, raw)?,
            "atoms" => cfg.atoms = value(key, raw)?,
            "seed" => cfg.seed = value(key, raw)?,
            "mode" => {
                cfg.mode = match raw.as_str() {
                    "additive" => Mode::Additive,
                    "multiplicative" => Mode::Multiplicative,
                    other => return Err(key_error(key, format!("`{other}` is neither additive nor multiplicative"))),
                }
            }
            "max_order" => {
                cfg.max_order = if raw == "unbounded" { None } else { Some(value(key, raw)?) };
            }
            "t_points" => cfg.grid.t_points = value(key, raw)?,
            "x_points" => cfg.grid.x_points = value(key, raw)?,
            "x_min" => cfg.grid.x_min = value(key, raw)?,
            "x_max" => cfg.grid.x_max = value(key, raw)?,
            "output" => cfg.output_path = PathBuf::from(raw),
            _ => {}
        }
    }
    cfg.validate()?;
    Ok(cfg)
}
