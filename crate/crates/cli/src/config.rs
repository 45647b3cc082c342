//! Flat `key = value` experiment configuration.
//!
//! Resolution order is defaults, then the config file, then flags. The
//! resolved values are echoed into every output, minus `output` and the
//! thread count, which do not change results.

use osc_decay::decay_lab::{geometric_grid, MorseSign, SublevelConfig, DEFAULT_LEVEL};
use osc_decay::integrator::QuadConfig;
use osc_decay::ml_special::MLParams;
use osc_decay::phase_algebra::{parse_phase, Amplitude, PolynomialPhase, WorkingDomain};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Ml,
    Classical,
    Envelope,
}

impl FromStr for Kernel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ml" => Ok(Kernel::Ml),
            "classical" => Ok(Kernel::Classical),
            "envelope" => Ok(Kernel::Envelope),
            _ => Err(format!("kernel must be ml, classical or envelope, got {s:?}")),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Ml => "ml",
            Kernel::Classical => "classical",
            Kernel::Envelope => "envelope",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub phase: String,
    pub amplitude: String,
    pub alpha: f64,
    pub beta: f64,
    pub kernel: Kernel,
    pub lambda: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_points: usize,
    pub epsilon_min: f64,
    pub epsilon_max: f64,
    pub epsilon_points: usize,
    pub rho: f64,
    pub rel_tol: f64,
    pub max_cells: usize,
    pub points_per_wavelength: f64,
    pub rule_order: usize,
    pub max_depth: u32,
    pub adapted: bool,
    pub sign: MorseSign,
    pub level: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let q = QuadConfig::default();
        ExperimentConfig {
            phase: "x^2*y^2".into(),
            amplitude: "bump:0.5".into(),
            alpha: 0.5,
            beta: 1.0,
            kernel: Kernel::Ml,
            lambda: 100.0,
            lambda_min: 4.0,
            lambda_max: 16384.0,
            lambda_points: 12,
            epsilon_min: 1e-6,
            epsilon_max: 1e-1,
            epsilon_points: 11,
            rho: 1.0,
            rel_tol: q.rel_tol,
            max_cells: q.max_cells,
            points_per_wavelength: q.points_per_wavelength,
            rule_order: q.rule_order,
            max_depth: SublevelConfig::default().max_depth,
            adapted: true,
            sign: MorseSign::Plus,
            level: DEFAULT_LEVEL,
        }
    }
}

/// Every key, in echo order.
pub const KEYS: [&str; 21] = [
    "phase",
    "amplitude",
    "alpha",
    "beta",
    "kernel",
    "lambda",
    "lambda_min",
    "lambda_max",
    "lambda_points",
    "epsilon_min",
    "epsilon_max",
    "epsilon_points",
    "rho",
    "rel_tol",
    "max_cells",
    "points_per_wavelength",
    "rule_order",
    "max_depth",
    "adapted",
    "sign",
    "level",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("{key}: cannot parse {value:?}"))
}

impl ExperimentConfig {
    pub fn is_key(key: &str) -> bool {
        KEYS.contains(&key)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key {
            "phase" => self.phase = v.to_string(),
            "amplitude" => self.amplitude = v.to_string(),
            "alpha" => self.alpha = parse(key, v)?,
            "beta" => self.beta = parse(key, v)?,
            "kernel" => self.kernel = v.parse()?,
            "lambda" => self.lambda = parse(key, v)?,
            "lambda_min" => self.lambda_min = parse(key, v)?,
            "lambda_max" => self.lambda_max = parse(key, v)?,
            "lambda_points" => self.lambda_points = parse(key, v)?,
            "epsilon_min" => self.epsilon_min = parse(key, v)?,
            "epsilon_max" => self.epsilon_max = parse(key, v)?,
            "epsilon_points" => self.epsilon_points = parse(key, v)?,
            "rho" => self.rho = parse(key, v)?,
            "rel_tol" => self.rel_tol = parse(key, v)?,
            "max_cells" => self.max_cells = parse(key, v)?,
            "points_per_wavelength" => self.points_per_wavelength = parse(key, v)?,
            "rule_order" => self.rule_order = parse(key, v)?,
            "max_depth" => self.max_depth = parse(key, v)?,
            "adapted" => self.adapted = parse(key, v)?,
            "sign" => self.sign = v.parse().map_err(|e: osc_decay::Error| e.to_string())?,
            "level" => self.level = parse(key, v)?,
            _ => return Err(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> String {
        match key {
            "phase" => self.phase.clone(),
            "amplitude" => self.amplitude.clone(),
            "alpha" => self.alpha.to_string(),
            "beta" => self.beta.to_string(),
            "kernel" => self.kernel.to_string(),
            "lambda" => self.lambda.to_string(),
            "lambda_min" => self.lambda_min.to_string(),
            "lambda_max" => self.lambda_max.to_string(),
            "lambda_points" => self.lambda_points.to_string(),
            "epsilon_min" => self.epsilon_min.to_string(),
            "epsilon_max" => self.epsilon_max.to_string(),
            "epsilon_points" => self.epsilon_points.to_string(),
            "rho" => self.rho.to_string(),
            "rel_tol" => self.rel_tol.to_string(),
            "max_cells" => self.max_cells.to_string(),
            "points_per_wavelength" => self.points_per_wavelength.to_string(),
            "rule_order" => self.rule_order.to_string(),
            "max_depth" => self.max_depth.to_string(),
            "adapted" => self.adapted.to_string(),
            "sign" => self.sign.to_string(),
            "level" => self.level.to_string(),
            _ => unreachable!("unknown key {key}"),
        }
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            self.set(k.trim(), v).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// `key = value` for every key.
    pub fn echo(&self) -> Vec<String> {
        KEYS.iter().map(|k| format!("{k} = {}", self.get(k))).collect()
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.lambda_min >= 2.0) {
            return Err(format!("lambda_min must be ≥ 2, got {}", self.lambda_min));
        }
        if !(self.lambda_max >= self.lambda_min) || !self.lambda_max.is_finite() {
            return Err(format!("lambda_max must be finite and ≥ lambda_min, got {}", self.lambda_max));
        }
        if self.lambda_points == 0 || self.epsilon_points == 0 {
            return Err("grids need at least one point".into());
        }
        if !(self.epsilon_min > 0.0) || !(self.epsilon_max >= self.epsilon_min) || !self.epsilon_max.is_finite() {
            return Err(format!("need 0 < epsilon_min ≤ epsilon_max, got {} and {}", self.epsilon_min, self.epsilon_max));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(format!("lambda must be finite and ≥ 0, got {}", self.lambda));
        }
        if !(self.level > 0.0) || !self.level.is_finite() {
            return Err(format!("level must be positive, got {}", self.level));
        }
        if self.max_depth == 0 || self.max_depth > 24 {
            return Err(format!("max_depth must be in 1..=24, got {}", self.max_depth));
        }
        self.params().map_err(|e| e.to_string())?;
        self.quad().and_then(|q| q.validate()).map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn phase(&self) -> Result<PolynomialPhase, osc_decay::Error> {
        parse_phase(&self.phase)
    }

    pub fn amplitude(&self) -> Result<Amplitude, osc_decay::Error> {
        Amplitude::parse(&self.amplitude)
    }

    pub fn params(&self) -> Result<MLParams, osc_decay::Error> {
        MLParams::new(self.alpha, self.beta)
    }

    pub fn quad(&self) -> Result<QuadConfig, osc_decay::Error> {
        Ok(QuadConfig {
            rel_tol: self.rel_tol,
            max_cells: self.max_cells,
            points_per_wavelength: self.points_per_wavelength,
            rule_order: self.rule_order,
            domain: WorkingDomain::new(self.rho)?,
            ..QuadConfig::default()
        })
    }

    pub fn sublevel(&self) -> SublevelConfig {
        SublevelConfig { max_depth: self.max_depth, ..SublevelConfig::default() }
    }

    pub fn lambda_grid(&self) -> Result<Vec<f64>, osc_decay::Error> {
        geometric_grid(self.lambda_min, self.lambda_max, self.lambda_points)
    }

    pub fn epsilon_grid(&self) -> Result<Vec<f64>, osc_decay::Error> {
        geometric_grid(self.epsilon_min, self.epsilon_max, self.epsilon_points)
    }
}
