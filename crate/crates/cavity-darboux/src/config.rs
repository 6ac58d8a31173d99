//! Flat key=value configuration for the CLI, with every simulation knob in
//! one struct. Command-line flags override file values; file values override
//! the defaults below.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::darboux::SigmaChoice;
use crate::jc::PhysParams;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config field '{field}': {message}")]
    Invalid { field: String, message: String },
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("malformed config line {line}: '{text}' (expected key=value)")]
    Malformed { line: usize, text: String },
    #[error("cannot read config file {path}: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Full simulation configuration.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Coupling strength Ω.
    pub coupling: f64,
    /// Field frequency ω.
    pub omega: f64,
    /// Detuning Δ = ω₀ − ω.
    pub delta: f64,
    pub hbar: f64,
    /// Mean photon number n̄ of the coherent state.
    pub nbar: f64,
    /// Classical amplitude b₀; when unset, defaults to the classical/quantum
    /// boundary sqrt(n̄ + 1/2).
    pub b0: Option<f64>,
    /// Darboux choice; `None` runs the standard model.
    pub sigma: Option<SigmaChoice>,
    pub t0: f64,
    pub t1: f64,
    pub samples: usize,
    /// Embedding order P of the σ₁ expansion.
    pub hpm_order: usize,
    pub pade_m: usize,
    pub pade_n: usize,
    pub poisson_tol: f64,
    /// Switch-on time of the σ₁ drive (occupation is zero before it).
    pub t_on: f64,
    /// Scale factor applied to the σ₂ occupation before the modified sum.
    pub sigma2_scale: f64,
    /// Initial β for the σ₂/σ₃ solvers.
    pub beta0: C64,
    /// Multiply |V[1]| by (ħΩ)².
    pub vmag_prefactor: bool,
    pub logy: bool,
    pub out_dir: PathBuf,
    pub write_csv: bool,
    pub write_svg: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            coupling: 1.0,
            omega: 1.0,
            delta: 2.0 * 2.0f64.sqrt(),
            hbar: 1.0,
            nbar: 30.0,
            b0: None,
            sigma: None,
            t0: 0.0,
            t1: 100.0,
            samples: 5000,
            hpm_order: 3,
            pade_m: 2,
            pade_n: 2,
            poisson_tol: 1e-12,
            t_on: 10.0,
            sigma2_scale: 1.0,
            beta0: C64::new(0.0, 0.0),
            vmag_prefactor: false,
            logy: false,
            out_dir: PathBuf::from("out"),
            write_csv: true,
            write_svg: true,
        }
    }
}

impl SimConfig {
    /// Parses `key=value` lines ('#' starts a comment) over the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = SimConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line: idx + 1,
                text: raw.to_string(),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Unreadable {
            path: path.to_path_buf(),
            source,
        })?;
        SimConfig::parse(&text)
    }

    /// Applies one key=value assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num(field: &str, value: &str) -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .map_err(|_| invalid(field, format!("not a number: '{value}'")))
        }
        fn flag(field: &str, value: &str) -> Result<bool, ConfigError> {
            match value {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(invalid(field, format!("not a boolean: '{value}'"))),
            }
        }
        match key {
            "coupling" => self.coupling = num(key, value)?,
            "omega" => self.omega = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "hbar" => self.hbar = num(key, value)?,
            "nbar" => self.nbar = num(key, value)?,
            "b0" => self.b0 = Some(num(key, value)?),
            "sigma" => {
                self.sigma = match value {
                    "none" => None,
                    other => Some(other.parse().map_err(|e: String| invalid(key, e))?),
                }
            }
            "t0" => self.t0 = num(key, value)?,
            "t1" => self.t1 = num(key, value)?,
            "samples" => {
                self.samples = value
                    .parse()
                    .map_err(|_| invalid(key, format!("not an integer: '{value}'")))?
            }
            "hpm_order" => {
                self.hpm_order = value
                    .parse()
                    .map_err(|_| invalid(key, format!("not an integer: '{value}'")))?
            }
            "pade_m" => {
                self.pade_m = value
                    .parse()
                    .map_err(|_| invalid(key, format!("not an integer: '{value}'")))?
            }
            "pade_n" => {
                self.pade_n = value
                    .parse()
                    .map_err(|_| invalid(key, format!("not an integer: '{value}'")))?
            }
            "poisson_tol" => self.poisson_tol = num(key, value)?,
            "t_on" => self.t_on = num(key, value)?,
            "sigma2_scale" => self.sigma2_scale = num(key, value)?,
            "beta0_re" => self.beta0.re = num(key, value)?,
            "beta0_im" => self.beta0.im = num(key, value)?,
            "vmag_prefactor" => self.vmag_prefactor = flag(key, value)?,
            "logy" => self.logy = flag(key, value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "csv" => self.write_csv = flag(key, value)?,
            "svg" => self.write_svg = flag(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.coupling > 0.0) {
            return Err(invalid("coupling", "must be > 0"));
        }
        if !(self.omega > 0.0) {
            return Err(invalid("omega", "must be > 0"));
        }
        if !(self.hbar > 0.0) {
            return Err(invalid("hbar", "must be > 0"));
        }
        if !(self.nbar >= 0.0) {
            return Err(invalid("nbar", "must be >= 0"));
        }
        if !(self.t1 > self.t0) {
            return Err(invalid("t1", "must exceed t0"));
        }
        if self.samples < 2 {
            return Err(invalid("samples", "need at least 2 samples"));
        }
        if !(self.poisson_tol > 0.0 && self.poisson_tol < 1.0) {
            return Err(invalid("poisson_tol", "must lie in (0, 1)"));
        }
        if self.hpm_order < 1 || self.hpm_order > 4 {
            return Err(invalid("hpm_order", "supported embedding orders are 1..=4"));
        }
        if self.pade_m == 0 || self.pade_n == 0 || self.pade_m + self.pade_n >= 6 {
            return Err(invalid(
                "pade_m",
                "orders must satisfy M, N >= 1 and M + N < 6",
            ));
        }
        if !(self.sigma2_scale > 0.0) {
            return Err(invalid("sigma2_scale", "must be > 0"));
        }
        if !self.beta0.re.is_finite() || !self.beta0.im.is_finite() {
            return Err(invalid("beta0_re", "must be finite"));
        }
        Ok(())
    }

    /// Effective classical amplitude (explicit or the boundary default).
    pub fn effective_b0(&self) -> f64 {
        self.b0.unwrap_or_else(|| (self.nbar + 0.5).sqrt())
    }

    pub fn phys_params(&self) -> PhysParams {
        PhysParams::from_detuning(
            self.coupling,
            self.omega,
            self.delta,
            self.hbar,
            self.effective_b0(),
            C64::new(self.nbar.sqrt(), 0.0),
        )
    }

    /// The uniform output grid.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.samples;
        let step = (self.t1 - self.t0) / (n - 1) as f64;
        (0..n).map(|k| self.t0 + step * k as f64).collect()
    }
}
