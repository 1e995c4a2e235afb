//! Experiment configuration: a single TOML file with a documented key
//! set; unknown keys are rejected so configs stay reproducible.

use std::path::{Path, PathBuf};

use folnerlab_core::{BoundaryCondition, EquivariantChainComplex, LabError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("complex error: {0}")]
    Complex(#[from] LabError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Relative,
    Absolute,
}

impl Condition {
    pub fn to_core(self) -> BoundaryCondition {
        match self {
            Condition::Relative => BoundaryCondition::Relative,
            Condition::Absolute => BoundaryCondition::Absolute,
        }
    }
}

fn default_conditions() -> Vec<Condition> {
    vec![Condition::Relative, Condition::Absolute]
}

fn default_t_grid() -> Vec<f64> {
    vec![0.1, 1.0, 10.0]
}

fn default_lambda_grid() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}

fn default_s_samples() -> Vec<f64> {
    vec![1.5, 2.0, 3.0]
}

fn default_zeta_lambda() -> f64 {
    1.0
}

fn default_dense_cap() -> usize {
    folnerlab_core::spectral::DEFAULT_DENSE_CAP
}

fn default_quadrature_points() -> usize {
    256
}

fn default_probes() -> usize {
    64
}

/// One experiment configuration file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Built-in complex name or a path to a complex file.
    pub complex: String,
    /// Følner box sides (ball radii for the free-group control);
    /// strictly increasing.
    pub ladder: Vec<u32>,
    #[serde(default = "default_conditions")]
    pub conditions: Vec<Condition>,
    /// Degrees to evaluate; defaults to every degree of the complex.
    #[serde(default)]
    pub degrees: Option<Vec<usize>>,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default = "default_lambda_grid")]
    pub lambda_grid: Vec<f64>,
    /// Real zeta exponents; samples outside Re s > d/2 are skipped by
    /// the zeta driver.
    #[serde(default = "default_s_samples")]
    pub s_samples: Vec<f64>,
    #[serde(default = "default_zeta_lambda")]
    pub zeta_lambda: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_dense_cap")]
    pub dense_cap: usize,
    /// Torus-quadrature points per axis (auto-reduced above dimension
    /// two to keep node counts desk-scale).
    #[serde(default = "default_quadrature_points")]
    pub quadrature_points: usize,
    /// Probe vectors for the stochastic heat-trace path.
    #[serde(default = "default_probes")]
    pub probes: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.ladder.is_empty() {
            return Err(ConfigError::Invalid("ladder must be nonempty".into()));
        }
        if !self.ladder.windows(2).all(|w| w[0] < w[1]) {
            return Err(ConfigError::Invalid(
                "ladder must be strictly increasing".into(),
            ));
        }
        if self.ladder[0] == 0 {
            return Err(ConfigError::Invalid("ladder entries must be >= 1".into()));
        }
        if self.conditions.is_empty() {
            return Err(ConfigError::Invalid("conditions must be nonempty".into()));
        }
        if self.t_grid.is_empty() || self.lambda_grid.is_empty() || self.s_samples.is_empty() {
            return Err(ConfigError::Invalid("grids must be nonempty".into()));
        }
        if self.t_grid.iter().any(|&t| t <= 0.0) {
            return Err(ConfigError::Invalid("t_grid entries must be > 0".into()));
        }
        if self.lambda_grid.iter().any(|&l| l < 0.0) {
            return Err(ConfigError::Invalid(
                "lambda_grid entries must be >= 0".into(),
            ));
        }
        if self.zeta_lambda <= 0.0 {
            return Err(ConfigError::Invalid("zeta_lambda must be > 0".into()));
        }
        if self.quadrature_points < 8 {
            return Err(ConfigError::Invalid(
                "quadrature_points must be >= 8".into(),
            ));
        }
        Ok(())
    }

    /// Resolves the complex field: builtin name first, else a file
    /// path.
    pub fn load_complex(&self) -> Result<EquivariantChainComplex, ConfigError> {
        if folnerlab_core::complex::builtin_names().contains(&self.complex.as_str()) {
            return Ok(folnerlab_core::complex::builtin_complex(&self.complex)?);
        }
        let path = Path::new(&self.complex);
        if path.exists() {
            return Ok(folnerlab_core::complex::load_complex(path)?);
        }
        Err(ConfigError::Complex(LabError::UnknownComplex(
            self.complex.clone(),
        )))
    }

    pub fn degrees_for(&self, dim: usize) -> Vec<usize> {
        match &self.degrees {
            Some(ds) => ds.iter().copied().filter(|&j| j <= dim).collect(),
            None => (0..=dim).collect(),
        }
    }
}

/// Loads a config file; returns the config and its content hash
/// (FNV-1a 64, stable across platforms) for CSV provenance headers.
pub fn load_config(path: &Path) -> Result<(ExperimentConfig, String), ConfigError> {
    let bytes = std::fs::read(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let config: ExperimentConfig = toml::from_str(&text)?;
    config.validate()?;
    Ok((config, fnv1a_hex(&bytes)))
}

pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}
