//! Experiment drivers. Each submodule realizes one subcommand; shared
//! plumbing (section bundles, oracles, outcome records) lives here.

pub mod betti;
pub mod euler;
pub mod heat;
pub mod ids;
pub mod nfb;
pub mod nsfit;
pub mod validate;
pub mod zeta;

use std::path::PathBuf;

use folnerlab_core::complex::EquivariantChainComplex;
use folnerlab_core::group::{folner_box, FolnerSet};
use folnerlab_core::oracle::{self, QuadratureGrid};
use folnerlab_core::section::{build_section, BoundaryCondition, SectionComplex};
use folnerlab_core::spectral::{self, HeatOptions, SpectralData};
use folnerlab_core::LabError;
use thiserror::Error;

use crate::config::{ConfigError, ExperimentConfig};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A hard check recorded by a driver; failures map to exit code 2.
#[derive(Debug, Clone)]
pub struct AssertionRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct ExperimentOutcome {
    pub csv_files: Vec<PathBuf>,
    pub assertions: Vec<AssertionRecord>,
}

impl ExperimentOutcome {
    pub fn assert_that(&mut self, name: &str, passed: bool, detail: String) {
        self.assertions.push(AssertionRecord {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn failures(&self) -> Vec<&AssertionRecord> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// Run context: config, provenance hash, output directory, thread
/// budget.
pub struct Context {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub out_dir: PathBuf,
    pub threads: usize,
}

impl Context {
    pub fn new(
        config: ExperimentConfig,
        config_hash: String,
        out_dir: PathBuf,
        threads: usize,
    ) -> Self {
        Context {
            config,
            config_hash,
            out_dir,
            threads,
        }
    }

    /// Scoped rayon pool; work items are collected in deterministic
    /// order, so thread count never changes the output bytes.
    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .expect("thread pool")
    }

    pub fn heat_options(&self) -> HeatOptions {
        HeatOptions {
            dense_cap: self.config.dense_cap,
            probes: self.config.probes,
            seed: self.config.seed,
        }
    }
}

/// A section with its Følner data and lazily shared spectra.
pub struct SectionBundle {
    pub side: u32,
    pub folner: FolnerSet,
    pub section: SectionComplex,
    /// Per degree: dense spectrum when within the cap.
    pub spectra: Vec<Option<SpectralData>>,
    pub betti: Vec<usize>,
}

impl SectionBundle {
    pub fn build(
        x: &EquivariantChainComplex,
        side: u32,
        bc: BoundaryCondition,
        dense_cap: usize,
    ) -> Result<SectionBundle, ExperimentError> {
        let folner = folner_box(x.spec, side)?;
        let section = build_section(x, &folner, bc)?;
        let mut spectra = Vec::with_capacity(x.dim() + 1);
        let mut betti = Vec::with_capacity(x.dim() + 1);
        for j in 0..=x.dim() {
            match spectral::eigenvalues(&section, j, dense_cap) {
                Ok(spec) => spectra.push(Some(spec)),
                Err(LabError::CapExceeded { .. }) => spectra.push(None),
                Err(e) => return Err(e.into()),
            }
            betti.push(spectral::betti(&section, j)?);
        }
        Ok(SectionBundle {
            side,
            folner,
            section,
            spectra,
            betti,
        })
    }

    pub fn folner_size(&self) -> usize {
        self.folner.len()
    }
}

/// Per-axis node counts are reduced above dimension two so the tensor
/// grid stays desk-scale.
pub fn oracle_grid(torus_dim: usize, points_per_axis: usize) -> Result<QuadratureGrid, LabError> {
    let m = match torus_dim {
        0..=2 => points_per_axis,
        3 => points_per_axis.min(32),
        _ => points_per_axis.min(12),
    };
    QuadratureGrid::trapezoid(m.max(8))
}

/// b_{(2)}^j oracle: the Euler-characteristic route where it applies
/// (any deck group), torus quadrature otherwise (abelian only).
pub fn l2_betti_oracle(
    x: &EquivariantChainComplex,
    j: usize,
    points_per_axis: usize,
) -> Option<f64> {
    if let Some(v) = oracle::l2_betti_from_euler(x, j) {
        return Some(v);
    }
    let d = match x.spec.family {
        folnerlab_core::group::GroupFamily::FreeAbelian(d) => d,
        _ => return None,
    };
    let grid = oracle_grid(d, points_per_axis).ok()?;
    oracle::l2_betti(x, j, &grid).ok().map(|est| est.value)
}

/// Heat trace for one (degree, t): dense spectrum when cached,
/// stochastic fallback otherwise. Returns (value, method label).
pub fn heat_value(
    bundle: &SectionBundle,
    j: usize,
    t: f64,
    opts: &HeatOptions,
) -> Result<(f64, String), ExperimentError> {
    if let Some(spec) = &bundle.spectra[j] {
        Ok((spectral::heat_trace_from_spectrum(spec, t), "dense".into()))
    } else {
        let result = spectral::heat_trace(&bundle.section, j, t, opts)?;
        let label = match result.method {
            spectral::HeatTraceMethod::Dense => "dense".into(),
            spectral::HeatTraceMethod::Stochastic {
                std_error, probes, ..
            } => format!("stochastic(probes={probes};stderr={:.3e})", std_error),
        };
        Ok((result.value, label))
    }
}
