//! Experiment drivers, configuration and CSV reporting for the
//! finite-section laboratory.
//!
//! Each driver realizes one convergence study: normalized Betti
//! numbers, heat traces, integrated density of states, boundary-decay
//! fits, zeta values, Euler identities and small-λ spectral-density
//! fits, always against the independent von Neumann oracle where one
//! exists. Drivers emit gnuplot-ready CSV (12 significant digits,
//! provenance header with the config hash) and record hard assertions;
//! the binary maps assertion failures to exit code 2 and configuration
//! errors to 3.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{Condition, ExperimentConfig};
pub use experiments::{Context, ExperimentOutcome};
