use thiserror::Error;

/// Errors shared across the laboratory.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid element for {family}: {reason}")]
    InvalidElement { family: String, reason: String },

    #[error("group family mismatch: expected {expected}, got {got}")]
    FamilyMismatch { expected: String, got: String },

    #[error("empty Følner set")]
    EmptyFolner,

    #[error("Følner set rejected: {0}")]
    InvalidFolner(String),

    #[error("unknown complex name `{0}`")]
    UnknownComplex(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("complex validation failed: {0}")]
    Validation(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("dense solver cap exceeded: {cells} cells in degree {degree} > cap {cap}; use the stochastic heat-trace path")]
    CapExceeded {
        cells: usize,
        degree: usize,
        cap: usize,
    },

    #[error("eigenvalue clustering ambiguous: {0}")]
    AmbiguousClustering(String),

    #[error("no von Neumann oracle for {family}: torus symbols require a free abelian deck group")]
    UnsupportedOracle { family: String },

    #[error("{0}")]
    Domain(String),
}
