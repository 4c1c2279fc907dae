use thiserror::Error;

/// Errors raised by the analytic and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the domain the formulas are defined on.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("regime mismatch: expected {expected}, found {found}")]
    Regime {
        expected: &'static str,
        found: &'static str,
    },
    /// The branch has 2a - 1 = 0, so c = -2b/(2a-1) is undefined.
    #[error("singular branch: 2a - 1 vanishes (c undefined)")]
    SingularBranch,
    #[error("pole at x = {x}")]
    Pole { x: f64 },
    #[error("degenerate energy: level coincides with the factorization energy")]
    DegenerateEnergy,
    #[error("parameters do not sit on a spectral-singularity locus")]
    NotSingular,
    #[error("empty range: {0}")]
    EmptyRange(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    /// Construction only defined for positive v2.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
