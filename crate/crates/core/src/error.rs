use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid vector system: {0}")]
    InvalidSystem(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("system is not total: smallest frame-operator eigenvalue {lambda_min:e} is below {rank_tol:e}")]
    NotTotal { lambda_min: f64, rank_tol: f64 },

    #[error("group axiom violated ({axiom}): {detail}")]
    GroupAxiom { axiom: &'static str, detail: String },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid exact value: {0}")]
    InvalidExact(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Numerical failures are reported separately from validation errors by the CLI.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::NonFinite(_))
    }
}
