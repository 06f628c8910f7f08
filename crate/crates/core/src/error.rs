use thiserror::Error;

/// Errors raised by the spectral engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("energy {energy} is outside the open gap (-{mass}, {mass})")]
    EnergyOutsideGap { energy: f64, mass: f64 },

    #[error("coupling g = {coupling} is singular for {context}")]
    Singularity { coupling: f64, context: &'static str },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("solver budget exceeded: {0}")]
    SolverBudgetExceeded(String),

    #[error("fixed-point iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("merged limit is tabulated for 1, 2 or 3 centers, got {0}")]
    UnsupportedCenterCount(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
