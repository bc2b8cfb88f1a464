use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResumError {
    #[error("series order {requested} exceeds the exact-arithmetic cap of {cap}")]
    CapacityExceeded { requested: usize, cap: usize },

    #[error("reexpansion order must be >= 1, got {0}")]
    InvalidOrder(usize),

    #[error("base series of order {have} cannot support a reexpansion of order {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("evaluation at Omega = 0 hits the pole of the reexpansion")]
    OmegaPole,

    #[error("root finder failed to converge on polynomial {coeffs:?}")]
    RootFinding { coeffs: Vec<f64> },

    #[error("candidate list is empty")]
    NoCandidates,

    #[error("no branch point found in the search window (0, {window}]")]
    NoBranchPoint { window: f64 },

    #[error("cutoff iteration did not converge after {iterations} steps; last cutoffs {last:?}")]
    FixedPointDiverged { iterations: usize, last: Vec<f64> },

    #[error("quadrature failed to reach tolerance {tol:e}; best error estimate {estimate:e}")]
    QuadratureFailure { tol: f64, estimate: f64 },

    #[error("moment integral diverges: correction polynomial grows at large coupling")]
    DivergentMoment,

    #[error("coupling {g} is outside the domain of the add-back integral (requires g > -{g_cut})")]
    AddbackDomain { g: f64, g_cut: f64 },

    #[error("cutoff iteration trace has not converged")]
    TraceNotConverged,

    #[error("oracle failed to converge: basis cap {cap} reached, last change {last_delta:e}")]
    OracleNotConverged { cap: usize, last_delta: f64 },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, ResumError>;
