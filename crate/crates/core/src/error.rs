use thiserror::Error;

/// Failures raised by the solver, curve, and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state outside the physical domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate jump: {0}")]
    DegenerateJump(String),

    #[error("adaptive step failure at u = {u}: {reason}")]
    StepFailure { u: f64, reason: String },

    #[error("no sign change of the curve gap in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("wave speed ordering violated: {0}")]
    OrderingViolation(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("CFL violation: {0}")]
    CflViolation(String),

    #[error("finite-volume blow-up: {0}")]
    BlowUp(String),
}

impl Error {
    /// Short machine-readable tag, used in the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::DegenerateJump(_) => "degenerate_jump",
            Error::StepFailure { .. } => "step_failure",
            Error::BracketFailure { .. } => "bracket_failure",
            Error::OrderingViolation(_) => "ordering_violation",
            Error::QuadratureFailure(_) => "quadrature_failure",
            Error::CflViolation(_) => "cfl_violation",
            Error::BlowUp(_) => "blow_up",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
