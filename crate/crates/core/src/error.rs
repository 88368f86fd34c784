use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{field} {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// ε₋² < 0: the caller asked for normal-phase modes past the critical point.
    #[error("superradiant input: eps_minus^2 = {eps_minus_sq:e} < 0; use superradiant_modes")]
    SuperradiantInput { eps_minus_sq: f64 },

    #[error("normal-phase input: g = {g} <= g_c = {g_c}")]
    NotSuperradiant { g: f64, g_c: f64 },

    #[error("no superradiant phase at T>0: g = {g} <= g_c = {g_c}")]
    NoThermalTransition { g: f64, g_c: f64 },

    #[error("critical or superradiant; perturbation theory invalid (eps_minus = {eps_minus:e})")]
    PerturbationInvalid { eps_minus: f64 },

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("eigensolver did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("Boltzmann tail {tail:e} exceeds bound {bound:e}; request more eigenpairs")]
    TailBound { tail: f64, bound: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
