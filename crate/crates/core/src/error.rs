use thiserror::Error;

/// Errors raised by the inference engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {abs_error:e})"
    )]
    QuadratureFailure { estimate: f64, abs_error: f64, subdivisions: usize },

    #[error("no sign change on bracket [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not converge within {iterations} iterations")]
    RootNotConverged { iterations: usize },

    #[error("prior cannot be represented with tau >= 0: lambda * sigma0 = {lambda_sigma0:e} is below the interval mass {interval_mass:e}")]
    InfeasiblePrior { lambda_sigma0: f64, interval_mass: f64 },

    #[error("no tau >= 0 makes the post-data density continuous (lambda too small); residual at tau = 0 is {residual_at_zero:e}")]
    ContinuityUnattainable { residual_at_zero: f64 },

    #[error("region has zero mass: {0}")]
    ZeroMassRegion(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::QuadratureFailure { .. } | Error::NoSignChange { .. } | Error::RootNotConverged { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
