use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown unit tag `{0}`")]
    UnknownUnit(String),

    #[error("invalid parameter {field}: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("domain error in {quantity} = {value}: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("singular parameters: {0}")]
    Singular(String),

    #[error("regime violation: {0}")]
    Regime(String),

    #[error("steady state is not unique (null space dimension {nullity})")]
    NonUniqueSteadyState { nullity: usize },

    #[error("integration failed at t = {t}: {reason} (dt = {dt})")]
    Integration { t: f64, dt: f64, reason: String },

    #[error("bound {bound} unreachable: requires lambda' >= {min_lambda_prime}")]
    UnreachableBound {
        bound: &'static str,
        min_lambda_prime: f64,
    },

    #[error("optimization failed: {0}")]
    Optimize(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            field,
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad input rather than by the numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::UnknownUnit(_) | Error::InvalidParams { .. })
    }
}
