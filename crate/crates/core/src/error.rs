use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid search instance: {0}")]
    InvalidInstance(String),

    #[error("{what} = {value} outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("norm drifted by {drift:e} during integration; reduce the step size")]
    NormDrift { drift: f64 },

    #[error("power iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid gauge: {0}")]
    InvalidGauge(String),

    #[error("exact identity is only claimed at unit schedule slack (got eps = {eps})")]
    IdentityRequiresUnitSlack { eps: f64 },

    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T: num_traits::ToPrimitive>(
    what: &'static str,
    value: T,
    domain: &'static str,
) -> Error {
    Error::Domain {
        what,
        value: value.to_f64().unwrap_or(f64::NAN),
        domain,
    }
}
