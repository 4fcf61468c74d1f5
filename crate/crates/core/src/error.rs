use thiserror::Error;

/// Errors raised by the series, distribution and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {name} = {value} ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("iteration limit: no truncation order up to {limit} meets tolerance {eps:e}")]
    IterationLimit { limit: usize, eps: f64 },

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            requirement: "must be positive and finite",
        })
    }
}
