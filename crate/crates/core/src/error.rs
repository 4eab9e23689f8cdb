use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("matrix determinant {det} is not 1 (|det - 1| = {deviation:e})")]
    NotUnimodular { det: String, deviation: f64 },

    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    InvalidBracket { lo: f64, hi: f64, reason: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
}
