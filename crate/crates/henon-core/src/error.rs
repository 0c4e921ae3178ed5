use thiserror::Error;

/// Errors produced by the numerical routines.
///
/// `Domain` marks invalid inputs; the remaining variants mark numerical
/// failures (a bracket that never straddles, an integrator that underflows
/// its step size, a quadrature that stops converging).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bracketing failure: {0}")]
    Bracket(String),
    #[error("integration failure: {0}")]
    Integration(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

impl Error {
    /// True for invalid-input errors, false for numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn bracket(msg: impl Into<String>) -> Error {
    Error::Bracket(msg.into())
}

pub(crate) fn integration(msg: impl Into<String>) -> Error {
    Error::Integration(msg.into())
}
