use thiserror::Error;

/// Errors raised by parameter conversion and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("laser wavelength equals the atomic resonance: atom-laser detuning is zero")]
    ZeroDetuning,
    #[error("invalid fit window: {0}")]
    InvalidWindow(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
