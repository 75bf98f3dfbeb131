use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The truncation tail could not be driven below the requested tolerance.
    #[error("precision unreachable: achieved bound {achieved:e} > target {target:e}")]
    PrecisionUnreachable { achieved: f64, target: f64 },

    /// Exact computations are capped to keep factorials and coefficients small.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An exact certificate could not be produced.
    #[error("certificate failure: {0}")]
    CertificateFailure(String),

    #[error("manifest error: {0}")]
    Manifest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
