use thiserror::Error;

/// Errors raised by the force computations and their supporting kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: imaginary frequency and in-plane wavenumber are both zero")]
    DegenerateWavevector,

    #[error("singular cavity denominator ({0:e})")]
    Singular(f64),

    #[error("integrand returned a non-finite value at x = {0:e}")]
    NonFinite(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("UV-divergent frequency integral: {0}")]
    UvDivergent(String),

    #[error("dilute-medium consistency violated: |n^2 - 1 - 4 pi N alpha| = {deviation:e} at xi = {xi:e} (tolerance {tolerance:e})")]
    DiluteInconsistent { xi: f64, deviation: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
