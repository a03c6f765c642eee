//! Error types shared across the exact-algebra layers.

use thiserror::Error;

/// Errors from symbolic-algebra operations.
#[derive(Debug, Error)]
pub enum AlgebraError {
    /// A coefficient kept a negative ħ power, so the ħ→0 limit does not
    /// exist.
    #[error("no classical limit: {0}")]
    NoClassicalLimit(String),
    /// The symbol's weight does not decay on the requested domain.
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    /// The integrand or domain descriptor is malformed (wrong homogeneity,
    /// unbound generators, unsupported exponent arithmetic).
    #[error("domain error: {0}")]
    Domain(String),
}

/// Errors from representation-level constructions (basis indices, parameter
/// ranges, state validity).
#[derive(Debug, Error)]
pub enum RepError {
    #[error("invalid basis index: {0}")]
    InvalidIndex(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A spectral decomposition against a diagonal operator did not close
    /// (defective candidate set or singular interpolation system).
    #[error("ill-conditioned spectral decomposition: {0}")]
    IllConditioned(String),
    /// The input lies outside the admissible symbol class of the operation
    /// (e.g. a radius-dependent integrand in the surface-weighted pairing).
    #[error("inadmissible symbol: {0}")]
    Inadmissible(String),
    /// A finite-rank reconstruction could not represent the input exactly.
    #[error("truncation: {0}")]
    Truncation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
