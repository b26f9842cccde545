//! Error type shared by all pricing-engine modules.

use std::fmt;

/// Errors surfaced by the pricing engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation
    /// (branch cuts, validity half-planes, parameter bands).
    Domain(String),
    /// A series failed to meet its tolerance within its term cap.
    NonConvergence(String),
    /// Adaptive quadrature could not reach the requested tolerance.
    QuadratureFailure(String),
    /// The Bromwich inversion failed to stabilize.
    InversionFailure(String),
    /// Invalid user-supplied inputs (contract data, configuration).
    Validation(String),
    /// A computation produced a value that fails its own sanity checks
    /// (non-finite intermediate, negative price beyond tolerance).
    NumericalFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence(msg) => write!(f, "non-convergence: {msg}"),
            Error::QuadratureFailure(msg) => write!(f, "quadrature failure: {msg}"),
            Error::InversionFailure(msg) => write!(f, "inversion failure: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
