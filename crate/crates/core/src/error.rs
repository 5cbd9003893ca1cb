use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An interval with `lo > hi` or a NaN endpoint.
    #[error("invalid interval ({lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    /// Measure construction rejected its parameters.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// Quantile requested strictly inside the refused band near 0 or 1 for a
    /// family without a closed-form inverse.
    #[error("quantile {p:e} lies inside the refused band of width {band:e}")]
    QuantileOutOfBand { p: f64, band: f64 },

    /// A set whose measure is 0 or 1 within tolerance.
    #[error("degenerate set: measure {mu} is within {tol:e} of 0 or 1")]
    DegenerateMeasure { mu: f64, tol: f64 },

    /// Arguments outside the feasible region of an operation.
    #[error("arguments ({x}, {y}) violate {constraint}")]
    OutOfDomain {
        x: f64,
        y: f64,
        constraint: &'static str,
    },

    /// Brute-force enumeration produced no set in the requested bin.
    #[error("no enumerated set fell in the bin at (m={m}, lambda={lambda})")]
    EmptyBin { m: f64, lambda: f64 },

    /// An internal mathematical invariant failed; carries a diagnostic.
    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    /// Configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
