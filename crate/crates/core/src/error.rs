//! Shared error type for all computation modules.

use thiserror::Error;

/// Errors raised by domain computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A quantity that must be strictly positive was not.
    #[error("{field} must be positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    /// A quantity that must be non-negative was negative.
    #[error("{field} must be non-negative, got {value}")]
    NegativeValue { field: &'static str, value: f64 },

    /// A quantity that must be nonzero was zero.
    #[error("{field} must be nonzero")]
    ZeroValue { field: &'static str },

    /// A quantity that must be finite was NaN or infinite.
    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    /// A computation produced a non-finite intermediate or result.
    #[error("non-finite result in {context}")]
    NumericOverflow { context: &'static str },

    /// The volatility gradient is undefined where the revenue and
    /// expenditure deviations coincide; the value itself is still defined.
    #[error("gradient undefined at n_term == m_term; use vol_value instead")]
    NonDifferentiable,

    /// A logistic trajectory diverges before reaching the requested time.
    #[error("logistic solution diverges at t = {blow_up_time}")]
    Singularity { blow_up_time: f64 },

    /// An adaptive scheme exhausted its refinement budget.
    #[error("{context} did not converge to the requested tolerance")]
    NoConvergence { context: &'static str },

    /// Too few samples for a grid-based operation.
    #[error("{context} needs at least {min} samples, got {got}")]
    TooFewSamples {
        context: &'static str,
        min: usize,
        got: usize,
    },

    /// Sample grid is not strictly increasing.
    #[error("grid must be strictly increasing (violation at index {index})")]
    NonMonotonicGrid { index: usize },

    /// Paired sample vectors have different lengths.
    #[error("{context}: length mismatch ({left} vs {right})")]
    LengthMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { field, value });
    }
    if value <= 0.0 {
        return Err(Error::NonPositive { field, value });
    }
    Ok(())
}

pub(crate) fn ensure_non_negative(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { field, value });
    }
    if value < 0.0 {
        return Err(Error::NegativeValue { field, value });
    }
    Ok(())
}

pub(crate) fn ensure_finite(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { field, value });
    }
    Ok(())
}
