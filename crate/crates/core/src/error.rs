use thiserror::Error;

/// Errors raised by model construction, pricing kernels and the FFT layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("model assumptions violated: {0}")]
    AssumptionViolated(String),

    #[error("characteristic exponent overflow: real part {real_part} exceeds {limit}")]
    ExponentOverflow { real_part: f64, limit: f64 },

    #[error("complex argument ({re}, {im}) of `{factor}` lies on or across the principal branch cut")]
    BranchCut { factor: &'static str, re: f64, im: f64 },

    #[error("FFT length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),

    #[error("log-strike {log_strike} outside the representable range |k| < {limit}")]
    StrikeOutOfRange { log_strike: f64, limit: f64 },

    #[error("tail condition failed: N*eta = {available} < truncation bound {required}")]
    TailCondition { required: f64, available: f64 },

    #[error("time to maturity {tau} is below the minimum {min}")]
    MaturityTooShort { tau: f64, min: f64 },

    #[error("operation `{operation}` is not defined for the {model} model")]
    ModelMismatch {
        operation: &'static str,
        model: &'static str,
    },

    #[error("quadrature failed to converge: estimate {estimate}, error {error_estimate} after {subdivisions} subdivisions")]
    QuadratureNoConvergence {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}
