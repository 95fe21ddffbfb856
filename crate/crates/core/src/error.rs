//! Crate-wide error type.

/// Errors raised by grid, sewing, algebra and rough-path operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A grid was supplied at a different refinement level than required.
    #[error("grid level mismatch: expected level {expected}, got {got}")]
    LevelMismatch { expected: u32, got: u32 },

    /// The control-function envelope series diverges for this `k0`.
    #[error(
        "control envelope series diverges for k0 = {k0} (exponent {gamma}): \
         requires k0 > 1/gamma and k0 >= 2"
    )]
    NonConvergent { k0: u32, gamma: f64 },

    /// Riemann refinements are not contracting at the claimed rate; the
    /// coherence exponent is likely not above 1.
    #[error(
        "refinement sequence not contracting at gamma = {gamma}: \
         step {step} moved by {observed:.3e}, allowed {allowed:.3e}"
    )]
    NotConverging {
        gamma: f64,
        step: u32,
        observed: f64,
        allowed: f64,
    },

    /// A word operation left the configured truncation window.
    #[error("word degree {degree} exceeds truncation level {max}")]
    TruncationExceeded { degree: usize, max: usize },

    /// `1/alpha` is an integer, so the top level sits exactly at exponent 1,
    /// outside the Hölder-scale construction.  Perturb `alpha` slightly.
    #[error(
        "1/alpha = {inverse} is an integer; the boundary level has exponent \
         exactly 1 and is not covered — perturb alpha"
    )]
    AlphaReciprocalInteger { inverse: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed CSV input.
    #[error("csv error at record {record}: {message}")]
    Csv { record: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn csv(record: usize, message: impl Into<String>) -> Self {
        Error::Csv {
            record,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
