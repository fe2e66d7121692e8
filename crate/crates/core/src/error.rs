use thiserror::Error;

/// Errors shared across the crate.
///
/// Basis indices in displayed messages are 1-based, matching the JSON
/// algebra format and the report output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The right Leibniz identity fails on a basis triple. Indices are
    /// 1-based positions of (x, y, z) in [x,[y,z]] = [[x,y],z] - [[x,z],y].
    #[error("Leibniz identity fails on basis triple ({i}, {j}, {k})")]
    IdentityViolation { i: usize, j: usize, k: usize },

    #[error("invalid algebra data: {0}")]
    InvalidData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A construction's structural hypothesis does not hold for the input.
    #[error("hypothesis {which} violated: {detail}")]
    HypothesisViolated { which: String, detail: String },

    /// The symbolic certificate path is gated on ambient dimension.
    #[error("symbolic certificate supports dimension at most {max}, got {got}")]
    CapabilityBound { max: usize, got: usize },
}

impl Error {
    pub fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::InvalidData(msg.into())
    }

    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn hypothesis(which: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::HypothesisViolated {
            which: which.into(),
            detail: detail.into(),
        }
    }
}
