use thiserror::Error;

use crate::zeta::ComplexDimension;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input lies outside the mathematical domain of the operation
    /// (zero valuation input, p dividing a denominator, divergent region, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed or inconsistent argument (non-prime, bad kept set, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("evaluation too close to the pole at {nearest}")]
    Pole { nearest: ComplexDimension },

    /// The tube series converges to the jump midpoint at these scales, not to
    /// the volume.
    #[error("epsilon = {eps} sits on a jump point of the volume function")]
    JumpPoint { eps: f64 },

    #[error("resource limit: {what} (largest feasible depth: {advisory})")]
    Resource { what: String, advisory: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
