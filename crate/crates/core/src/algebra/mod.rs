//! Exact truncated multivariate formal power series over the Gaussian
//! rationals.

mod format;
pub mod linalg;
mod multiindex;
mod scalar;
mod series;

pub use multiindex::Multiindex;
pub(crate) use multiindex::{binomial, factorial};
pub use scalar::Scalar;
pub use series::{Series, Vars};

use thiserror::Error;

/// Failures of the series kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("variable-list mismatch: [{left}] vs [{right}]")]
    VarMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("known order exhausted: {0}")]
    OrderExhausted(String),
    #[error("substituted series has a nonzero constant term")]
    NonzeroConstant,
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("degenerate linear part: dF/dy(0) = 0")]
    Degenerate,
    #[error("series does not vanish at the origin")]
    NotZeroAtOrigin,
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("series depends on dropped variable `{0}`")]
    DependsOn(String),
    #[error("malformed series record: {0}")]
    Format(String),
}
