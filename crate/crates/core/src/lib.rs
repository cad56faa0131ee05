//! Exact truncated formal power series toolkit for real analytic
//! hypersurfaces in complex space and formal CR maps between them.
//!
//! Everything is computed over the Gaussian rationals at a finite truncation
//! order; every verdict states the order it is certified at.

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod expr;
pub mod flows;
pub mod hypersurface;
pub mod manifest;
pub mod mapping;
pub mod segre;

use thiserror::Error;

pub use algebra::{Multiindex, Scalar, Series, SeriesError, Vars};
pub use expr::ParseError;
pub use hypersurface::{Coords, Hypersurface};
pub use mapping::FormalMap;

/// Errors raised by the geometric layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid hypersurface data: {0}")]
    InvalidHypersurface(String),
    #[error("reality violated: first mismatch at {0}")]
    NotReal(String),
    #[error("degenerate graph direction: {0}")]
    DegenerateGraph(String),
    #[error("input must be in normal coordinates")]
    NotNormal,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("map does not fix the origin")]
    NotAtOrigin,
    #[error("tangency violated: {0}")]
    NotTangent(String),
    #[error("order exhausted: {0}")]
    OrderExhausted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inconclusive at order {order}: {what}")]
    Inconclusive { order: u32, what: String },
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
