//! Exact rational linear algebra: sparse matrices, canonical echelon
//! subspaces, and the rational scalar type used throughout the crate.

mod matrix;
pub mod rational;
mod subspace;

pub use matrix::Matrix;
pub use rational::{rat, Rational, SparseVec};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}
