//! Finite cosimplicial vector spaces and algebras over the rationals.

mod algebra;
mod bar;
pub mod cech;
mod space;

use thiserror::Error;

pub use algebra::{CosimplicialAlgebra, LevelProduct};
pub use bar::bar_complex;
pub use cech::{cech_build, CechInput};
pub use space::{
    cohomology, conormalize, hodge_filtration, is_subobject, moore_cohomology, verify_cosimplicial, Cohomology,
    ConormalizedComplex, CosimplicialSpace, IdentityReport, IdentityViolation,
};

/// Default top level for cochain computations.
pub const DEFAULT_LEVEL: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosimplicialError {
    #[error("a cosimplicial object needs at least level 0")]
    Empty,
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Schema(String),
    #[error("level {level} exceeds the top level {top}")]
    LevelOutOfRange { level: usize, top: usize },
    #[error("missing restriction map {from:?} -> {to:?}")]
    MissingRestriction { from: Vec<usize>, to: Vec<usize> },
    #[error("restriction maps into {0:?} do not compose consistently")]
    NonFunctorial(Vec<usize>),
}
