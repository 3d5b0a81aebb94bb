//! Free nilpotent Lie algebras on weighted generators and general graded
//! Lie algebras given by structure constants.

mod algebra;
mod element;
pub mod hall;

pub use algebra::{GradedLieAlgebra, JacobiViolation};
pub use element::LieElement;
pub use hall::{witt_dim, HallBasis, HallWord};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("class bound must be at least 1")]
    ZeroClass,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has weight {weight}; weights must be <= -1")]
    InvalidWeight { name: String, weight: i64 },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A generator of a free Lie algebra together with its (negative) weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: i64) -> Self {
        Generator {
            name: name.into(),
            weight,
        }
    }
}

/// Bracketing tree over generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieTree {
    Generator(usize),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn bracket(left: LieTree, right: LieTree) -> Self {
        LieTree::Bracket(Box::new(left), Box::new(right))
    }

    pub fn degree(&self) -> usize {
        match self {
            LieTree::Generator(_) => 1,
            LieTree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            LieTree::Generator(g) => names[*g].clone(),
            LieTree::Bracket(a, b) => format!("[{},{}]", a.render(names), b.render(names)),
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Generator(g) => write!(f, "x{g}"),
            LieTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Free nilpotent Lie algebra of class `class_bound` on the given generators,
/// with structure constants in the Hall basis.
pub fn build_free(generators: &[Generator], class_bound: usize) -> Result<GradedLieAlgebra, LieError> {
    GradedLieAlgebra::free(generators, class_bound)
}
