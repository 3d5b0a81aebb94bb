//! Weights from Frobenius data: Weil-norm classification, weight
//! decompositions of graded pieces, and the weight filtration.

mod classify;
mod decomposition;
mod filtration;
pub mod roots;

use thiserror::Error;

pub use classify::{
    separation_limit, weil_classify, ClassifiedFactor, WeightClass, WeilClassifier, DEFAULT_MAX_WEIGHT, DEFAULT_TOLERANCE,
};
pub use decomposition::{
    check_bracket_additivity, companion, frobenius_weight_decomposition, graded_decomposition, AdditivityReport,
    AdditivityViolation, FactorRow, FrobeniusAction, WeightDecomposition,
};
pub use filtration::{
    check_splitting, purity_report, weight_filtration, PurityReport, PurityRow, SplitRow, SplittingReport, WeightFiltration,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("q = {0} is not a prime power")]
    InvalidQ(u64),
    #[error("tolerance {0} must be a positive real")]
    InvalidTolerance(f64),
    #[error("tolerance {tol} cannot separate adjacent half-integer weights (needs < {limit:.6})")]
    ToleranceTooLarge { tol: f64, limit: f64 },
    #[error("{0}")]
    Shape(String),
    #[error("Frobenius block {0} is not invertible")]
    NotInvertible(usize),
    #[error("Frobenius does not commute with the bracket of basis elements {0} and {1}")]
    NotBracketCompatible(usize, usize),
    #[error("factor {0} has roots of different absolute values")]
    NotPure(String),
    #[error("cannot assign weights to the roots of {0} at this tolerance")]
    Inconclusive(String),
    #[error("K lives in a {ambient}-dimensional space but degree one has dimension {degree_one}")]
    KNotInDegreeOne { ambient: usize, degree_one: usize },
}
