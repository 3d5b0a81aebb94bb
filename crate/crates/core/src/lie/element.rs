use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::LieError;
use crate::linalg::rational::{add_entry, axpy, scale, to_dense, Rational, SparseVec};

/// A sparse rational combination of basis elements of one specific
/// [`GradedLieAlgebra`](super::GradedLieAlgebra).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    algebra: u64,
    dim: usize,
    coeffs: SparseVec,
}

impl LieElement {
    pub(crate) fn new(algebra: u64, dim: usize, coeffs: SparseVec) -> Self {
        debug_assert!(coeffs.keys().all(|&k| k < dim));
        debug_assert!(coeffs.values().all(|v| !v.is_zero()));
        LieElement {
            algebra,
            dim,
            coeffs,
        }
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        to_dense(&self.coeffs, self.dim)
    }

    pub fn same_algebra(&self, other: &LieElement) -> Result<(), LieError> {
        if self.algebra != other.algebra {
            return Err(LieError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.same_algebra(other)?;
        let mut c = self.coeffs.clone();
        for (&i, v) in &other.coeffs {
            add_entry(&mut c, i, v.clone());
        }
        Ok(LieElement::new(self.algebra, self.dim, c))
    }

    pub fn checked_sub(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.checked_add(&-other)
    }

    pub fn scaled(&self, a: &Rational) -> LieElement {
        LieElement::new(self.algebra, self.dim, scale(&self.coeffs, a))
    }

    /// `self + a * other`.
    pub fn add_scaled(&mut self, a: &Rational, other: &LieElement) -> Result<(), LieError> {
        self.same_algebra(other)?;
        axpy(&mut self.coeffs, a, &other.coeffs);
        Ok(())
    }

    /// Keeps only the coordinates in `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> LieElement {
        let coeffs = self
            .coeffs
            .range(range)
            .map(|(&i, v)| (i, v.clone()))
            .collect();
        LieElement::new(self.algebra, self.dim, coeffs)
    }
}

impl Add for &LieElement {
    type Output = LieElement;

    /// Panics if the operands belong to different algebras.
    fn add(self, rhs: &LieElement) -> LieElement {
        self.checked_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        self.checked_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        let c = self.coeffs.iter().map(|(&i, v)| (i, -v.clone())).collect();
        LieElement::new(self.algebra, self.dim, c)
    }
}

impl Mul<&LieElement> for &Rational {
    type Output = LieElement;

    fn mul(self, rhs: &LieElement) -> LieElement {
        rhs.scaled(self)
    }
}
