//! Subspaces of `Q^n` in canonical reduced row-echelon form.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::matrix::{rref_rows, Matrix};
use super::rational::{to_dense, to_sparse, Rational};
use super::LinalgError;

/// A linear subspace of `Q^ambient_dim`.
///
/// The stored basis is the nonzero part of the reduced row-echelon form of
/// any spanning set, so two equal subspaces always compare equal field by
/// field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `indices`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        let basis = set
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: set.into_iter().collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let rows = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ambient_dim, "vector length mismatch");
                to_sparse(v)
            })
            .collect();
        Self::from_sparse_rows(ambient_dim, rows)
    }

    pub fn span_sparse(ambient_dim: usize, vectors: Vec<super::rational::SparseVec>) -> Self {
        Self::from_sparse_rows(ambient_dim, vectors)
    }

    fn from_sparse_rows(ambient_dim: usize, rows: Vec<super::rational::SparseVec>) -> Self {
        let (echelon, pivots) = rref_rows(rows, true);
        Subspace {
            ambient_dim,
            basis: echelon.iter().map(|r| to_dense(r, ambient_dim)).collect(),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the matching unit vectors span a
    /// canonical complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let pivots: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ambient_dim).filter(|c| !pivots.contains(c)).collect()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis.len(), self.ambient_dim, &self.basis)
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies
    /// in the subspace. Supported only on free coordinates.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let a = out[p].clone();
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o -= &a * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, vectors))
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        self.to_matrix().kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Image under a linear map given by a matrix with `ambient_dim` columns.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "matrix/subspace mismatch");
        Subspace::span(m.rows(), self.basis.iter().map(|b| m.apply(b)).collect())
    }

    /// Preimage of `target` under the linear map `m`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Subspace {
        assert_eq!(m.rows(), target.ambient_dim, "matrix/subspace mismatch");
        // v in preimage iff ann(target) . m v = 0
        let ann = target.annihilator();
        if ann.is_zero() {
            return Subspace::full(m.cols());
        }
        ann.to_matrix().mul(m).kernel()
    }

    /// Places this subspace into a larger space at coordinate `offset`.
    pub fn embed(&self, offset: usize, total_dim: usize) -> Subspace {
        assert!(offset + self.ambient_dim <= total_dim, "embedding out of range");
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let mut v = vec![Rational::zero(); total_dim];
                v[offset..offset + self.ambient_dim].clone_from_slice(b);
                v
            })
            .collect();
        Subspace {
            ambient_dim: total_dim,
            basis,
            pivots: self.pivots.iter().map(|p| p + offset).collect(),
        }
    }

    /// Direct-sum check: whether the given subspaces are independent.
    pub fn independent(parts: &[&Subspace]) -> bool {
        let Some(first) = parts.first() else {
            return true;
        };
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        let vectors = parts.iter().flat_map(|p| p.basis.iter().cloned()).collect();
        Subspace::span(first.ambient_dim, vectors).dim() == total
    }

    /// Vectors extending a basis of `sub` (which must lie inside `self`) to a
    /// basis of `self`, chosen greedily from the echelon basis of `self`.
    pub fn complement_in(&self, sub: &Subspace) -> Vec<Vec<Rational>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                let mut vs = acc.basis.clone();
                vs.push(b.clone());
                acc = Subspace::span(self.ambient_dim, vs);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn equal_spans_have_identical_bases() {
        let a = Subspace::span(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[1, 2, 3])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_examples() {
        let e1 = Subspace::coordinate(2, [0]);
        let e2 = Subspace::coordinate(2, [1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let a = Subspace::span(4, vec![v(&[1, 0, 0, 1]), v(&[0, 1, 0, 1]), v(&[0, 0, 1, 1])]);
        let b = Subspace::span(4, vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
        assert!(i.dim() >= 2);
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(
            a.intersect(&b),
            Err(LinalgError::AmbientMismatch { left: 2, right: 3 })
        ));
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn coordinates_and_reduce() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let w = v(&[2, 5, 3]);
        let c = s.coordinates(&w).unwrap();
        let back: Vec<Rational> = (0..3)
            .map(|k| &c[0] * &s.basis()[0][k] + &c[1] * &s.basis()[1][k])
            .collect();
        assert_eq!(back, w);
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn complement_and_embedding() {
        let full = Subspace::full(3);
        let sub = Subspace::span(3, vec![v(&[1, 1, 1])]);
        let comp = full.complement_in(&sub);
        assert_eq!(comp.len(), 2);
        let e = sub.embed(2, 5);
        assert!(e.contains(&v(&[0, 0, 1, 1, 1])));
        assert_eq!(e.pivots(), &[2]);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let m = Matrix::from_i64_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(Subspace::preimage(&m, &Subspace::zero(2)), m.kernel());
        assert_eq!(Subspace::preimage(&m, &Subspace::full(2)), Subspace::full(3));
    }
}
