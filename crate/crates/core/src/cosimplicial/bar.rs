//! Homogeneous cochains of a finite cyclic group with rational
//! coefficients, as a cosimplicial algebra.

use super::algebra::CosimplicialAlgebra;
use super::space::CosimplicialSpace;
use super::CosimplicialError;
use crate::linalg::Matrix;

/// Invariant functions on `G^{n+1}` for `G = Z/order`, through level `top`.
/// A basis of level `n` is indexed by orbit representatives
/// `(0, x_1, ..., x_n)`.
pub fn bar_complex(order: usize, top: usize) -> Result<CosimplicialAlgebra, CosimplicialError> {
    if order == 0 {
        return Err(CosimplicialError::Schema("group order must be positive".into()));
    }
    let g = order;
    let dim = |n: usize| g.pow(n as u32);
    // index of the orbit of a tuple (y_0, ..., y_n)
    let index = |y: &[usize]| -> usize {
        y[1..]
            .iter()
            .fold(0, |acc, &x| acc * g + (x + g - y[0]) % g)
    };
    let tuple = |n: usize, mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; n + 1];
        for k in (1..=n).rev() {
            out[k] = idx % g;
            idx /= g;
        }
        out
    };

    let mut cofaces = Vec::new();
    for n in 0..top {
        let mut maps = Vec::new();
        for k in 0..=n + 1 {
            let mut m = Matrix::zeros(dim(n + 1), dim(n));
            for row in 0..dim(n + 1) {
                let mut y = tuple(n + 1, row);
                y.remove(k);
                m.set(row, index(&y), num_traits::One::one());
            }
            maps.push(m);
        }
        cofaces.push(maps);
    }
    let mut codegeneracies = vec![Vec::new()];
    for n in 1..=top {
        let mut maps = Vec::new();
        for j in 0..n {
            let mut m = Matrix::zeros(dim(n - 1), dim(n));
            for row in 0..dim(n - 1) {
                let mut y = tuple(n - 1, row);
                y.insert(j, y[j]);
                m.set(row, index(&y), num_traits::One::one());
            }
            maps.push(m);
        }
        codegeneracies.push(maps);
    }
    let space = CosimplicialSpace::new((0..=top).map(dim).collect(), cofaces, codegeneracies)?;
    Ok(CosimplicialAlgebra::pointwise(space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::{cohomology, verify_cosimplicial};

    #[test]
    fn finite_groups_are_acyclic() {
        for (order, m, expected) in [(2, 3, vec![1, 0, 0, 0]), (3, 2, vec![1, 0, 0])] {
            let a = bar_complex(order, m + 1).unwrap();
            assert!(verify_cosimplicial(a.space()).passed());
            assert!(a.algebra_violations().is_empty());
            assert_eq!(cohomology(a.space()).dims, expected);
        }
    }

    #[test]
    fn trivial_group_is_constant() {
        let a = bar_complex(1, 3).unwrap();
        assert_eq!(a.space(), &CosimplicialSpace::constant(1, 3));
    }

    #[test]
    fn order_zero_rejected() {
        assert!(bar_complex(0, 2).is_err());
    }
}
