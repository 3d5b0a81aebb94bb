//! Cosimplicial algebras and the Alexander–Whitney cup product.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::space::CosimplicialSpace;
use super::CosimplicialError;
use crate::linalg::rational::{axpy, to_dense, Rational, SparseVec};
use crate::linalg::Matrix;

/// Multiplication on one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelProduct {
    /// Coordinatewise product; the unit is the all-ones vector.
    Pointwise,
    /// Structure constants `e_a e_b` with an explicit unit.
    Table {
        products: BTreeMap<(usize, usize), SparseVec>,
        unit: Vec<Rational>,
    },
}

impl LevelProduct {
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        match self {
            LevelProduct::Pointwise => u.iter().zip(v).map(|(a, b)| a * b).collect(),
            LevelProduct::Table { products, .. } => {
                let mut acc = SparseVec::new();
                for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        if let Some(p) = products.get(&(a, b)) {
                            axpy(&mut acc, &(x * y), p);
                        }
                    }
                }
                to_dense(&acc, u.len())
            }
        }
    }

    pub fn unit(&self, dim: usize) -> Vec<Rational> {
        match self {
            LevelProduct::Pointwise => vec![Rational::one(); dim],
            LevelProduct::Table { unit, .. } => unit.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosimplicialAlgebra {
    space: CosimplicialSpace,
    products: Vec<LevelProduct>,
}

impl CosimplicialAlgebra {
    pub fn new(space: CosimplicialSpace, products: Vec<LevelProduct>) -> Result<Self, CosimplicialError> {
        if products.len() != space.top() + 1 {
            return Err(CosimplicialError::Shape("one product per level is required".into()));
        }
        Ok(CosimplicialAlgebra { space, products })
    }

    /// Levelwise pointwise product on every level.
    pub fn pointwise(space: CosimplicialSpace) -> Self {
        let products = vec![LevelProduct::Pointwise; space.top() + 1];
        CosimplicialAlgebra { space, products }
    }

    /// Constant object on the algebra `Q^k` with pointwise product.
    pub fn constant(k: usize, top: usize) -> Self {
        Self::pointwise(CosimplicialSpace::constant(k, top))
    }

    pub fn space(&self) -> &CosimplicialSpace {
        &self.space
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn product(&self, n: usize) -> &LevelProduct {
        &self.products[n]
    }

    pub fn multiply(&self, n: usize, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.products[n].multiply(u, v)
    }

    pub fn unit(&self, n: usize) -> Vec<Rational> {
        self.products[n].unit(self.space.dim(n))
    }

    /// Names of failed algebra checks: unit laws, associativity on basis
    /// triples, and multiplicativity of every structure map.
    pub fn algebra_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let c = &self.space;
        for n in 0..=c.top() {
            if let LevelProduct::Table { products, unit } = &self.products[n] {
                let dim = c.dim(n);
                if unit.len() != dim || products.keys().any(|&(a, b)| a >= dim || b >= dim) {
                    out.push(format!("level {n}: product table has the wrong shape"));
                    continue;
                }
                let e = |i: usize| -> Vec<Rational> { to_dense(&[(i, Rational::one())].into_iter().collect(), dim) };
                for a in 0..dim {
                    if self.multiply(n, unit, &e(a)) != e(a) || self.multiply(n, &e(a), unit) != e(a) {
                        out.push(format!("level {n}: unit law fails on basis element {a}"));
                    }
                    for b in 0..dim {
                        let ab = self.multiply(n, &e(a), &e(b));
                        for z in 0..dim {
                            if self.multiply(n, &ab, &e(z)) != self.multiply(n, &e(a), &self.multiply(n, &e(b), &e(z))) {
                                out.push(format!("level {n}: associativity fails on ({a},{b},{z})"));
                            }
                        }
                    }
                }
            }
        }
        for n in 0..c.top() {
            for i in 0..=n + 1 {
                if !self.is_multiplicative(c.coface(n, i), n, n + 1) {
                    out.push(format!("coface d^{i} at level {n} is not multiplicative"));
                }
            }
        }
        for n in 1..=c.top() {
            for j in 0..n {
                if !self.is_multiplicative(c.codegeneracy(n, j), n, n - 1) {
                    out.push(format!("codegeneracy s^{j} at level {n} is not multiplicative"));
                }
            }
        }
        out
    }

    fn is_multiplicative(&self, f: &Matrix, from: usize, to: usize) -> bool {
        let dim = self.space.dim(from);
        if f.apply(&self.unit(from)) != self.unit(to) {
            return false;
        }
        let columns: Vec<Vec<Rational>> = (0..dim).map(|a| f.column(a)).collect();
        match (&self.products[from], &self.products[to]) {
            (LevelProduct::Pointwise, LevelProduct::Pointwise) => {
                // idempotent columns with disjoint supports
                let mut seen = std::collections::BTreeSet::new();
                columns.iter().all(|col| {
                    col.iter().enumerate().all(|(r, x)| {
                        x.is_zero() || (x.is_one() && seen.insert(r))
                    })
                })
            }
            _ => {
                let e = |i: usize| -> Vec<Rational> { to_dense(&[(i, Rational::one())].into_iter().collect(), dim) };
                (0..dim).all(|a| {
                    (0..dim).all(|b| {
                        f.apply(&self.multiply(from, &e(a), &e(b))) == self.multiply(to, &columns[a], &columns[b])
                    })
                })
            }
        }
    }

    /// Alexander–Whitney product of an `n`-cochain and an `m`-cochain:
    /// the front face `d^{n+m} ... d^{n+1} u` times the back face
    /// `(d^0)^n v` at level `n + m`.
    pub fn aw_cup(&self, n: usize, u: &[Rational], m: usize, v: &[Rational]) -> Result<Vec<Rational>, CosimplicialError> {
        let c = &self.space;
        if n + m > c.top() {
            return Err(CosimplicialError::LevelOutOfRange { level: n + m, top: c.top() });
        }
        if u.len() != c.dim(n) || v.len() != c.dim(m) {
            return Err(CosimplicialError::Shape("cochain length does not match its level".into()));
        }
        let mut front = u.to_vec();
        for k in n..n + m {
            front = c.coface(k, k + 1).apply(&front);
        }
        let mut back = v.to_vec();
        for k in m..m + n {
            back = c.coface(k, 0).apply(&back);
        }
        Ok(self.multiply(n + m, &front, &back))
    }

    /// Moore differential applied to an `n`-cochain.
    pub fn delta(&self, n: usize, u: &[Rational]) -> Result<Vec<Rational>, CosimplicialError> {
        if n >= self.top() {
            return Err(CosimplicialError::LevelOutOfRange { level: n + 1, top: self.top() });
        }
        Ok(self.space.differential(n).apply(u))
    }

    /// Leibniz defect `δ(u∪v) - δu∪v - (-1)^n u∪δv`; zero when the rule holds.
    pub fn leibniz_defect(&self, n: usize, u: &[Rational], m: usize, v: &[Rational]) -> Result<Vec<Rational>, CosimplicialError> {
        let lhs = self.delta(n + m, &self.aw_cup(n, u, m, v)?)?;
        let a = self.aw_cup(n + 1, &self.delta(n, u)?, m, v)?;
        let b = self.aw_cup(n, u, m + 1, &self.delta(m, v)?)?;
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        let out = lhs
            .iter()
            .zip(a.iter().zip(&b))
            .map(|(l, (x, y))| l - x - &sign * y)
            .collect();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, to_sparse};

    #[test]
    fn constant_algebra_units() {
        let a = CosimplicialAlgebra::constant(2, 4);
        assert!(a.algebra_violations().is_empty());
        let v = vec![int(3), int(-1)];
        assert_eq!(a.aw_cup(0, &a.unit(0), 2, &v).unwrap(), v);
        assert_eq!(a.aw_cup(2, &v, 0, &a.unit(0)).unwrap(), v);
        assert!(matches!(a.aw_cup(3, &v, 2, &v), Err(CosimplicialError::LevelOutOfRange { level: 5, top: 4 })));
    }

    #[test]
    fn table_product_checks() {
        // Q[e]/(e^2) at every level with identity maps
        let products = BTreeMap::from([
            ((0, 0), to_sparse(&[int(1), int(0)])),
            ((0, 1), to_sparse(&[int(0), int(1)])),
            ((1, 0), to_sparse(&[int(0), int(1)])),
        ]);
        let level = LevelProduct::Table {
            products,
            unit: vec![int(1), int(0)],
        };
        let a = CosimplicialAlgebra::new(CosimplicialSpace::constant(2, 2), vec![level; 3]).unwrap();
        assert!(a.algebra_violations().is_empty());
        let e = vec![int(0), int(1)];
        assert!(a.multiply(0, &e, &e).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn non_multiplicative_map_flagged() {
        let mut s = CosimplicialSpace::constant(2, 1);
        *s.coface_mut(0, 0) = Matrix::from_i64_rows(&[&[1, 1], &[0, 0]]);
        let a = CosimplicialAlgebra::pointwise(s);
        assert!(a.algebra_violations().iter().any(|v| v.contains("d^0")));
    }
}
