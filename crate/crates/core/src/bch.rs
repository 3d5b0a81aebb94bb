//! The group `exp(g)` of a nilpotent Lie algebra: rational points with the
//! truncated Baker–Campbell–Hausdorff product.
//!
//! The product is evaluated from Dynkin's series: every word `w` over
//! `{x, y}` contributes `c_w / |w|` times its right-normed bracket
//! `[w_1, [w_2, ..., w_n]]`, where `c_w` is the coefficient of `w` in
//! `log(exp x exp y)`. Nested brackets are memoized by suffix.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::{GradedLieAlgebra, LieElement, LieError};
use crate::linalg::rational::{axpy, Rational, SparseVec};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BchError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("homomorphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("map sends basis element {0} outside its degree")]
    NotDegreePreserving(usize),
    #[error("map does not respect the bracket of basis elements {0} and {1}")]
    NotHomomorphism(usize, usize),
}

/// Letters of a BCH word: `false` is `x`, `true` is `y`.
type Word = Vec<bool>;

/// Dynkin coefficients of `log(exp x exp y)` through a fixed degree.
#[derive(Clone, Debug)]
pub struct DynkinSeries {
    class_bound: usize,
    terms: Vec<(Word, Rational)>,
}

impl DynkinSeries {
    pub fn new(class_bound: usize) -> Self {
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
        let factorials: Vec<BigInt> = (0..=class_bound)
            .scan(BigInt::one(), |f, i| {
                if i > 0 {
                    *f *= BigInt::from(i);
                }
                Some(f.clone())
            })
            .collect();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        expand(class_bound, &factorials, &mut stack, &mut acc);

        let terms = acc
            .into_iter()
            .filter(|(w, c)| {
                // right-normed brackets vanish when the innermost pair repeats
                !c.is_zero() && !(w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2])
            })
            .collect();
        DynkinSeries { class_bound, terms }
    }

    pub fn class_bound(&self) -> usize {
        self.class_bound
    }

    /// Words (as `x`/`y` strings) with their coefficients, including the
    /// `1/|w|` factor.
    pub fn terms(&self) -> impl Iterator<Item = (String, &Rational)> {
        self.terms.iter().map(|(w, c)| {
            (w.iter().map(|&b| if b { 'y' } else { 'x' }).collect(), c)
        })
    }

    /// `log(exp x exp y)` in `alg`, truncated at the algebra's class bound.
    pub fn evaluate(&self, alg: &GradedLieAlgebra, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
        alg.owns(x)?;
        alg.owns(y)?;
        let mut memo: HashMap<Word, SparseVec> = HashMap::new();
        let mut out = SparseVec::new();
        for (w, c) in &self.terms {
            if w.len() > alg.class_bound() {
                continue;
            }
            let v = right_normed(alg, x.coeffs(), y.coeffs(), w, &mut memo);
            axpy(&mut out, c, &v);
        }
        Ok(alg.element(out))
    }
}

/// Enumerates sequences `(r_1, s_1), ..., (r_k, s_k)` with `r_i + s_i >= 1`
/// and total length at most `n_max`, accumulating
/// `(-1)^(k-1) / (k * |w| * prod r_i! s_i!)` on the word `x^r1 y^s1 ...`.
fn expand(n_max: usize, fact: &[BigInt], stack: &mut Vec<(usize, usize)>, acc: &mut BTreeMap<Word, Rational>) {
    let used: usize = stack.iter().map(|(r, s)| r + s).sum();
    if !stack.is_empty() {
        let k = stack.len();
        let n = used;
        let mut denom = BigInt::from(k) * BigInt::from(n);
        for &(r, s) in stack.iter() {
            denom *= &fact[r] * &fact[s];
        }
        let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let c = Rational::new(sign, denom);
        let word: Word = stack
            .iter()
            .flat_map(|&(r, s)| std::iter::repeat(false).take(r).chain(std::iter::repeat(true).take(s)))
            .collect();
        let e = acc.entry(word).or_insert_with(Rational::zero);
        *e += c;
    }
    for total in 1..=(n_max - used) {
        for r in 0..=total {
            stack.push((r, total - r));
            expand(n_max, fact, stack, acc);
            stack.pop();
        }
    }
}

fn right_normed(
    alg: &GradedLieAlgebra,
    x: &SparseVec,
    y: &SparseVec,
    w: &[bool],
    memo: &mut HashMap<Word, SparseVec>,
) -> SparseVec {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let head = if w[0] { y } else { x };
    let v = if w.len() == 1 {
        head.clone()
    } else {
        let tail = right_normed(alg, x, y, &w[1..], memo);
        alg.bracket_sparse(head, &tail)
    };
    memo.insert(w.to_vec(), v.clone());
    v
}

/// `log(exp x · exp y)` truncated at the class bound of `alg`.
pub fn bch(alg: &GradedLieAlgebra, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    DynkinSeries::new(alg.class_bound()).evaluate(alg, x, y)
}

/// Group inverse in `exp(g)`: the negated logarithm.
pub fn group_inverse(x: &LieElement) -> LieElement {
    -x
}

/// A rational point of `exp(g)`, stored by its logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement(LieElement);

impl GroupElement {
    pub fn from_log(x: LieElement) -> Self {
        GroupElement(x)
    }

    pub fn log(&self) -> &LieElement {
        &self.0
    }

    pub fn into_log(self) -> LieElement {
        self.0
    }
}

/// The unipotent group `exp(g)` attached to a nilpotent graded Lie algebra.
pub struct UnipotentGroup<'a> {
    algebra: &'a GradedLieAlgebra,
    series: DynkinSeries,
}

impl<'a> UnipotentGroup<'a> {
    pub fn new(algebra: &'a GradedLieAlgebra) -> Self {
        UnipotentGroup {
            algebra,
            series: DynkinSeries::new(algebra.class_bound()),
        }
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        self.algebra
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.algebra.zero())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, LieError> {
        Ok(GroupElement(self.series.evaluate(self.algebra, &g.0, &h.0)?))
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        GroupElement(group_inverse(&g.0))
    }

    /// Commutator `g h g^-1 h^-1`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, LieError> {
        let gh = self.mul(g, h)?;
        let gi_hi = self.mul(&self.inverse(g), &self.inverse(h))?;
        self.mul(&gh, &gi_hi)
    }
}

/// A degree-preserving Lie algebra homomorphism between graded Lie
/// algebras, given by its matrix on the bases.
#[derive(Clone, Debug)]
pub struct LieHom {
    source: u64,
    target: u64,
    target_dim: usize,
    matrix: Matrix,
}

impl LieHom {
    /// Validates the matrix: shape, degree preservation, and
    /// `f[e_i, e_j] = [f e_i, f e_j]` on all basis pairs.
    pub fn new(source: &GradedLieAlgebra, target: &GradedLieAlgebra, matrix: Matrix) -> Result<Self, BchError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(BchError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.dim(),
                expected_cols: source.dim(),
            });
        }
        for (i, j, _) in matrix.entries() {
            if target.degree(i) != source.degree(j) {
                return Err(BchError::NotDegreePreserving(j));
            }
        }
        let columns: Vec<SparseVec> = (0..source.dim())
            .map(|j| crate::linalg::rational::to_sparse(&matrix.column(j)))
            .collect();
        for a in 0..source.dim() {
            for b in (a + 1)..source.dim() {
                let lhs = matrix.apply_sparse(&source.bracket_basis(a, b));
                let rhs = target.bracket_sparse(&columns[a], &columns[b]);
                if lhs != rhs {
                    return Err(BchError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(LieHom {
            source: source.id(),
            target: target.id(),
            target_dim: target.dim(),
            matrix,
        })
    }

    pub fn identity(alg: &GradedLieAlgebra) -> Self {
        LieHom {
            source: alg.id(),
            target: alg.id(),
            target_dim: alg.dim(),
            matrix: Matrix::identity(alg.dim()),
        }
    }

    pub fn zero(source: &GradedLieAlgebra, target: &GradedLieAlgebra) -> Self {
        LieHom {
            source: source.id(),
            target: target.id(),
            target_dim: target.dim(),
            matrix: Matrix::zeros(target.dim(), source.dim()),
        }
    }

    /// The abelian quotient `L -> L / [L, L]` onto an abelian algebra on the
    /// same generators.
    pub fn abelianization(source: &GradedLieAlgebra) -> Result<(GradedLieAlgebra, LieHom), BchError> {
        let target = GradedLieAlgebra::abelian(source.generators(), source.class_bound())?;
        let mut m = Matrix::zeros(target.dim(), source.dim());
        for i in source.degree_range(1) {
            m.set(i, i, Rational::one());
        }
        let hom = LieHom::new(source, &target, m)?;
        Ok((target, hom))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &LieElement) -> Result<SparseVec, LieError> {
        if x.algebra_id() != self.source {
            return Err(LieError::AlgebraMismatch);
        }
        Ok(self.matrix.apply_sparse(x.coeffs()))
    }

    /// Image of a Lie element as an element of `target`.
    pub fn apply_in(&self, target: &GradedLieAlgebra, x: &LieElement) -> Result<LieElement, LieError> {
        if target.id() != self.target {
            return Err(LieError::AlgebraMismatch);
        }
        debug_assert_eq!(target.dim(), self.target_dim);
        Ok(target.element(self.apply(x)?))
    }
}

/// `exp(f)`: the induced homomorphism of unipotent groups.
pub fn push_forward(hom: &LieHom, target: &GradedLieAlgebra, g: &GroupElement) -> Result<GroupElement, LieError> {
    Ok(GroupElement::from_log(hom.apply_in(target, g.log())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_free, Generator};
    use crate::linalg::rat;

    fn free(n: usize) -> GradedLieAlgebra {
        build_free(&[Generator::new("x", -1), Generator::new("y", -1)], n).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let l = free(4);
        let x = &l.generator("x").unwrap() + &l.basis_element(3).scaled(&rat(2, 3));
        assert_eq!(bch(&l, &x, &l.zero()).unwrap(), x);
        assert_eq!(bch(&l, &l.zero(), &x).unwrap(), x);
        assert!(bch(&l, &x, &group_inverse(&x)).unwrap().is_zero());
        assert!(group_inverse(&l.zero()).is_zero());
    }

    #[test]
    fn class_two_and_three_formulas() {
        let l = free(2);
        let (x, y) = (l.generator("x").unwrap(), l.generator("y").unwrap());
        assert_eq!(l.format(&bch(&l, &x, &y).unwrap()), "x + y + 1/2 [x,y]");
        let l = free(3);
        let (x, y) = (l.generator("x").unwrap(), l.generator("y").unwrap());
        assert_eq!(
            l.format(&bch(&l, &x, &y).unwrap()),
            "x + y + 1/2 [x,y] + 1/12 [x,[x,y]] - 1/12 [y,[x,y]]"
        );
    }

    #[test]
    fn commuting_elements_add() {
        let l = free(4);
        let x = l.generator("x").unwrap();
        let x2 = x.scaled(&rat(-7, 3));
        assert_eq!(bch(&l, &x, &x2).unwrap(), &x + &x2);
    }

    #[test]
    fn mismatch_is_reported() {
        let a = free(2);
        let b = free(2);
        assert_eq!(
            bch(&a, &a.generator("x").unwrap(), &b.generator("y").unwrap()).unwrap_err(),
            LieError::AlgebraMismatch
        );
    }

    #[test]
    fn homomorphism_checks() {
        let l = free(3);
        let id = LieHom::identity(&l);
        let g = GroupElement::from_log(l.generator("y").unwrap());
        assert_eq!(push_forward(&id, &l, &g).unwrap(), g);

        let zero = LieHom::zero(&l, &l);
        assert!(push_forward(&zero, &l, &g).unwrap().log().is_zero());

        // swapping generators without adjusting brackets is not a homomorphism
        let mut m = Matrix::identity(l.dim());
        m.set(0, 0, Rational::zero());
        m.set(1, 1, Rational::zero());
        m.set(0, 1, Rational::one());
        m.set(1, 0, Rational::one());
        assert!(matches!(LieHom::new(&l, &l, m), Err(BchError::NotHomomorphism(_, _))));

        let mut m = Matrix::zeros(l.dim(), l.dim());
        m.set(2, 0, Rational::one());
        assert_eq!(LieHom::new(&l, &l, m).unwrap_err(), BchError::NotDegreePreserving(0));
    }

    #[test]
    fn abelianization_kills_brackets() {
        let l = free(4);
        let (ab, hom) = LieHom::abelianization(&l).unwrap();
        let x = &l.generator("x").unwrap() + &l.basis_element(2);
        let y = l.generator("y").unwrap().scaled(&rat(1, 2));
        let pushed = hom.apply_in(&ab, &bch(&l, &x, &y).unwrap()).unwrap();
        let expected = &hom.apply_in(&ab, &x).unwrap() + &hom.apply_in(&ab, &y).unwrap();
        assert_eq!(pushed, expected);
        assert_eq!(ab.format(&pushed), "x + 1/2 y");
    }
}
