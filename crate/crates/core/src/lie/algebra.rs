use std::collections::{BTreeMap, HashSet};
use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Signed, Zero};

use super::hall::{HallBasis, Rewriter};
use super::{Generator, LieElement, LieError, LieTree};
use crate::linalg::rational::{axpy, fmt_rational, to_sparse, Rational, SparseVec};
use crate::linalg::Subspace;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// One basis vector of a graded Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: usize,
    pub weight: i64,
    /// Bracketing of generators representing this basis vector.
    pub tree: LieTree,
}

/// A failed Jacobi identity on basis elements `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: SparseVec,
}

/// Finite-dimensional positively graded Lie algebra of nilpotency class at
/// most `class_bound`, generated in degree 1.
///
/// Basis elements are sorted by degree; brackets landing in degree above the
/// class bound are zero. Each basis element also carries an integer weight.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    id: u64,
    class_bound: usize,
    generators: Vec<Generator>,
    elements: Vec<BasisElement>,
    offsets: Vec<usize>,
    /// `[e_i, e_j]` for `i < j`; absent means zero.
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

impl GradedLieAlgebra {
    pub(crate) fn free(generators: &[Generator], class_bound: usize) -> Result<Self, LieError> {
        if generators.is_empty() {
            return Err(LieError::NoGenerators);
        }
        if class_bound == 0 {
            return Err(LieError::ZeroClass);
        }
        let mut seen = HashSet::new();
        for g in generators {
            if !seen.insert(g.name.as_str()) {
                return Err(LieError::DuplicateGenerator(g.name.clone()));
            }
            if g.weight > -1 {
                return Err(LieError::InvalidWeight {
                    name: g.name.clone(),
                    weight: g.weight,
                });
            }
        }

        let k = generators.len();
        let hall = HallBasis::new(k, class_bound);
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let elements: Vec<BasisElement> = (0..hall.len())
            .map(|i| {
                let tree = hall.tree(i);
                let content = hall.content(i, k);
                let weight = content
                    .iter()
                    .zip(generators)
                    .map(|(&c, g)| c as i64 * g.weight)
                    .sum();
                BasisElement {
                    label: tree.render(&names),
                    degree: hall.degree(i),
                    weight,
                    tree,
                }
            })
            .collect();

        let mut rewriter = Rewriter::new(&hall);
        let mut brackets = BTreeMap::new();
        for i in 0..hall.len() {
            for j in (i + 1)..hall.len() {
                if hall.degree(i) + hall.degree(j) > class_bound {
                    break;
                }
                let b = rewriter.bracket(i, j);
                if !b.is_empty() {
                    brackets.insert((i, j), b);
                }
            }
        }

        Ok(GradedLieAlgebra {
            id: fresh_id(),
            class_bound,
            generators: generators.to_vec(),
            elements,
            offsets: hall.offsets().to_vec(),
            brackets,
        })
    }

    /// Assembles an algebra from explicit structure constants. `elements`
    /// must be sorted by degree and `brackets` keyed by `(i, j)` with `i < j`.
    pub(crate) fn from_parts(
        generators: Vec<Generator>,
        class_bound: usize,
        elements: Vec<BasisElement>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
    ) -> Self {
        let mut offsets = vec![0];
        for d in 1..=class_bound {
            let end = elements.iter().take_while(|e| e.degree <= d).count();
            offsets.push(end);
        }
        assert_eq!(*offsets.last().unwrap(), elements.len(), "elements exceed class bound");
        assert!(
            elements.windows(2).all(|w| w[0].degree <= w[1].degree),
            "elements must be sorted by degree"
        );
        GradedLieAlgebra {
            id: fresh_id(),
            class_bound,
            generators,
            elements,
            offsets,
            brackets,
        }
    }

    /// Abelian algebra on the given generators: only degree 1, all brackets zero.
    pub fn abelian(generators: &[Generator], class_bound: usize) -> Result<Self, LieError> {
        let free = GradedLieAlgebra::free(generators, 1)?;
        let elements = free.elements;
        Ok(GradedLieAlgebra::from_parts(
            generators.to_vec(),
            class_bound.max(1),
            elements,
            BTreeMap::new(),
        ))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn class_bound(&self) -> usize {
        self.class_bound
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].label
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elements[i].degree
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.elements[i].weight
    }

    pub fn tree(&self, i: usize) -> &LieTree {
        &self.elements[i].tree
    }

    /// Dimensions of the graded pieces in degrees `1..=class_bound`.
    pub fn degree_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Index range of the degree-`d` basis elements (empty outside `1..=N`).
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        if d == 0 || d > self.class_bound {
            return self.dim()..self.dim();
        }
        self.offsets[d - 1]..self.offsets[d]
    }

    pub fn zero(&self) -> LieElement {
        LieElement::new(self.id, self.dim(), SparseVec::new())
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut c = SparseVec::new();
        c.insert(i, Rational::one());
        LieElement::new(self.id, self.dim(), c)
    }

    pub fn element(&self, coeffs: SparseVec) -> LieElement {
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        LieElement::new(self.id, self.dim(), coeffs)
    }

    pub fn from_dense(&self, v: &[Rational]) -> LieElement {
        assert_eq!(v.len(), self.dim(), "coordinate vector has wrong length");
        LieElement::new(self.id, self.dim(), to_sparse(v))
    }

    pub fn generator(&self, name: &str) -> Result<LieElement, LieError> {
        let idx = self
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))?;
        Ok(self.basis_element(idx))
    }

    pub fn owns(&self, x: &LieElement) -> Result<(), LieError> {
        if x.algebra_id() != self.id {
            return Err(LieError::AlgebraMismatch);
        }
        Ok(())
    }

    /// `[e_i, e_j]` in the basis; zero above the class bound.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering as O;
        match i.cmp(&j) {
            O::Equal => SparseVec::new(),
            O::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            O::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(&k, c)| (k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if i == j || self.degree(i) + self.degree(j) > self.class_bound {
                    continue;
                }
                let (lo, hi, sign) = if i < j { (i, j, a * b) } else { (j, i, -(a * b)) };
                if let Some(v) = self.brackets.get(&(lo, hi)) {
                    axpy(&mut out, &sign, v);
                }
            }
        }
        out
    }

    /// Lie bracket of two elements of this algebra.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(LieElement::new(
            self.id,
            self.dim(),
            self.bracket_sparse(x.coeffs(), y.coeffs()),
        ))
    }

    /// Nonzero structure constants `[e_i, e_j]`, `i < j`.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Checks the Jacobi identity on all basis triples with total degree at
    /// most the class bound.
    pub fn jacobi_violations(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.degree(a) + self.degree(b) >= self.class_bound {
                    break;
                }
                for c in (b + 1)..n {
                    if self.degree(a) + self.degree(b) + self.degree(c) > self.class_bound {
                        break;
                    }
                    let ea: SparseVec = [(a, Rational::one())].into_iter().collect();
                    let eb: SparseVec = [(b, Rational::one())].into_iter().collect();
                    let ec: SparseVec = [(c, Rational::one())].into_iter().collect();
                    let mut sum = self.bracket_sparse(&self.bracket_basis(a, b), &ec);
                    axpy(&mut sum, &Rational::one(), &self.bracket_sparse(&self.bracket_basis(b, c), &ea));
                    axpy(&mut sum, &Rational::one(), &self.bracket_sparse(&self.bracket_basis(c, a), &eb));
                    if !sum.is_empty() {
                        out.push(JacobiViolation {
                            triple: (a, b, c),
                            residual: sum,
                        });
                    }
                }
            }
        }
        out
    }

    /// Basis pairs whose bracket leaves the expected degree or weight.
    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        self.brackets
            .iter()
            .filter(|(&(i, j), v)| {
                v.keys().any(|&k| {
                    self.degree(k) != self.degree(i) + self.degree(j)
                        || self.weight(k) != self.weight(i) + self.weight(j)
                })
            })
            .map(|(&k, _)| k)
            .collect()
    }

    /// Lower central series `Γ_1 ⊇ Γ_2 ⊇ ... ⊇ Γ_{N+1} = 0`, computed as
    /// `Γ_{n+1} = [L, Γ_n]`. Entry `n - 1` is `Γ_n`.
    pub fn lcs_filtration(&self) -> Vec<Subspace> {
        let n = self.dim();
        let mut out = vec![Subspace::full(n)];
        for _ in 0..self.class_bound {
            let prev = out.last().unwrap();
            let mut vectors = Vec::new();
            for i in 0..n {
                for v in prev.basis() {
                    let sv = to_sparse(v);
                    let b = self.bracket_sparse(&[(i, Rational::one())].into_iter().collect(), &sv);
                    if !b.is_empty() {
                        vectors.push(b);
                    }
                }
            }
            out.push(Subspace::span_sparse(n, vectors));
        }
        out
    }

    /// Subspace spanned by basis elements of degree `>= d`.
    pub fn degree_at_least(&self, d: usize) -> Subspace {
        let start = if d <= 1 {
            0
        } else if d > self.class_bound {
            self.dim()
        } else {
            self.offsets[d - 1]
        };
        Subspace::coordinate(self.dim(), start..self.dim())
    }

    /// Dimensions indexed by `(degree, weight)`.
    pub fn weight_graded_dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry((e.degree, e.weight)).or_insert(0) += 1;
        }
        out
    }

    /// Human-readable form, e.g. `x + y + 1/2 [x,y]`.
    pub fn format(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&i, c)) in x.coeffs().iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push(' ');
            }
            out.push_str(self.label(i));
        }
        out
    }

    /// Adds `a * [x, e_j]` into `acc`; helper for callers building brackets
    /// against single basis elements.
    pub fn add_bracket_with_basis(&self, acc: &mut SparseVec, a: &Rational, x: &SparseVec, j: usize) {
        for (&i, c) in x {
            let b = self.bracket_basis(i, j);
            axpy(acc, &(a * c), &b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    fn gens(names: &[&str]) -> Vec<Generator> {
        names.iter().map(|n| Generator::new(*n, -1)).collect()
    }

    #[test]
    fn degree_dims_small_cases() {
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 1).unwrap();
        assert_eq!(l.degree_dims(), vec![2]);
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 3).unwrap();
        assert_eq!(l.degree_dims(), vec![2, 1, 2]);
        let l = GradedLieAlgebra::free(&gens(&["a", "b", "c"]), 2).unwrap();
        assert_eq!(l.degree_dims(), vec![3, 3]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            GradedLieAlgebra::free(&gens(&["x", "x"]), 2).unwrap_err(),
            LieError::DuplicateGenerator("x".into())
        );
        assert_eq!(GradedLieAlgebra::free(&[], 2).unwrap_err(), LieError::NoGenerators);
        assert_eq!(GradedLieAlgebra::free(&gens(&["x"]), 0).unwrap_err(), LieError::ZeroClass);
        assert!(matches!(
            GradedLieAlgebra::free(&[Generator::new("x", 0)], 2),
            Err(LieError::InvalidWeight { .. })
        ));
    }

    #[test]
    fn bracket_examples() {
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 3).unwrap();
        let x = l.generator("x").unwrap();
        let y = l.generator("y").unwrap();
        assert!(l.bracket(&x, &x).unwrap().is_zero());
        let xy = l.bracket(&x, &y).unwrap();
        assert_eq!(xy, l.basis_element(2));
        assert_eq!(l.label(2), "[x,y]");
        assert_eq!(l.bracket(&y, &x).unwrap(), -&xy);
    }

    #[test]
    fn truncation_above_class_bound() {
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 2).unwrap();
        let x = l.generator("x").unwrap();
        let xy = l.bracket(&x, &l.generator("y").unwrap()).unwrap();
        assert!(l.bracket(&x, &xy).unwrap().is_zero());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = GradedLieAlgebra::free(&gens(&["x", "y"]), 2).unwrap();
        let b = GradedLieAlgebra::free(&gens(&["x", "y"]), 2).unwrap();
        let x = a.generator("x").unwrap();
        let y = b.generator("y").unwrap();
        assert_eq!(a.bracket(&x, &y).unwrap_err(), LieError::AlgebraMismatch);
        assert_eq!(x.checked_add(&y).unwrap_err(), LieError::AlgebraMismatch);
    }

    #[test]
    fn jacobi_holds_in_free_algebras() {
        for k in 1..=3 {
            let names: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
            let g: Vec<Generator> = names.iter().map(|n| Generator::new(n.clone(), -1)).collect();
            let l = GradedLieAlgebra::free(&g, 5).unwrap();
            assert!(l.jacobi_violations().is_empty(), "k={k}");
            assert!(l.grading_violations().is_empty());
        }
    }

    #[test]
    fn weights_extend_additively() {
        let g = vec![Generator::new("a", -1), Generator::new("b", -2)];
        let l = GradedLieAlgebra::free(&g, 3).unwrap();
        let ab = l.bracket(&l.basis_element(0), &l.basis_element(1)).unwrap();
        let idx = *ab.coeffs().keys().next().unwrap();
        assert_eq!(l.weight(idx), -3);
        assert!(l.grading_violations().is_empty());
    }

    #[test]
    fn lcs_matches_degree_filtration() {
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 4).unwrap();
        let lcs = l.lcs_filtration();
        assert_eq!(lcs.len(), 5);
        for (n, g) in lcs.iter().enumerate() {
            assert_eq!(g, &l.degree_at_least(n + 1));
        }
        assert!(lcs[4].is_zero());
        assert_eq!(l.dim() - lcs[1].dim(), 2);
    }

    #[test]
    fn formatting() {
        let l = GradedLieAlgebra::free(&gens(&["x", "y"]), 2).unwrap();
        let e = l.element([(0, int(1)), (2, crate::linalg::rat(-1, 2))].into_iter().collect());
        assert_eq!(l.format(&e), "x - 1/2 [x,y]");
        assert_eq!(l.format(&l.zero()), "0");
        assert_eq!(l.format(&-&l.basis_element(1)), "-y");
    }
}
