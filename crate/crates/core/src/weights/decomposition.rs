//! Frobenius actions on graded Lie algebras and their weight decompositions.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::Serialize;

use super::classify::{WeightClass, WeilClassifier};
use super::WeightError;
use crate::lie::{GradedLieAlgebra, LieTree};
use crate::linalg::rational::{to_dense, to_sparse, Rational, SparseVec};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{charpoly, Polynomial};

/// A Frobenius operator, one block per graded degree (a single block for a
/// plain vector space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAction {
    q: u64,
    blocks: Vec<Matrix>,
}

fn check_invertible(m: &Matrix, degree: usize) -> Result<(), WeightError> {
    if !m.is_square() {
        return Err(WeightError::Shape(format!("Frobenius block {degree} is {}x{}", m.rows(), m.cols())));
    }
    if m.rank() != m.rows() {
        return Err(WeightError::NotInvertible(degree));
    }
    Ok(())
}

impl FrobeniusAction {
    pub fn on_space(q: u64, m: Matrix) -> Result<Self, WeightError> {
        check_invertible(&m, 1)?;
        Ok(FrobeniusAction { q, blocks: vec![m] })
    }

    /// Per-degree blocks, checked for shape, invertibility and compatibility
    /// with the bracket.
    pub fn per_degree(alg: &GradedLieAlgebra, q: u64, blocks: Vec<Matrix>) -> Result<Self, WeightError> {
        let dims = alg.degree_dims();
        if blocks.len() != dims.len() {
            return Err(WeightError::Shape(format!("expected {} Frobenius blocks, got {}", dims.len(), blocks.len())));
        }
        for (d, (b, n)) in blocks.iter().zip(&dims).enumerate() {
            if b.rows() != *n || b.cols() != *n {
                return Err(WeightError::Shape(format!("Frobenius block {} must be {n}x{n}", d + 1)));
            }
            check_invertible(b, d + 1)?;
        }
        let f = FrobeniusAction { q, blocks };
        if let Some(&(a, b)) = f.bracket_violations(alg).first() {
            return Err(WeightError::NotBracketCompatible(a, b));
        }
        Ok(f)
    }

    /// The unique extension of a degree-one operator to an automorphism of
    /// the algebra, defined by `F[u, v] = [Fu, Fv]` on the bracketing trees
    /// of the basis. Fails if the result does not respect the bracket (for
    /// a quotient whose relations `F` does not preserve).
    pub fn extend_from_degree_one(alg: &GradedLieAlgebra, q: u64, f1: &Matrix) -> Result<Self, WeightError> {
        let n1 = alg.degree_range(1).len();
        if f1.rows() != n1 || f1.cols() != n1 {
            return Err(WeightError::Shape(format!("degree-one Frobenius must be {n1}x{n1}")));
        }
        let images: Vec<SparseVec> = (0..n1).map(|g| to_sparse(&f1.column(g))).collect();
        let mut memo: HashMap<LieTree, SparseVec> = HashMap::new();
        let mut blocks = Vec::new();
        for d in 1..=alg.class_bound() {
            let range = alg.degree_range(d);
            let mut block = Matrix::zeros(range.len(), range.len());
            for i in range.clone() {
                let img = eval_tree(alg, alg.tree(i), &images, &mut memo);
                for (j, x) in img {
                    if !range.contains(&j) {
                        return Err(WeightError::Shape("Frobenius image leaves its degree".into()));
                    }
                    block.set(j - range.start, i - range.start, x);
                }
            }
            blocks.push(block);
        }
        Self::per_degree(alg, q, blocks)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, degree: usize) -> &Matrix {
        &self.blocks[degree - 1]
    }

    pub fn full_matrix(&self) -> Matrix {
        Matrix::block_diagonal(&self.blocks)
    }

    /// Basis pairs `(a, b)` with `F[e_a, e_b] != [F e_a, F e_b]`.
    pub fn bracket_violations(&self, alg: &GradedLieAlgebra) -> Vec<(usize, usize)> {
        let f = self.full_matrix();
        if f.rows() != alg.dim() {
            return vec![(0, 0)];
        }
        let images: Vec<SparseVec> = (0..alg.dim()).map(|i| to_sparse(&f.column(i))).collect();
        let mut out = Vec::new();
        for a in 0..alg.dim() {
            for b in (a + 1)..alg.dim() {
                if alg.degree(a) + alg.degree(b) > alg.class_bound() {
                    break;
                }
                let lhs = f.apply_sparse(&alg.bracket_basis(a, b));
                let rhs = alg.bracket_sparse(&images[a], &images[b]);
                if lhs != rhs {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn eval_tree(
    alg: &GradedLieAlgebra,
    tree: &LieTree,
    generators: &[SparseVec],
    memo: &mut HashMap<LieTree, SparseVec>,
) -> SparseVec {
    if let Some(v) = memo.get(tree) {
        return v.clone();
    }
    let v = match tree {
        LieTree::Generator(g) => generators[*g].clone(),
        LieTree::Bracket(l, r) => {
            let a = eval_tree(alg, l, generators, memo);
            let b = eval_tree(alg, r, generators, memo);
            alg.bracket_sparse(&a, &b)
        }
    };
    memo.insert(tree.clone(), v.clone());
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorRow {
    pub factor: String,
    pub multiplicity: usize,
    pub weight: i64,
}

/// Direct-sum decomposition of a space indexed by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    ambient_dim: usize,
    pieces: BTreeMap<i64, Subspace>,
    factors: Vec<FactorRow>,
}

impl WeightDecomposition {
    pub fn new(ambient_dim: usize, pieces: BTreeMap<i64, Subspace>) -> Self {
        WeightDecomposition {
            ambient_dim,
            pieces,
            factors: Vec::new(),
        }
    }

    /// Decomposition of a graded algebra by its stored basis weights.
    pub fn from_grading(alg: &GradedLieAlgebra) -> Self {
        let mut idx: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..alg.dim() {
            idx.entry(alg.weight(i)).or_default().push(i);
        }
        let pieces = idx
            .into_iter()
            .map(|(w, v)| (w, Subspace::coordinate(alg.dim(), v)))
            .collect();
        Self::new(alg.dim(), pieces)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pieces(&self) -> &BTreeMap<i64, Subspace> {
        &self.pieces
    }

    pub fn piece(&self, w: i64) -> Subspace {
        self.pieces.get(&w).cloned().unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    pub fn factors(&self) -> &[FactorRow] {
        &self.factors
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().map(|(w, s)| (*w, s.dim())).collect()
    }

    /// Pieces are independent and together span the ambient space.
    pub fn is_direct_sum(&self) -> bool {
        let parts: Vec<&Subspace> = self.pieces.values().collect();
        Subspace::independent(&parts) && parts.iter().map(|p| p.dim()).sum::<usize>() == self.ambient_dim
    }

    /// `F(W_w) = W_w` for every piece.
    pub fn is_stable_under(&self, f: &Matrix) -> bool {
        self.pieces.values().all(|p| p.map(f) == *p)
    }

    /// Sum of the pieces of weight `<= n`.
    pub fn partial_sum(&self, n: i64) -> Subspace {
        let vectors = self
            .pieces
            .range(..=n)
            .flat_map(|(_, s)| s.basis().to_vec())
            .collect();
        Subspace::span(self.ambient_dim, vectors)
    }

    /// Assemble per-degree decompositions into one on the whole algebra.
    pub fn assemble(alg: &GradedLieAlgebra, per_degree: &[WeightDecomposition]) -> Self {
        let mut pieces: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
        let mut factors = Vec::new();
        for (d, dec) in per_degree.iter().enumerate() {
            let off = alg.degree_range(d + 1).start;
            for (w, s) in &dec.pieces {
                pieces
                    .entry(*w)
                    .or_default()
                    .extend(s.embed(off, alg.dim()).basis().iter().cloned());
            }
            factors.extend(dec.factors.iter().cloned());
        }
        WeightDecomposition {
            ambient_dim: alg.dim(),
            pieces: pieces
                .into_iter()
                .map(|(w, v)| (w, Subspace::span(alg.dim(), v)))
                .collect(),
            factors,
        }
    }
}

/// `W_w = ker P_w(F)`, where `P_w` collects the weight-`w` part of the
/// characteristic polynomial with multiplicity.
pub fn frobenius_weight_decomposition(f: &Matrix, classifier: &WeilClassifier) -> Result<WeightDecomposition, WeightError> {
    check_invertible(f, 1)?;
    let n = f.rows();
    let cp = charpoly(f);
    let mut parts: BTreeMap<i64, Polynomial> = BTreeMap::new();
    let mut factors = Vec::new();
    for (s, mult) in cp.squarefree_decomposition() {
        let split = classifier.split(&s).map_err(|c| match c {
            WeightClass::NotPure => WeightError::NotPure(s.to_string()),
            _ => WeightError::Inconclusive(s.to_string()),
        })?;
        for (w, g) in split {
            factors.push(FactorRow {
                factor: g.to_string(),
                multiplicity: mult,
                weight: w,
            });
            let e = parts.entry(w).or_insert_with(Polynomial::one);
            *e = e.mul(&g.pow(mult));
        }
    }
    factors.sort_by(|a, b| (a.weight, &a.factor, a.multiplicity).cmp(&(b.weight, &b.factor, b.multiplicity)));
    let mut pieces = BTreeMap::new();
    for (w, p) in parts {
        pieces.insert(w, p.eval_matrix(f).kernel());
    }
    let dec = WeightDecomposition {
        ambient_dim: n,
        pieces,
        factors,
    };
    if !dec.is_direct_sum() {
        return Err(WeightError::Inconclusive(cp.to_string()));
    }
    Ok(dec)
}

/// Decomposition of each graded piece.
pub fn graded_decomposition(frob: &FrobeniusAction, classifier: &WeilClassifier) -> Result<Vec<WeightDecomposition>, WeightError> {
    frob.blocks()
        .iter()
        .map(|b| {
            if b.rows() == 0 {
                Ok(WeightDecomposition::new(0, BTreeMap::new()))
            } else {
                frobenius_weight_decomposition(b, classifier)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityViolation {
    pub degrees: (usize, usize),
    pub weights: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub bracket_compatible: bool,
    pub pairs_checked: usize,
    pub violations: Vec<AdditivityViolation>,
}

impl AdditivityReport {
    pub fn passed(&self) -> bool {
        self.bracket_compatible && self.violations.is_empty()
    }
}

/// Check `[W_i, W_j] ⊆ W_{i+j}` between every pair of graded pieces.
pub fn check_bracket_additivity(alg: &GradedLieAlgebra, frob: &FrobeniusAction, per_degree: &[WeightDecomposition]) -> AdditivityReport {
    let bracket_compatible = frob.bracket_violations(alg).is_empty();
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    let n = alg.class_bound();
    let lift = |d: usize, v: &[Rational]| -> SparseVec {
        let off = alg.degree_range(d).start;
        to_sparse(v).into_iter().map(|(i, x)| (i + off, x)).collect()
    };
    for d1 in 1..=n {
        for d2 in d1..=n {
            if d1 + d2 > n {
                break;
            }
            let target_range = alg.degree_range(d1 + d2);
            for (&i, s) in per_degree[d1 - 1].pieces() {
                for (&j, t) in per_degree[d2 - 1].pieces() {
                    let target = per_degree[d1 + d2 - 1].piece(i + j);
                    let mut ok = true;
                    for u in s.basis() {
                        for v in t.basis() {
                            pairs_checked += 1;
                            let b = alg.bracket_sparse(&lift(d1, u), &lift(d2, v));
                            let local: SparseVec = b.into_iter().map(|(k, x)| (k - target_range.start, x)).collect();
                            if !target.contains(&to_dense(&local, target_range.len())) {
                                ok = false;
                            }
                        }
                    }
                    if !ok {
                        violations.push(AdditivityViolation {
                            degrees: (d1, d2),
                            weights: (i, j),
                        });
                    }
                }
            }
        }
    }
    AdditivityReport {
        bracket_compatible,
        pairs_checked,
        violations,
    }
}

/// Companion matrix of a monic polynomial (last column holds `-a_i`).
pub fn companion(p: &Polynomial) -> Matrix {
    let p = p.monic();
    let n = p.degree().unwrap_or(0);
    let mut m = Matrix::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, Rational::one());
    }
    for i in 0..n {
        m.set(i, n - 1, -p.coeff(i));
    }
    m
}
