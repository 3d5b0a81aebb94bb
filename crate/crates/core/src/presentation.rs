//! Quadratic presentations `L(H1^∨) / (dual cup product)` built from
//! cohomology data: relations, graded ideal closure, quotient algebra.

use std::collections::BTreeMap;

use log::warn;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::{build_free, hall::witt_dim, Generator, GradedLieAlgebra, LieElement, LieError};
use crate::linalg::rational::{Rational, SparseVec};
use crate::linalg::{Matrix, Subspace};

/// Default nilpotency class for presentations.
pub const DEFAULT_CLASS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{0}")]
    Shape(String),
    #[error("weights must be positive, found {0}")]
    NonPositiveWeight(u32),
    #[error("cup product is not antisymmetric: c[{k}][{i}][{j}] != -c[{k}][{j}][{i}]")]
    NotAntisymmetric { k: usize, i: usize, j: usize },
    #[error("cup product violates weights: c[{k}][{i}][{j}] != 0 but h2 weight {w2} != {wi} + {wj}")]
    WeightIncompatible {
        k: usize,
        i: usize,
        j: usize,
        w2: u32,
        wi: u32,
        wj: u32,
    },
    #[error("relation {0} is not homogeneous of a single degree >= 2")]
    InhomogeneousRelation(usize),
    #[error("subspaces do not form a graded ideal: bracket of basis element {element} with J_{degree} leaves J")]
    NotAnIdeal { element: usize, degree: usize },
    #[error("quotient fails invariant: {0}")]
    QuotientInvariant(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// First and second cohomology with weights and the cup product, the input
/// standing in for a variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyDatum {
    pub q: Option<u64>,
    pub h1_dim: usize,
    pub h1_weights: Vec<u32>,
    pub h2_dim: usize,
    pub h2_weights: Vec<u32>,
    /// `cup[k][i][j]`: coefficient of the `k`-th H² basis vector in `e_i ∪ e_j`.
    pub cup: Vec<Vec<Vec<Rational>>>,
    pub generator_names: Option<Vec<String>>,
}

impl CohomologyDatum {
    pub fn validate(&self) -> Result<(), PresentationError> {
        let shape = |m: String| Err(PresentationError::Shape(m));
        if self.h1_weights.len() != self.h1_dim {
            return shape(format!("h1_weights has {} entries, h1_dim is {}", self.h1_weights.len(), self.h1_dim));
        }
        if self.h2_weights.len() != self.h2_dim {
            return shape(format!("h2_weights has {} entries, h2_dim is {}", self.h2_weights.len(), self.h2_dim));
        }
        if self.cup.len() != self.h2_dim {
            return shape(format!("cup has {} slices, h2_dim is {}", self.cup.len(), self.h2_dim));
        }
        for (k, slice) in self.cup.iter().enumerate() {
            if slice.len() != self.h1_dim || slice.iter().any(|r| r.len() != self.h1_dim) {
                return shape(format!("cup[{k}] is not {0}x{0}", self.h1_dim));
            }
        }
        if let Some(names) = &self.generator_names {
            if names.len() != self.h1_dim {
                return shape(format!("generator_names has {} entries, h1_dim is {}", names.len(), self.h1_dim));
            }
        }
        if let Some(&w) = self.h1_weights.iter().chain(&self.h2_weights).find(|&&w| w == 0) {
            return Err(PresentationError::NonPositiveWeight(w));
        }
        for (k, slice) in self.cup.iter().enumerate() {
            for i in 0..self.h1_dim {
                for j in i..self.h1_dim {
                    if slice[i][j] != -slice[j][i].clone() {
                        return Err(PresentationError::NotAntisymmetric { k, i, j });
                    }
                    if !slice[i][j].is_zero() && self.h2_weights[k] != self.h1_weights[i] + self.h1_weights[j] {
                        return Err(PresentationError::WeightIncompatible {
                            k,
                            i,
                            j,
                            w2: self.h2_weights[k],
                            wi: self.h1_weights[i],
                            wj: self.h1_weights[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Generators of `L(H1^∨)`: one per H¹ basis vector, weight `-h1_weight`.
    pub fn generators(&self) -> Vec<Generator> {
        (0..self.h1_dim)
            .map(|i| {
                let name = self
                    .generator_names
                    .as_ref()
                    .map(|n| n[i].clone())
                    .unwrap_or_else(|| format!("x{}", i + 1));
                Generator::new(name, -(self.h1_weights[i] as i64))
            })
            .collect()
    }

    /// Common H¹ weight, if H¹ is pure.
    pub fn pure_h1_weight(&self) -> Option<u32> {
        let first = *self.h1_weights.first()?;
        self.h1_weights.iter().all(|&w| w == first).then_some(first)
    }
}

/// An open variety `X = Xbar - D` described through the Gysin sequence: the
/// weight-1 part of H¹ is the image of H¹(Xbar), the weight-2 part injects
/// into H⁰ of the normalized boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenVarietyDatum {
    pub q: Option<u64>,
    pub h1_compact_dim: usize,
    pub boundary_dim: usize,
    pub h2_dim: usize,
    pub h2_weights: Vec<u32>,
    pub cup: Vec<Vec<Vec<Rational>>>,
    pub generator_names: Option<Vec<String>>,
}

impl OpenVarietyDatum {
    pub fn to_cohomology(&self) -> CohomologyDatum {
        let mut h1_weights = vec![1; self.h1_compact_dim];
        h1_weights.extend(std::iter::repeat(2).take(self.boundary_dim));
        CohomologyDatum {
            q: self.q,
            h1_dim: self.h1_compact_dim + self.boundary_dim,
            h1_weights,
            h2_dim: self.h2_dim,
            h2_weights: self.h2_weights.clone(),
            cup: self.cup.clone(),
            generator_names: self.generator_names.clone(),
        }
    }

    /// Degree-1 coordinates dual to the weight-2 part of H¹, i.e. the image
    /// of the ideal `K` in the abelianization.
    pub fn boundary_subspace(&self) -> Subspace {
        let n = self.h1_compact_dim + self.boundary_dim;
        Subspace::coordinate(n, self.h1_compact_dim..n)
    }
}

/// Relations produced from the dual cup product.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub relations: Vec<LieElement>,
    /// H² basis index each kept relation came from.
    pub sources: Vec<usize>,
    /// H² basis indices whose relation vanished.
    pub dropped: Vec<usize>,
    /// Dimension of the span of the relations.
    pub rank: usize,
}

/// `r_k = sum_{i<j} c[k][i][j] [x_i, x_j]` for every H² basis vector `k`.
pub fn dual_cup_relations(datum: &CohomologyDatum, free: &GradedLieAlgebra) -> Result<RelationSet, PresentationError> {
    datum.validate()?;
    if free.degree_dims().first().copied() != Some(datum.h1_dim) {
        return Err(PresentationError::Shape(format!(
            "free algebra has {} generators, datum has h1_dim {}",
            free.degree_dims().first().copied().unwrap_or(0),
            datum.h1_dim
        )));
    }
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    let mut dropped = Vec::new();
    for (k, slice) in datum.cup.iter().enumerate() {
        let mut r = free.zero();
        for i in 0..datum.h1_dim {
            for j in (i + 1)..datum.h1_dim {
                if slice[i][j].is_zero() {
                    continue;
                }
                let b = free.bracket(&free.basis_element(i), &free.basis_element(j))?;
                r.add_scaled(&slice[i][j], &b)?;
            }
        }
        if r.is_zero() {
            warn!("H2 basis vector {k} has zero cup column; its relation is dropped");
            dropped.push(k);
        } else {
            relations.push(r);
            sources.push(k);
        }
    }
    let rank = Subspace::span(free.dim(), relations.iter().map(|r| r.to_dense()).collect()).dim();
    Ok(RelationSet {
        relations,
        sources,
        dropped,
        rank,
    })
}

/// A graded ideal stored degree by degree in local coordinates of each
/// graded piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    /// `pieces[d - 1]` is `J_d` inside `L_d`.
    pieces: Vec<Subspace>,
}

impl GradedIdeal {
    pub fn zero(alg: &GradedLieAlgebra) -> Self {
        GradedIdeal {
            pieces: alg.degree_dims().into_iter().map(Subspace::zero).collect(),
        }
    }

    pub fn from_pieces(pieces: Vec<Subspace>) -> Self {
        GradedIdeal { pieces }
    }

    pub fn piece(&self, d: usize) -> &Subspace {
        &self.pieces[d - 1]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    /// The ideal as one subspace of the whole algebra.
    pub fn total(&self, alg: &GradedLieAlgebra) -> Subspace {
        let vectors = self
            .pieces
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                let off = alg.degree_range(i + 1).start;
                p.embed(off, alg.dim()).basis().to_vec()
            })
            .collect();
        Subspace::span(alg.dim(), vectors)
    }

    /// First pair `(basis element, degree)` whose bracket leaves the ideal.
    pub fn ideal_violation(&self, alg: &GradedLieAlgebra) -> Option<(usize, usize)> {
        for d in 1..alg.class_bound() {
            for u in self.piece(d).basis() {
                let gu = local_to_global(alg, d, u);
                for a in 0..alg.dim() {
                    let e = alg.degree(a) + d;
                    if e > alg.class_bound() {
                        break;
                    }
                    let b: SparseVec = alg.bracket_sparse(&[(a, Rational::one())].into_iter().collect(), &gu);
                    let local = global_to_local(alg, e, &b);
                    if !self.piece(e).contains(&local) {
                        return Some((a, d));
                    }
                }
            }
        }
        None
    }
}

fn local_to_global(alg: &GradedLieAlgebra, d: usize, v: &[Rational]) -> SparseVec {
    let off = alg.degree_range(d).start;
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i + off, x.clone()))
        .collect()
}

fn global_to_local(alg: &GradedLieAlgebra, d: usize, v: &SparseVec) -> Vec<Rational> {
    let range = alg.degree_range(d);
    let mut out = vec![Rational::zero(); range.len()];
    for (&i, x) in v.range(range.clone()) {
        out[i - range.start] = x.clone();
    }
    out
}

/// Homogeneous degree of an element, if it has exactly one.
fn homogeneous_degree(alg: &GradedLieAlgebra, x: &LieElement) -> Option<usize> {
    let mut degrees = x.coeffs().keys().map(|&i| alg.degree(i));
    let d = degrees.next()?;
    degrees.all(|e| e == d).then_some(d)
}

/// Closure of homogeneous relations (degree >= 2) into the graded ideal
/// they generate: `J_d = span(relations of degree d) + [L_1, J_{d-1}]`.
pub fn ideal_closure(alg: &GradedLieAlgebra, relations: &[LieElement]) -> Result<GradedIdeal, PresentationError> {
    let mut by_degree: BTreeMap<usize, Vec<Vec<Rational>>> = BTreeMap::new();
    for (n, r) in relations.iter().enumerate() {
        alg.owns(r)?;
        if r.is_zero() {
            continue;
        }
        let d = homogeneous_degree(alg, r).ok_or(PresentationError::InhomogeneousRelation(n))?;
        if d < 2 {
            return Err(PresentationError::InhomogeneousRelation(n));
        }
        by_degree
            .entry(d)
            .or_default()
            .push(global_to_local(alg, d, r.coeffs()));
    }

    let dims = alg.degree_dims();
    let mut pieces: Vec<Subspace> = Vec::with_capacity(dims.len());
    for d in 1..=alg.class_bound() {
        let mut vectors = by_degree.remove(&d).unwrap_or_default();
        if d >= 2 {
            let prev = &pieces[d - 2];
            for u in prev.basis() {
                let gu = local_to_global(alg, d - 1, u);
                for g in alg.degree_range(1) {
                    let b = alg.bracket_sparse(&[(g, Rational::one())].into_iter().collect(), &gu);
                    if !b.is_empty() {
                        vectors.push(global_to_local(alg, d, &b));
                    }
                }
            }
        }
        pieces.push(Subspace::span(dims[d - 1], vectors));
    }
    Ok(GradedIdeal { pieces })
}

/// `L / J` with its projection from `L`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: GradedLieAlgebra,
    /// `dim(L/J) x dim(L)` matrix of the canonical projection.
    pub projection: Matrix,
    /// Basis indices of `L` whose images form the quotient basis.
    pub representatives: Vec<usize>,
}

/// Quotient by a graded ideal. Quotient bases are the images of the basis
/// elements of `L` sitting at non-pivot columns of each `J_d`.
pub fn quotient(alg: &GradedLieAlgebra, ideal: &GradedIdeal) -> Result<Quotient, PresentationError> {
    if ideal.pieces.len() != alg.class_bound()
        || ideal
            .pieces
            .iter()
            .zip(alg.degree_dims())
            .any(|(p, n)| p.ambient_dim() != n)
    {
        return Err(PresentationError::Shape("ideal pieces do not match the algebra's graded dimensions".into()));
    }
    if let Some((element, degree)) = ideal.ideal_violation(alg) {
        return Err(PresentationError::NotAnIdeal { element, degree });
    }

    // global index of L -> quotient index, per degree
    let mut representatives = Vec::new();
    let mut position: BTreeMap<usize, usize> = BTreeMap::new();
    for d in 1..=alg.class_bound() {
        let off = alg.degree_range(d).start;
        for c in ideal.piece(d).free_coordinates() {
            position.insert(off + c, representatives.len());
            representatives.push(off + c);
        }
    }

    let project = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for d in 1..=alg.class_bound() {
            let local = global_to_local(alg, d, v);
            if local.iter().all(|x| x.is_zero()) {
                continue;
            }
            let reduced = ideal.piece(d).reduce(&local);
            let off = alg.degree_range(d).start;
            for (c, x) in reduced.into_iter().enumerate() {
                if !x.is_zero() {
                    out.insert(position[&(off + c)], x);
                }
            }
        }
        out
    };

    let mut projection = Matrix::zeros(representatives.len(), alg.dim());
    for i in 0..alg.dim() {
        let img = project(&[(i, Rational::one())].into_iter().collect());
        for (r, x) in img {
            projection.set(r, i, x);
        }
    }

    let elements: Vec<_> = representatives
        .iter()
        .map(|&i| alg.elements()[i].clone())
        .collect();
    let mut brackets = BTreeMap::new();
    for (a, &ia) in representatives.iter().enumerate() {
        for (b, &ib) in representatives.iter().enumerate().skip(a + 1) {
            if alg.degree(ia) + alg.degree(ib) > alg.class_bound() {
                continue;
            }
            let img = project(&alg.bracket_basis(ia, ib));
            if !img.is_empty() {
                brackets.insert((a, b), img);
            }
        }
    }
    let q = GradedLieAlgebra::from_parts(alg.generators().to_vec(), alg.class_bound(), elements, brackets);

    if let Some(v) = q.jacobi_violations().first() {
        return Err(PresentationError::QuotientInvariant(format!("Jacobi fails on {:?}", v.triple)));
    }
    if let Some(p) = q.grading_violations().first() {
        return Err(PresentationError::QuotientInvariant(format!(
            "bracket of {p:?} is not homogeneous in degree and weight"
        )));
    }
    Ok(Quotient {
        algebra: q,
        projection,
        representatives,
    })
}

/// Full presentation: free algebra, relations, ideal and quotient.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub free: GradedLieAlgebra,
    pub relations: RelationSet,
    pub ideal: GradedIdeal,
    pub quotient: Quotient,
}

impl Presentation {
    pub fn from_datum(datum: &CohomologyDatum, class_bound: usize) -> Result<Self, PresentationError> {
        datum.validate()?;
        let free = build_free(&datum.generators(), class_bound)?;
        let relations = dual_cup_relations(datum, &free)?;
        Self::from_relations(free, relations)
    }

    pub fn from_relations(free: GradedLieAlgebra, relations: RelationSet) -> Result<Self, PresentationError> {
        let ideal = ideal_closure(&free, &relations.relations)?;
        let quotient = quotient(&free, &ideal)?;
        Ok(Presentation {
            free,
            relations,
            ideal,
            quotient,
        })
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.quotient.algebra.degree_dims()
    }

    pub fn free_dims(&self) -> Vec<usize> {
        self.free.degree_dims()
    }
}

/// Outcome of checking that `L(V) -> L(V)/J` is onto in every degree and the
/// identity in degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    /// Per degree `(rank of projection, quotient dimension)`.
    pub degree_ranks: Vec<(usize, usize)>,
    pub identity_in_degree_one: bool,
    pub surjective: bool,
    pub isomorphism_degrees: Vec<usize>,
}

impl TangentReport {
    pub fn passed(&self) -> bool {
        self.identity_in_degree_one && self.surjective
    }
}

pub fn tangent_surjection_check(p: &Presentation) -> TangentReport {
    let free = &p.free;
    let q = &p.quotient.algebra;
    let mut degree_ranks = Vec::new();
    let mut isomorphism_degrees = Vec::new();
    for d in 1..=free.class_bound() {
        let block = p.quotient.projection.block(q.degree_range(d), free.degree_range(d));
        let rank = block.rank();
        let qd = q.degree_range(d).len();
        if rank == qd && qd == free.degree_range(d).len() {
            isomorphism_degrees.push(d);
        }
        degree_ranks.push((rank, qd));
    }
    let d1 = p.quotient.projection.block(q.degree_range(1), free.degree_range(1));
    let identity_in_degree_one = d1 == Matrix::identity(free.degree_range(1).len());
    let surjective = degree_ranks.iter().all(|(r, n)| r == n);
    TangentReport {
        degree_ranks,
        identity_in_degree_one,
        surjective,
        isomorphism_degrees,
    }
}

/// Named pass/fail checks of a presentation.
pub fn invariant_checks(p: &Presentation, datum: Option<&CohomologyDatum>) -> Vec<(String, bool)> {
    let free_dims = p.free_dims();
    let witt_ok = free_dims
        .iter()
        .enumerate()
        .all(|(d, &n)| n as u64 == witt_dim(free_dims[0] as u64, d as u32 + 1));
    let dims_ok = p
        .quotient_dims()
        .iter()
        .zip(free_dims.iter().zip(p.ideal.dims()))
        .all(|(&q, (&f, j))| q == f - j);
    let relations_degree_two = p
        .relations
        .relations
        .iter()
        .all(|r| homogeneous_degree(&p.free, r) == Some(2));
    let mut checks = vec![
        ("free_dims_match_witt".to_string(), witt_ok),
        ("relations_in_degree_2".to_string(), relations_degree_two),
        ("ideal_property".to_string(), p.ideal.ideal_violation(&p.free).is_none()),
        ("dimension_law".to_string(), dims_ok),
        ("quotient_jacobi".to_string(), p.quotient.algebra.jacobi_violations().is_empty()),
        ("quotient_grading".to_string(), p.quotient.algebra.grading_violations().is_empty()),
        ("tangent_surjection".to_string(), tangent_surjection_check(p).passed()),
    ];
    if let Some(a) = datum.and_then(|d| d.pure_h1_weight()) {
        let pure = p.relations.relations.iter().all(|r| {
            r.coeffs()
                .keys()
                .all(|&i| p.free.weight(i) == -2 * a as i64)
        });
        checks.push(("relations_pure_of_weight_minus_2a".to_string(), pure));
    }
    checks
}
