//! The weight filtration generated by a degree-one subspace `K`, and its
//! comparison with Frobenius weight decompositions.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::decomposition::WeightDecomposition;
use super::WeightError;
use crate::lie::GradedLieAlgebra;
use crate::linalg::rational::{to_sparse, Rational, SparseVec};
use crate::linalg::Subspace;

/// Increasing filtration `... ⊆ W_{-3} ⊆ W_{-2} ⊆ W_{-1} = L`. Levels at or
/// above `top` are the whole space, levels below `bottom` are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    ambient_dim: usize,
    top: i64,
    levels: BTreeMap<i64, Subspace>,
}

impl WeightFiltration {
    /// `levels` must be keyed by a contiguous range of weights ending at
    /// `top`, where the space is assumed full.
    pub fn from_levels(ambient_dim: usize, top: i64, levels: BTreeMap<i64, Subspace>) -> Self {
        WeightFiltration {
            ambient_dim,
            top,
            levels,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn bottom(&self) -> i64 {
        self.levels.keys().next().copied().unwrap_or(self.top)
    }

    pub fn level(&self, n: i64) -> Subspace {
        if n >= self.top {
            return Subspace::full(self.ambient_dim);
        }
        self.levels
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    pub fn levels(&self) -> &BTreeMap<i64, Subspace> {
        &self.levels
    }

    pub fn is_increasing(&self) -> bool {
        let lo = self.bottom() - 1;
        (lo..self.top).all(|n| self.level(n).is_subspace_of(&self.level(n + 1)))
    }

    /// `dim W_n / W_{n-1}` for each `n` in range.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        (self.bottom()..=self.top)
            .map(|n| (n, self.level(n).dim().saturating_sub(self.level(n - 1).dim())))
            .collect()
    }
}

fn lift(alg: &GradedLieAlgebra, d: usize, v: &[Rational]) -> SparseVec {
    let off = alg.degree_range(d).start;
    to_sparse(v).into_iter().map(|(i, x)| (i + off, x)).collect()
}

/// Smallest filtration with `W_{-1} = L`, `K ⊆ W_{-2}` and
/// `[W_m, W_n] ⊆ W_{m+n}`, for `K` given inside degree one. Computed by
/// weighting `K` by `-2`, a complement by `-1`, and spanning brackets of
/// generators by total weight.
pub fn weight_filtration(alg: &GradedLieAlgebra, k: &Subspace) -> Result<WeightFiltration, WeightError> {
    let n1 = alg.degree_range(1).len();
    if k.ambient_dim() != n1 {
        return Err(WeightError::KNotInDegreeOne {
            ambient: k.ambient_dim(),
            degree_one: n1,
        });
    }
    let mut gens: Vec<(i64, Vec<Rational>)> = k.basis().iter().map(|v| (-2, v.clone())).collect();
    gens.extend(Subspace::full(n1).complement_in(k).into_iter().map(|v| (-1, v)));

    // pieces[d-1][w]: span of degree-d brackets of generators of total weight w
    let mut pieces: Vec<BTreeMap<i64, Subspace>> = Vec::new();
    let mut first = BTreeMap::new();
    for (w, v) in &gens {
        first.entry(*w).or_insert_with(Vec::new).push(v.clone());
    }
    pieces.push(first.into_iter().map(|(w, vs)| (w, Subspace::span(n1, vs))).collect());
    for d in 2..=alg.class_bound() {
        let range = alg.degree_range(d);
        let mut acc: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
        for (wg, g) in &gens {
            let g = lift(alg, 1, g);
            for (wu, s) in &pieces[d - 2] {
                for u in s.basis() {
                    let b = alg.bracket_sparse(&g, &lift(alg, d - 1, u));
                    if b.is_empty() {
                        continue;
                    }
                    let mut local = vec![Rational::zero(); range.len()];
                    for (i, x) in b {
                        local[i - range.start] = x;
                    }
                    acc.entry(wg + wu).or_default().push(local);
                }
            }
        }
        pieces.push(
            acc.into_iter()
                .map(|(w, vs)| (w, Subspace::span(range.len(), vs)))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        );
    }

    let bottom = pieces
        .iter()
        .flat_map(|m| m.keys().copied())
        .min()
        .unwrap_or(-1)
        .min(-1);
    let mut levels = BTreeMap::new();
    for n in bottom..-1 {
        let mut vectors = Vec::new();
        for (d, m) in pieces.iter().enumerate() {
            let off = alg.degree_range(d + 1).start;
            for (_, s) in m.range(..=n) {
                vectors.extend(s.embed(off, alg.dim()).basis().iter().cloned());
            }
        }
        levels.insert(n, Subspace::span(alg.dim(), vectors));
    }
    Ok(WeightFiltration {
        ambient_dim: alg.dim(),
        top: -1,
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitRow {
    pub weight: i64,
    pub filtration_dim: usize,
    pub partial_sum_dim: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub rows: Vec<SplitRow>,
    pub first_failure: Option<i64>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn weight_range(d: &WeightDecomposition, w: &WeightFiltration) -> std::ops::RangeInclusive<i64> {
    let lo = d.pieces().keys().next().copied().unwrap_or(w.bottom()).min(w.bottom());
    let hi = d.pieces().keys().last().copied().unwrap_or(w.top()).max(w.top());
    lo..=hi
}

/// Check `W_n = ⊕_{i <= n} W_i` for every relevant `n`.
pub fn check_splitting(d: &WeightDecomposition, w: &WeightFiltration) -> SplittingReport {
    let mut rows = Vec::new();
    let mut first_failure = None;
    if d.ambient_dim() != w.ambient_dim() {
        return SplittingReport {
            rows,
            first_failure: Some(w.top()),
        };
    }
    for n in weight_range(d, w) {
        let lhs = w.level(n);
        let rhs = d.partial_sum(n);
        let equal = lhs == rhs;
        if !equal && first_failure.is_none() {
            first_failure = Some(n);
        }
        rows.push(SplitRow {
            weight: n,
            filtration_dim: lhs.dim(),
            partial_sum_dim: rhs.dim(),
            equal,
        });
    }
    SplittingReport { rows, first_failure }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityRow {
    pub weight: i64,
    pub graded_dim: usize,
    pub piece_dim: usize,
    pub pure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub rows: Vec<PurityRow>,
}

impl PurityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pure)
    }
}

/// For each `i`, check that `W_i` maps isomorphically onto `Gr^W_i`, i.e.
/// `W_i ⊆ W_i`, `W_i ∩ W_{i-1} = 0` and `W_{i-1} + W_i = W_i`.
pub fn purity_report(d: &WeightDecomposition, w: &WeightFiltration) -> PurityReport {
    let mut rows = Vec::new();
    if d.ambient_dim() != w.ambient_dim() {
        return PurityReport {
            rows: vec![PurityRow {
                weight: w.top(),
                graded_dim: 0,
                piece_dim: 0,
                pure: false,
            }],
        };
    }
    for i in weight_range(d, w) {
        let wi = w.level(i);
        let prev = w.level(i - 1);
        let piece = d.piece(i);
        let inside = piece.is_subspace_of(&wi);
        let sum = prev.sum(&piece).expect("same ambient");
        let meet = prev.intersect(&piece).expect("same ambient");
        rows.push(PurityRow {
            weight: i,
            graded_dim: wi.dim().saturating_sub(prev.dim()),
            piece_dim: piece.dim(),
            pure: inside && meet.is_zero() && sum == wi,
        });
    }
    PurityReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_free, Generator};

    fn free2(n: usize) -> GradedLieAlgebra {
        build_free(&[Generator::new("x", -1), Generator::new("y", -1)], n).unwrap()
    }

    #[test]
    fn k_zero_gives_lower_central_series() {
        let alg = free2(5);
        let w = weight_filtration(&alg, &Subspace::zero(2)).unwrap();
        let lcs = alg.lcs_filtration();
        for n in 1..=6 {
            assert_eq!(w.level(-(n as i64)), lcs[n - 1]);
        }
        assert!(w.is_increasing());
    }

    #[test]
    fn k_everything_doubles_weights() {
        let alg = free2(4);
        let w = weight_filtration(&alg, &Subspace::full(2)).unwrap();
        let lcs = alg.lcs_filtration();
        for n in 1..=4i64 {
            assert_eq!(w.level(-2 * n), lcs[(n - 1) as usize]);
            assert_eq!(w.level(-2 * n + 1), lcs[(n - 1) as usize]);
        }
    }

    #[test]
    fn one_dimensional_k() {
        let alg = free2(2);
        let w = weight_filtration(&alg, &Subspace::coordinate(2, [1])).unwrap();
        let g = w.graded_dims();
        assert_eq!(g[&-1], 1);
        assert_eq!(g[&-2], 1);
        assert_eq!(g[&-3], 1);
        assert_eq!(g.get(&-4).copied().unwrap_or(0), 0);
        assert!(w.level(-2).contains(&[Rational::zero(), Rational::from_integer(1.into()), Rational::zero()]));
    }

    #[test]
    fn wrong_ambient_for_k() {
        let alg = free2(2);
        assert!(matches!(
            weight_filtration(&alg, &Subspace::zero(3)),
            Err(WeightError::KNotInDegreeOne { .. })
        ));
    }

    #[test]
    fn grading_splits_its_filtration() {
        let alg = build_free(&[Generator::new("x", -1), Generator::new("z", -2)], 4).unwrap();
        let d = WeightDecomposition::from_grading(&alg);
        let w = weight_filtration(&alg, &Subspace::coordinate(2, [1])).unwrap();
        assert!(check_splitting(&d, &w).passed());
        assert!(purity_report(&d, &w).passed());
    }

    #[test]
    fn shifted_filtration_fails_at_shift() {
        let alg = free2(3);
        let d = WeightDecomposition::from_grading(&alg);
        let w = weight_filtration(&alg, &Subspace::zero(2)).unwrap();
        let shifted: BTreeMap<i64, Subspace> = w.levels().iter().map(|(n, s)| (n - 1, s.clone())).collect();
        let w2 = WeightFiltration::from_levels(alg.dim(), -1, shifted);
        let r = check_splitting(&d, &w2);
        assert_eq!(r.first_failure, Some(-4));
        assert!(!purity_report(&d, &w2).passed());
    }
}
