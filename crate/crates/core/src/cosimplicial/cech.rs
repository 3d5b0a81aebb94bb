//! Čech cosimplicial algebras of finite covers with locally constant
//! coefficients.

use std::collections::BTreeMap;

use super::algebra::CosimplicialAlgebra;
use super::space::CosimplicialSpace;
use super::CosimplicialError;
use crate::linalg::Matrix;

/// A finite cover: each nonempty intersection `U_S` (a sorted set of open
/// indices) carries a coefficient algebra `Q^{dim}`, with restriction maps
/// along every inclusion `U_S ⊇ U_T` where `T = S + {i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechInput {
    pub opens: Vec<String>,
    pub sections: BTreeMap<Vec<usize>, usize>,
    /// Keyed by `(S, T)` with `T` one element larger; `dim(T) x dim(S)`.
    pub restrictions: BTreeMap<(Vec<usize>, Vec<usize>), Matrix>,
}

impl CechInput {
    /// Nerve dimension: largest listed simplex size minus one.
    pub fn nerve_dim(&self) -> usize {
        self.sections.keys().map(|s| s.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), CosimplicialError> {
        let schema = |m: String| Err(CosimplicialError::Schema(m));
        if self.opens.is_empty() {
            return schema("a cover needs at least one open".into());
        }
        for (s, &dim) in &self.sections {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i >= self.opens.len()) {
                return schema(format!("intersection {s:?} must be a strictly increasing list of open indices"));
            }
            if dim == 0 {
                return schema(format!("intersection {s:?} has dimension 0; omit empty intersections"));
            }
            for i in 0..s.len() {
                if s.len() > 1 && !self.sections.contains_key(&without(s, i)) {
                    return schema(format!("intersection {s:?} is listed but its face {:?} is not", without(s, i)));
                }
            }
        }
        for i in 0..self.opens.len() {
            if !self.sections.contains_key(&vec![i]) {
                return schema(format!("open {} has no coefficient space", self.opens[i]));
            }
        }
        for ((from, to), m) in &self.restrictions {
            let (Some(&df), Some(&dt)) = (self.sections.get(from), self.sections.get(to)) else {
                return schema(format!("restriction {from:?} -> {to:?} names an unlisted intersection"));
            };
            if to.len() != from.len() + 1 || !from.iter().all(|i| to.contains(i)) {
                return schema(format!("restriction {from:?} -> {to:?} is not a codimension-one inclusion"));
            }
            if m.rows() != dt || m.cols() != df {
                return schema(format!("restriction {from:?} -> {to:?} must be {dt}x{df}"));
            }
        }
        for s in self.sections.keys().filter(|s| s.len() > 1) {
            for i in 0..s.len() {
                let face = without(s, i);
                if !self.restrictions.contains_key(&(face.clone(), s.clone())) {
                    return Err(CosimplicialError::MissingRestriction { from: face, to: s.clone() });
                }
            }
        }
        for s in self.sections.keys().filter(|s| s.len() > 2) {
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    let a = without(s, i);
                    let b = without(s, j);
                    let ab = without(&a, j - 1);
                    let via_a = self.restrictions[&(a.clone(), s.clone())].mul(&self.restrictions[&(ab.clone(), a)]);
                    let via_b = self.restrictions[&(b.clone(), s.clone())].mul(&self.restrictions[&(ab, b)]);
                    if via_a != via_b {
                        return Err(CosimplicialError::NonFunctorial(s.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction `U_from -> U_to` for any `from ⊆ to`, composed along
    /// single-element extensions.
    fn restriction(&self, from: &[usize], to: &[usize], memo: &mut BTreeMap<(Vec<usize>, Vec<usize>), Matrix>) -> Matrix {
        if from == to {
            return Matrix::identity(self.sections[from]);
        }
        let key = (from.to_vec(), to.to_vec());
        if let Some(m) = memo.get(&key) {
            return m.clone();
        }
        let extra = *to.iter().find(|i| !from.contains(i)).expect("proper inclusion");
        let mut mid = from.to_vec();
        mid.push(extra);
        mid.sort_unstable();
        let m = self.restriction(&mid, to, memo).mul(&self.restrictions[&(from.to_vec(), mid)]);
        memo.insert(key, m.clone());
        m
    }
}

fn without(s: &[usize], i: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect()
}

fn support(t: &[usize]) -> Vec<usize> {
    let mut s = t.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Level `n` blocks: ordered `(n+1)`-tuples of opens with nonempty
/// intersection, each with its offset.
struct Level {
    offsets: BTreeMap<Vec<usize>, usize>,
    dim: usize,
}

fn level(input: &CechInput, n: usize) -> Level {
    let k = input.opens.len();
    let mut offsets = BTreeMap::new();
    let mut dim = 0;
    let mut t = vec![0usize; n + 1];
    loop {
        if let Some(&d) = input.sections.get(&support(&t)) {
            offsets.insert(t.clone(), dim);
            dim += d;
        }
        // next tuple in lexicographic order
        let mut p = n + 1;
        loop {
            if p == 0 {
                return Level { offsets, dim };
            }
            p -= 1;
            t[p] += 1;
            if t[p] < k {
                break;
            }
            t[p] = 0;
        }
    }
}

/// The Čech cosimplicial algebra through level `top`: level `n` is the
/// product of `A_{U_{i_0} ∩ ... ∩ U_{i_n}}` over ordered tuples, `d^k`
/// drops the `k`-th index and restricts, `s^j` repeats the `j`-th index.
pub fn cech_build(input: &CechInput, top: usize) -> Result<CosimplicialAlgebra, CosimplicialError> {
    input.validate()?;
    let levels: Vec<Level> = (0..=top).map(|n| level(input, n)).collect();
    let mut memo = BTreeMap::new();

    let mut cofaces = Vec::new();
    for n in 0..top {
        let (src, dst) = (&levels[n], &levels[n + 1]);
        let mut maps = Vec::new();
        for k in 0..=n + 1 {
            let mut m = Matrix::zeros(dst.dim, src.dim);
            for (t, &row) in &dst.offsets {
                let s = without(t, k);
                let col = src.offsets[&s];
                let r = input.restriction(&support(&s), &support(t), &mut memo);
                for (a, b, x) in r.entries() {
                    m.set(row + a, col + b, x.clone());
                }
            }
            maps.push(m);
        }
        cofaces.push(maps);
    }

    let mut codegeneracies = vec![Vec::new()];
    for n in 1..=top {
        let (src, dst) = (&levels[n], &levels[n - 1]);
        let mut maps = Vec::new();
        for j in 0..n {
            let mut m = Matrix::zeros(dst.dim, src.dim);
            for (t, &row) in &dst.offsets {
                let mut s = t.clone();
                s.insert(j, t[j]);
                let col = src.offsets[&s];
                for a in 0..input.sections[&support(t)] {
                    m.set(row + a, col + a, num_traits::One::one());
                }
            }
            maps.push(m);
        }
        codegeneracies.push(maps);
    }

    let dims = levels.iter().map(|l| l.dim).collect();
    let space = CosimplicialSpace::new(dims, cofaces, codegeneracies)?;
    Ok(CosimplicialAlgebra::pointwise(space))
}

/// Example covers.
pub mod models {
    use super::*;
    use crate::linalg::rational::int;

    fn ones(rows: usize) -> Matrix {
        Matrix::from_rows(rows, 1, &vec![vec![int(1)]; rows])
    }

    pub fn single_open() -> CechInput {
        CechInput {
            opens: vec!["U".into()],
            sections: BTreeMap::from([(vec![0], 1)]),
            restrictions: BTreeMap::new(),
        }
    }

    /// Two arcs covering a circle; their intersection has two components.
    pub fn circle() -> CechInput {
        CechInput {
            opens: vec!["U0".into(), "U1".into()],
            sections: BTreeMap::from([(vec![0], 1), (vec![1], 1), (vec![0, 1], 2)]),
            restrictions: BTreeMap::from([((vec![0], vec![0, 1]), ones(2)), ((vec![1], vec![0, 1]), ones(2))]),
        }
    }

    /// Three pairwise-overlapping opens with connected triple overlap.
    pub fn disc() -> CechInput {
        let mut sections = BTreeMap::new();
        let mut restrictions = BTreeMap::new();
        for s in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            for i in 0..s.len() {
                if s.len() > 1 {
                    restrictions.insert((without(&s, i), s.clone()), ones(1));
                }
            }
            sections.insert(s, 1);
        }
        CechInput {
            opens: vec!["U0".into(), "U1".into(), "U2".into()],
            sections,
            restrictions,
        }
    }

    /// Two disjoint opens.
    pub fn two_points() -> CechInput {
        CechInput {
            opens: vec!["P".into(), "Q".into()],
            sections: BTreeMap::from([(vec![0], 1), (vec![1], 1)]),
            restrictions: BTreeMap::new(),
        }
    }
}
