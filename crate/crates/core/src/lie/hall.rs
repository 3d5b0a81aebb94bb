//! Hall basis enumeration and rewriting of brackets into Hall words.
//!
//! Order: elements are sorted by degree, then lexicographically by the
//! indices of their (left, right) factors; degree-1 elements follow the
//! generator order. A bracket `[u, v]` of basis elements is a Hall word iff
//! `u < v` and, when `v = [v1, v2]`, `v1 <= u`.

use std::collections::HashMap;

use num_traits::One;

use super::LieTree;
use crate::linalg::rational::{add_entry, axpy, Rational, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HallWord {
    Generator(usize),
    Bracket(usize, usize),
}

#[derive(Clone, Debug)]
pub struct HallBasis {
    class_bound: usize,
    words: Vec<HallWord>,
    degrees: Vec<usize>,
    /// `offsets[d - 1]..offsets[d]` are the indices of degree `d`.
    offsets: Vec<usize>,
    lookup: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn new(num_generators: usize, class_bound: usize) -> Self {
        let mut words: Vec<HallWord> = (0..num_generators).map(HallWord::Generator).collect();
        let mut degrees = vec![1; num_generators];
        let mut offsets = vec![0, num_generators];
        let mut lookup = HashMap::new();

        for d in 2..=class_bound {
            let mut candidates = Vec::new();
            for a in 1..d {
                let b = d - a;
                for u in offsets[a - 1]..offsets[a] {
                    for v in offsets[b - 1]..offsets[b] {
                        if u >= v {
                            continue;
                        }
                        if let HallWord::Bracket(v1, _) = words[v] {
                            if v1 > u {
                                continue;
                            }
                        }
                        candidates.push((u, v));
                    }
                }
            }
            candidates.sort_unstable();
            for (u, v) in candidates {
                lookup.insert((u, v), words.len());
                words.push(HallWord::Bracket(u, v));
                degrees.push(d);
            }
            offsets.push(words.len());
        }

        HallBasis {
            class_bound,
            words,
            degrees,
            offsets,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn class_bound(&self) -> usize {
        self.class_bound
    }

    pub fn word(&self, i: usize) -> HallWord {
        self.words[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u, v)).copied()
    }

    pub fn tree(&self, i: usize) -> LieTree {
        match self.words[i] {
            HallWord::Generator(g) => LieTree::Generator(g),
            HallWord::Bracket(u, v) => LieTree::bracket(self.tree(u), self.tree(v)),
        }
    }

    /// Generator multiset of a word, as counts per generator.
    pub fn content(&self, i: usize, num_generators: usize) -> Vec<usize> {
        let mut out = vec![0; num_generators];
        self.add_content(i, &mut out);
        out
    }

    fn add_content(&self, i: usize, out: &mut [usize]) {
        match self.words[i] {
            HallWord::Generator(g) => out[g] += 1,
            HallWord::Bracket(u, v) => {
                self.add_content(u, out);
                self.add_content(v, out);
            }
        }
    }
}

/// Memoized rewriting of `[e_i, e_j]` into the Hall basis, truncated above
/// the class bound.
pub struct Rewriter<'a> {
    basis: &'a HallBasis,
    memo: HashMap<(usize, usize), SparseVec>,
}

impl<'a> Rewriter<'a> {
    pub fn new(basis: &'a HallBasis) -> Self {
        Rewriter {
            basis,
            memo: HashMap::new(),
        }
    }

    /// `[e_i, e_j]` for arbitrary basis indices.
    pub fn bracket(&mut self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => SparseVec::new(),
            Ordering::Less => self.ordered(i, j),
            Ordering::Greater => {
                let mut out = self.ordered(j, i);
                for v in out.values_mut() {
                    *v = -v.clone();
                }
                out
            }
        }
    }

    fn ordered(&mut self, u: usize, v: usize) -> SparseVec {
        if self.basis.degree(u) + self.basis.degree(v) > self.basis.class_bound() {
            return SparseVec::new();
        }
        if let Some(hit) = self.memo.get(&(u, v)) {
            return hit.clone();
        }
        let result = match self.basis.word(v) {
            HallWord::Bracket(v1, v2) if v1 > u => {
                // [u, [v1, v2]] = [[u, v1], v2] + [v1, [u, v2]]
                let mut acc = SparseVec::new();
                let left = self.bracket(u, v1);
                for (w, a) in &left {
                    let t = self.bracket(*w, v2);
                    axpy(&mut acc, a, &t);
                }
                let right = self.bracket(u, v2);
                for (w, a) in &right {
                    let t = self.bracket(v1, *w);
                    axpy(&mut acc, a, &t);
                }
                acc
            }
            _ => {
                let idx = self
                    .basis
                    .index_of(u, v)
                    .expect("standard bracket within the class bound is a Hall word");
                let mut out = SparseVec::new();
                add_entry(&mut out, idx, Rational::one());
                out
            }
        };
        self.memo.insert((u, v), result.clone());
        result
    }
}

/// Witt's formula: dimension of the degree-`n` part of the free Lie algebra
/// on `k` generators, `(1/n) * sum_{d | n} mu(d) k^(n/d)`.
pub fn witt_dim(num_generators: u64, degree: u32) -> u64 {
    use num_bigint::BigInt;
    assert!(degree >= 1, "degree must be positive");
    let n = degree as u64;
    let k = BigInt::from(num_generators);
    let mut total = BigInt::from(0);
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu != 0 {
            total += BigInt::from(mu) * k.pow((n / d) as u32);
        }
    }
    let q: BigInt = total / BigInt::from(n);
    u64::try_from(q).expect("Witt dimension fits in u64")
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
