//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's linear algebra or Lie machinery.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use malcev::lie::{GradedLieAlgebra, LieElement, LieTree};
use malcev::linalg::rational::Rational;
use malcev::linalg::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    q(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

// ---------------------------------------------------------------------------
// Truncated free associative algebra over Q.

pub type Word = Vec<usize>;
pub type Assoc = BTreeMap<Word, Rational>;

pub fn letter(i: usize) -> Assoc {
    BTreeMap::from([(vec![i], Rational::one())])
}

pub fn unit() -> Assoc {
    BTreeMap::from([(Vec::new(), Rational::one())])
}

fn push(acc: &mut Assoc, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    *acc.entry(w).or_insert_with(Rational::zero) += c;
}

fn prune(mut a: Assoc) -> Assoc {
    a.retain(|_, c| !c.is_zero());
    a
}

pub fn add(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = a.clone();
    for (w, c) in b {
        push(&mut out, w.clone(), c.clone());
    }
    prune(out)
}

pub fn scale(a: &Assoc, s: &Rational) -> Assoc {
    prune(a.iter().map(|(w, c)| (w.clone(), c * s)).collect())
}

pub fn mul(a: &Assoc, b: &Assoc, max_len: usize) -> Assoc {
    let mut out = Assoc::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            push(&mut out, w, x * y);
        }
    }
    prune(out)
}

pub fn commutator(a: &Assoc, b: &Assoc, max_len: usize) -> Assoc {
    add(&mul(a, b, max_len), &scale(&mul(b, a, max_len), &-Rational::one()))
}

pub fn truncate(a: &Assoc, max_len: usize) -> Assoc {
    a.iter().filter(|(w, _)| w.len() <= max_len).map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// exp(x) for x without constant term, truncated at `n`.
pub fn exp(x: &Assoc, n: usize) -> Assoc {
    let mut out = unit();
    let mut power = unit();
    for k in 1..=n {
        power = scale(&mul(&power, x, n), &q(1, k as i64));
        out = add(&out, &power);
    }
    out
}

/// log(1 + z) for z without constant term, truncated at `n`.
pub fn log1p(z: &Assoc, n: usize) -> Assoc {
    let mut out = Assoc::new();
    let mut power = unit();
    for k in 1..=n {
        power = mul(&power, z, n);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = add(&out, &scale(&power, &q(sign, k as i64)));
    }
    out
}

/// log(exp(x) exp(y)) in the algebra truncated at word length `n`.
pub fn bch_oracle(x: &Assoc, y: &Assoc, n: usize) -> Assoc {
    let prod = mul(&exp(x, n), &exp(y, n), n);
    let z = add(&prod, &scale(&unit(), &-Rational::one()));
    log1p(&z, n)
}

pub fn expand_tree(t: &LieTree) -> Assoc {
    match t {
        LieTree::Generator(g) => letter(*g),
        LieTree::Bracket(a, b) => commutator(&expand_tree(a), &expand_tree(b), usize::MAX),
    }
}

/// Image of a Lie element under the embedding into the associative algebra.
pub fn expand(alg: &GradedLieAlgebra, x: &LieElement) -> Assoc {
    let mut out = Assoc::new();
    for (&i, c) in x.coeffs() {
        out = add(&out, &scale(&expand_tree(alg.tree(i)), c));
    }
    out
}

pub fn expand_basis(alg: &GradedLieAlgebra, i: usize) -> Assoc {
    expand_tree(alg.tree(i))
}

// ---------------------------------------------------------------------------
// Fraction-free elimination.

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank by Bareiss elimination over the integers; every division is
/// asserted exact.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = integer_rows(rows);
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                let (quo, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = quo;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Determinant of a square rational matrix by Bareiss.
pub fn bareiss_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let denominators = rows.iter().fold(Rational::one(), |acc, r| {
        let l = r.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        acc * Rational::from_integer(l)
    });
    let mut m = integer_rows(rows);
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    Rational::from_integer(det * sign) / denominators
}

pub fn dense(m: &Matrix) -> Vec<Vec<Rational>> {
    m.to_dense()
}

/// Rank of a family of associative polynomials.
pub fn assoc_rank(polys: &[Assoc]) -> usize {
    let words: BTreeSet<&Word> = polys.iter().flat_map(|p| p.keys()).collect();
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); index.len()];
            for (w, c) in p {
                row[index[w]] = c.clone();
            }
            row
        })
        .collect();
    if index.is_empty() {
        return 0;
    }
    bareiss_rank(&rows)
}

/// Incremental echelon basis of associative polynomials.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(Word, Assoc)>,
}

impl Echelon {
    /// Adds `p` if independent of the current rows; returns whether it was.
    pub fn insert(&mut self, mut p: Assoc) -> bool {
        for (pivot, row) in &self.rows {
            if let Some(c) = p.get(pivot).cloned() {
                p = add(&p, &scale(row, &-c));
            }
        }
        let Some((w, c)) = p.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let p = scale(&p, &c.recip());
        for (_, row) in self.rows.iter_mut() {
            if let Some(d) = row.get(&w).cloned() {
                *row = add(row, &scale(&p, &-d));
            }
        }
        self.rows.push((w, p));
        true
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Assoc> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Words and counting.

pub fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| {
        let rotated: Vec<usize> = w[i..].iter().chain(&w[..i]).copied().collect();
        w < rotated.as_slice()
    })
}

pub fn lyndon_words(k: usize, n: usize) -> Vec<Word> {
    all_words(k, n).into_iter().filter(|w| is_lyndon(w)).collect()
}

/// Standard bracketing of a Lyndon word: `w = uv` with `v` its longest
/// proper Lyndon suffix.
pub fn lyndon_bracket(w: &[usize]) -> Assoc {
    if w.len() == 1 {
        return letter(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a letter is Lyndon");
    commutator(&lyndon_bracket(&w[..split]), &lyndon_bracket(&w[split..]), usize::MAX)
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut result, mut p) = (n, 1i64, 2u64);
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

/// Ranks of the lower central series quotients of a surface group of
/// genus `g`, from the power sums of the roots of `1 - 2g t + t^2`.
pub fn surface_ranks(g: i64, n: usize) -> Vec<usize> {
    let mut p = vec![BigInt::from(2), BigInt::from(2 * g)];
    for d in 2..=n {
        let next = BigInt::from(2 * g) * &p[d - 1] - &p[d - 2];
        p.push(next);
    }
    (1..=n)
        .map(|m| {
            let mut total = BigInt::zero();
            for d in 1..=m {
                if m % d == 0 {
                    total += BigInt::from(mobius((m / d) as u64)) * &p[d];
                }
            }
            let (quo, rem) = total.div_rem(&BigInt::from(m));
            assert!(rem.is_zero());
            usize::try_from(quo).unwrap()
        })
        .collect()
}

/// Degree-by-degree dimensions of the Lie ideal generated by the given
/// homogeneous degree-2 Lie polynomials in the free Lie algebra on `k`
/// letters, through degree `n`. Degree `d + 1` is spanned by `[x_a, v]`
/// for `v` in degree `d`.
pub fn ideal_dims(k: usize, relations: &[Assoc], n: usize) -> Vec<usize> {
    let mut dims = vec![0; n];
    let mut current = Echelon::default();
    for r in relations {
        current.insert(r.clone());
    }
    if n >= 2 {
        dims[1] = current.len();
    }
    for d in 3..=n {
        let mut next = Echelon::default();
        for v in current.basis() {
            for a in 0..k {
                next.insert(commutator(&letter(a), &v, usize::MAX));
            }
        }
        dims[d - 1] = next.len();
        current = next;
    }
    dims
}

pub fn witt_oracle(k: usize, n: usize) -> usize {
    lyndon_words(k, n).len()
}

// ---------------------------------------------------------------------------
// Alternating Čech complex.

pub struct CoverData {
    pub sections: BTreeMap<Vec<usize>, usize>,
    pub restrictions: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Vec<Rational>>>,
}

/// Cohomology dimensions of the alternating Čech complex in degrees
/// `0..=top`.
pub fn alternating_cech(cover: &CoverData, top: usize) -> Vec<usize> {
    let by_size = |p: usize| -> Vec<(&Vec<usize>, usize)> {
        cover.sections.iter().filter(|(s, _)| s.len() == p + 1).map(|(s, &d)| (s, d)).collect()
    };
    let dim = |p: usize| by_size(p).iter().map(|(_, d)| d).sum::<usize>();
    let differential_rank = |p: usize| -> usize {
        let src = by_size(p);
        let dst = by_size(p + 1);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let mut offsets = BTreeMap::new();
        let mut off = 0;
        for (s, d) in &src {
            offsets.insert((*s).clone(), off);
            off += d;
        }
        let mut rows = Vec::new();
        for (t, dt) in &dst {
            let mut block = vec![vec![Rational::zero(); off]; *dt];
            for k in 0..t.len() {
                let mut face = (*t).clone();
                face.remove(k);
                let r = &cover.restrictions[&(face.clone(), (*t).clone())];
                let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                let o = offsets[&face];
                for (i, row) in r.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        block[i][o + j] += &sign * x;
                    }
                }
            }
            rows.extend(block);
        }
        bareiss_rank(&rows)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(differential_rank).collect();
    (0..=top)
        .map(|p| dim(p) - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] })
        .collect()
}

/// A cover of a finite graph by subgraphs; coefficients on `U_S` are the
/// functions on connected components of the induced subgraph.
#[derive(Debug, Clone)]
pub struct GraphCover {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub opens: Vec<BTreeSet<usize>>,
}

impl GraphCover {
    fn components(&self, vs: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in vs {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::from([v]);
            let mut stack = vec![v];
            while let Some(a) = stack.pop() {
                for &(x, y) in &self.edges {
                    for (s, t) in [(x, y), (y, x)] {
                        if s == a && vs.contains(&t) && comp.insert(t) {
                            stack.push(t);
                        }
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    fn intersection(&self, s: &[usize]) -> BTreeSet<usize> {
        let mut it = s.iter();
        let first = self.opens[*it.next().unwrap()].clone();
        it.fold(first, |acc, &i| acc.intersection(&self.opens[i]).copied().collect())
    }

    pub fn data(&self) -> CoverData {
        let n = self.opens.len();
        let mut comps = BTreeMap::new();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let vs = self.intersection(&s);
            if !vs.is_empty() {
                comps.insert(s, self.components(&vs));
            }
        }
        let sections = comps.iter().map(|(s, c)| (s.clone(), c.len())).collect();
        let mut restrictions = BTreeMap::new();
        for (t, ct) in &comps {
            if t.len() < 2 {
                continue;
            }
            for k in 0..t.len() {
                let mut face = t.clone();
                face.remove(k);
                let cs = &comps[&face];
                let m: Vec<Vec<Rational>> = ct
                    .iter()
                    .map(|small| {
                        cs.iter()
                            .map(|big| if small.is_subset(big) { Rational::one() } else { Rational::zero() })
                            .collect()
                    })
                    .collect();
                restrictions.insert((face, t.clone()), m);
            }
        }
        CoverData { sections, restrictions }
    }

    pub fn input(&self) -> malcev::cosimplicial::CechInput {
        let data = self.data();
        malcev::cosimplicial::CechInput {
            opens: (0..self.opens.len()).map(|i| format!("U{i}")).collect(),
            sections: data.sections.clone(),
            restrictions: data
                .restrictions
                .iter()
                .map(|(k, m)| {
                    let cols = m.first().map_or(0, Vec::len);
                    (k.clone(), Matrix::from_rows(m.len(), cols, m))
                })
                .collect(),
        }
    }
}

pub fn cover_data_of(input: &malcev::cosimplicial::CechInput) -> CoverData {
    CoverData {
        sections: input.sections.clone(),
        restrictions: input.restrictions.iter().map(|(k, m)| (k.clone(), m.to_dense())).collect(),
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
