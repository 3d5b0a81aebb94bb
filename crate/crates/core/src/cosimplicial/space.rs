//! Cosimplicial vector spaces: identities, conormalization, cohomology and
//! the Hodge filtration.

use serde::Serialize;

use super::CosimplicialError;
use crate::linalg::rational::Rational;
use crate::linalg::{Matrix, Subspace};

/// Levels `C^0 .. C^top` with cofaces `d^i: C^n -> C^{n+1}` (`0 <= i <= n+1`)
/// and codegeneracies `s^j: C^n -> C^{n-1}` (`0 <= j <= n-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosimplicialSpace {
    dims: Vec<usize>,
    /// `cofaces[n][i]` leaves level `n`.
    cofaces: Vec<Vec<Matrix>>,
    /// `codegeneracies[n][j]` leaves level `n`; empty at level 0.
    codegeneracies: Vec<Vec<Matrix>>,
}

impl CosimplicialSpace {
    pub fn new(dims: Vec<usize>, cofaces: Vec<Vec<Matrix>>, codegeneracies: Vec<Vec<Matrix>>) -> Result<Self, CosimplicialError> {
        let top = dims.len().checked_sub(1).ok_or(CosimplicialError::Empty)?;
        if cofaces.len() != top || codegeneracies.len() != top + 1 {
            return Err(CosimplicialError::Shape("wrong number of coface or codegeneracy levels".into()));
        }
        for (n, maps) in cofaces.iter().enumerate() {
            if maps.len() != n + 2 {
                return Err(CosimplicialError::Shape(format!("level {n} needs {} cofaces", n + 2)));
            }
            for (i, m) in maps.iter().enumerate() {
                if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                    return Err(CosimplicialError::Shape(format!("coface d^{i} at level {n} has the wrong shape")));
                }
            }
        }
        for (n, maps) in codegeneracies.iter().enumerate() {
            if maps.len() != n {
                return Err(CosimplicialError::Shape(format!("level {n} needs {n} codegeneracies")));
            }
            for (j, m) in maps.iter().enumerate() {
                if m.rows() != dims[n - 1] || m.cols() != dims[n] {
                    return Err(CosimplicialError::Shape(format!("codegeneracy s^{j} at level {n} has the wrong shape")));
                }
            }
        }
        Ok(CosimplicialSpace {
            dims,
            cofaces,
            codegeneracies,
        })
    }

    /// Every map the identity on a `dim`-dimensional space.
    pub fn constant(dim: usize, top: usize) -> Self {
        let id = Matrix::identity(dim);
        CosimplicialSpace {
            dims: vec![dim; top + 1],
            cofaces: (0..top).map(|n| vec![id.clone(); n + 2]).collect(),
            codegeneracies: (0..=top).map(|n| vec![id.clone(); n]).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coface(&self, n: usize, i: usize) -> &Matrix {
        &self.cofaces[n][i]
    }

    pub fn codegeneracy(&self, n: usize, j: usize) -> &Matrix {
        &self.codegeneracies[n][j]
    }

    pub fn coface_mut(&mut self, n: usize, i: usize) -> &mut Matrix {
        &mut self.cofaces[n][i]
    }

    /// Moore differential `sum_i (-1)^i d^i: C^n -> C^{n+1}`.
    pub fn differential(&self, n: usize) -> Matrix {
        let mut out = Matrix::zeros(self.dims[n + 1], self.dims[n]);
        for (i, d) in self.cofaces[n].iter().enumerate() {
            out = if i % 2 == 0 { out.add(d) } else { out.sub(d) };
        }
        out
    }

    /// The same object truncated at a lower top level.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top());
        CosimplicialSpace {
            dims: self.dims[..=top].to_vec(),
            cofaces: self.cofaces[..top].to_vec(),
            codegeneracies: self.codegeneracies[..=top].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub level: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every cosimplicial identity that fits below the top level.
pub fn verify_cosimplicial(c: &CosimplicialSpace) -> IdentityReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut check = |ok: bool, identity: &str, level: usize, i: usize, j: usize| {
        checked += 1;
        if !ok {
            violations.push(IdentityViolation {
                identity: identity.to_string(),
                level,
                i,
                j,
            });
        }
    };
    let top = c.top();
    let d = |n: usize, i: usize| c.coface(n, i);
    let s = |n: usize, j: usize| c.codegeneracy(n, j);

    // d^j d^i = d^i d^{j-1} on C^n, i < j
    for n in 0..top.saturating_sub(1) {
        for j in 1..=n + 2 {
            for i in 0..j {
                check(d(n + 1, j).mul(d(n, i)) == d(n + 1, i).mul(d(n, j - 1)), "d^j d^i = d^i d^(j-1)", n, i, j);
            }
        }
    }
    // s^j s^i = s^i s^{j+1} on C^n, i <= j
    for n in 2..=top {
        for j in 0..n - 1 {
            for i in 0..=j {
                check(s(n - 1, j).mul(s(n, i)) == s(n - 1, i).mul(s(n, j + 1)), "s^j s^i = s^i s^(j+1)", n, i, j);
            }
        }
    }
    // s^j d^i on C^n, with s^j leaving level n+1
    for n in 0..top {
        let id = Matrix::identity(c.dim(n));
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = s(n + 1, j).mul(d(n, i));
                if i < j {
                    check(lhs == d(n - 1, i).mul(s(n, j - 1)), "s^j d^i = d^i s^(j-1)", n, i, j);
                } else if i == j || i == j + 1 {
                    check(lhs == id, "s^j d^i = id", n, i, j);
                } else {
                    check(lhs == d(n - 1, i - 1).mul(s(n, j)), "s^j d^i = d^(i-1) s^j", n, i, j);
                }
            }
        }
    }
    IdentityReport { checked, violations }
}

/// Conormalized cochains `N^n = ∩_j ker s^j` inside the Moore complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConormalizedComplex {
    pub spaces: Vec<Subspace>,
    /// Moore differentials `C^n -> C^{n+1}`, `n < top`.
    pub differentials: Vec<Matrix>,
}

pub fn conormalize(c: &CosimplicialSpace) -> ConormalizedComplex {
    let spaces = (0..=c.top())
        .map(|n| {
            if n == 0 {
                return Subspace::full(c.dim(0));
            }
            let stacked: Vec<&Matrix> = (0..n).map(|j| c.codegeneracy(n, j)).collect();
            Matrix::vstack(&stacked).kernel()
        })
        .collect();
    ConormalizedComplex {
        spaces,
        differentials: (0..c.top()).map(|n| c.differential(n)).collect(),
    }
}

/// Cohomology of a cochain complex given by subspaces and ambient
/// differentials. Only levels with an outgoing differential are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    /// Representative cocycles, as vectors of `C^n`.
    pub representatives: Vec<Vec<Vec<Rational>>>,
    cocycles: Vec<Subspace>,
    coboundaries: Vec<Subspace>,
}

impl Cohomology {
    fn of(spaces: &[Subspace], differentials: &[Matrix]) -> Self {
        let mut dims = Vec::new();
        let mut representatives = Vec::new();
        let mut cocycles = Vec::new();
        let mut coboundaries = Vec::new();
        for n in 0..differentials.len() {
            let z = spaces[n]
                .intersect(&differentials[n].kernel())
                .expect("level dimensions agree");
            let b = if n == 0 {
                Subspace::zero(spaces[0].ambient_dim())
            } else {
                spaces[n - 1].map(&differentials[n - 1])
            };
            let reps = z.complement_in(&b);
            dims.push(reps.len());
            representatives.push(reps);
            cocycles.push(z);
            coboundaries.push(b);
        }
        Cohomology {
            dims,
            representatives,
            cocycles,
            coboundaries,
        }
    }

    /// Coordinates of a cocycle's class in the basis of representatives.
    pub fn class_coordinates(&self, n: usize, cocycle: &[Rational]) -> Option<Vec<Rational>> {
        if !self.cocycles.get(n)?.contains(cocycle) {
            return None;
        }
        let reps = &self.representatives[n];
        let mut columns = reps.clone();
        columns.extend(self.coboundaries[n].basis().iter().cloned());
        let m = Matrix::from_columns(cocycle.len(), &columns);
        let sol = m.solve(cocycle)?;
        Some(sol[..reps.len()].to_vec())
    }
}

/// Cohomology `H^0 .. H^{top-1}` of the conormalized complex.
pub fn cohomology(c: &CosimplicialSpace) -> Cohomology {
    let n = conormalize(c);
    Cohomology::of(&n.spaces, &n.differentials)
}

/// Cohomology of the unnormalized (Moore) complex, for comparison.
pub fn moore_cohomology(c: &CosimplicialSpace) -> Cohomology {
    let spaces: Vec<Subspace> = c.dims().iter().map(|&d| Subspace::full(d)).collect();
    let differentials: Vec<Matrix> = (0..c.top()).map(|n| c.differential(n)).collect();
    Cohomology::of(&spaces, &differentials)
}

/// `Fil^i C^n`: everything for `i = 0`, zero for `n < i`, otherwise the
/// common kernel of all composites of `n + 1 - i` codegeneracies
/// `C^n -> C^{i-1}`.
pub fn hodge_filtration(c: &CosimplicialSpace, i: usize) -> Vec<Subspace> {
    (0..=c.top())
        .map(|n| {
            if i == 0 {
                Subspace::full(c.dim(n))
            } else if n < i {
                Subspace::zero(c.dim(n))
            } else {
                let composites = codegeneracy_composites(c, n, n + 1 - i);
                let refs: Vec<&Matrix> = composites.iter().collect();
                Matrix::vstack(&refs).kernel()
            }
        })
        .collect()
}

/// All composites `s^{j_1} ... s^{j_k}: C^n -> C^{n-k}` in normal form
/// `j_1 < ... < j_k`, rightmost applied first.
fn codegeneracy_composites(c: &CosimplicialSpace, n: usize, k: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(c: &CosimplicialSpace, n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Matrix>) {
        if chosen.len() == k {
            let mut m = Matrix::identity(c.dim(n));
            let mut level = n;
            for &j in chosen.iter().rev() {
                m = c.codegeneracy(level, j).mul(&m);
                level -= 1;
            }
            out.push(m);
            return;
        }
        for j in start..n {
            chosen.push(j);
            rec(c, n, k, j + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(c, n, k, 0, &mut chosen, &mut out);
    out
}

/// Whether levelwise subspaces are preserved by all cofaces and
/// codegeneracies.
pub fn is_subobject(c: &CosimplicialSpace, sub: &[Subspace]) -> bool {
    (0..c.top()).all(|n| (0..=n + 1).all(|i| sub[n].map(c.coface(n, i)).is_subspace_of(&sub[n + 1])))
        && (1..=c.top()).all(|n| (0..n).all(|j| sub[n].map(c.codegeneracy(n, j)).is_subspace_of(&sub[n - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    #[test]
    fn constant_object() {
        let c = CosimplicialSpace::constant(2, 4);
        assert!(verify_cosimplicial(&c).passed());
        let n = conormalize(&c);
        assert_eq!(n.spaces.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![2, 0, 0, 0, 0]);
        assert_eq!(cohomology(&c).dims, vec![2, 0, 0, 0]);
        assert_eq!(moore_cohomology(&c).dims, vec![2, 0, 0, 0]);
    }

    #[test]
    fn flipped_coface_is_caught() {
        let mut c = CosimplicialSpace::constant(2, 3);
        *c.coface_mut(1, 0) = c.coface(1, 0).scale(&int(-1));
        let r = verify_cosimplicial(&c);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.identity == "s^j d^i = id"));
    }

    #[test]
    fn hodge_on_constant() {
        let c = CosimplicialSpace::constant(1, 3);
        let fil4 = hodge_filtration(&c, 4);
        assert!(fil4.iter().all(|s| s.is_zero()));
        let n = conormalize(&c);
        for k in 1..=3 {
            assert_eq!(hodge_filtration(&c, k)[k], n.spaces[k]);
            assert!(is_subobject(&c, &hodge_filtration(&c, k)));
        }
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(CosimplicialSpace::new(vec![], vec![], vec![]), Err(CosimplicialError::Empty)));
        let bad = CosimplicialSpace::new(vec![1, 1], vec![vec![Matrix::identity(1)]], vec![vec![], vec![Matrix::identity(1)]]);
        assert!(matches!(bad, Err(CosimplicialError::Shape(_))));
    }
}
