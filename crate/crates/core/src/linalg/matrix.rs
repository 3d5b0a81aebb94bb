//! Sparse rational matrices and exact row reduction.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{axpy, Rational, SparseVec};
use super::subspace::Subspace;

/// A `rows x cols` matrix over the rationals stored as a sparse map
/// `(row, col) -> entry`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Matrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut m = Matrix::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = data
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Matrix::from_rows(rows, cols, &dense)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]` (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                assert!(i < rows, "column {j} index {i} out of range");
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].insert(j, v.clone());
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                out[i] = v.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Rational) -> Matrix {
        if a.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v * a)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            let s = out.get(i, j) + v;
            out.set(i, j, s);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let other_rows = other.row_vectors();
        let mut acc = vec![SparseVec::new(); self.rows];
        for (&(i, k), a) in &self.entries {
            axpy(&mut acc[i], a, &other_rows[k]);
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, row) in acc.into_iter().enumerate() {
            for (j, v) in row {
                out.entries.insert((i, j), v);
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), a) in &self.entries {
            if let Some(x) = v.get(&j) {
                super::rational::add_entry(&mut out, i, a * x);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut out = Matrix::zeros(blocks.iter().map(|b| b.rows).sum(), cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            for (&(i, j), v) in &b.entries {
                out.entries.insert((i + offset, j), v.clone());
            }
            offset += b.rows;
        }
        out
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (&(i, j), v) in &b.entries {
                out.entries.insert((i + r0, j + c0), v.clone());
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Submatrix on the given row and column index ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (&(i, j), v) in &self.entries {
            if rows.contains(&i) && cols.contains(&j) {
                out.entries.insert((i - rows.start, j - cols.start), v.clone());
            }
        }
        out
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.row_vectors(), true);
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                out.entries.insert((i, j), v);
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; eliminate along the shorter side.
        let rows = if self.rows <= self.cols {
            self.row_vectors()
        } else {
            self.transpose().row_vectors()
        };
        rref_rows(rows, false).1.len()
    }

    /// Null space `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let (rows, pivots) = rref_rows(self.row_vectors(), true);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(a) = row.get(&free) {
                    v[p] = -a.clone();
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    /// One solution of `self * x = b`, if any; free variables are zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut rows = self.row_vectors();
        for (row, x) in rows.iter_mut().zip(b) {
            if !x.is_zero() {
                row.insert(self.cols, x.clone());
            }
        }
        let (rows, pivots) = rref_rows(rows, true);
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            if p == self.cols {
                return None;
            }
            if let Some(v) = row.get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vec<Rational>> = self
            .transpose()
            .row_vectors()
            .iter()
            .map(|r| super::rational::to_dense(r, self.rows))
            .collect();
        Subspace::span(self.rows, cols)
    }

    /// Rows of the matrix as a subspace of `Q^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(
            self.cols,
            self.row_vectors()
                .iter()
                .map(|r| super::rational::to_dense(r, self.cols))
                .collect(),
        )
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse Gaussian elimination. Returns the nonzero echelon rows (sorted by
/// pivot, leading entry 1) and their pivot columns. With `reduce` set the rows
/// are fully reduced (zeros above every pivot), giving the canonical RREF.
pub(crate) fn rref_rows(rows: Vec<SparseVec>, reduce: bool) -> (Vec<SparseVec>, Vec<usize>) {
    let mut remaining: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut echelon: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();

    while !remaining.is_empty() {
        let col = remaining
            .iter()
            .map(|r| *r.keys().next().expect("nonempty row"))
            .min()
            .expect("nonempty");
        // Markowitz-style choice: shortest row with a leading entry in `col`.
        let (best, _) = remaining
            .iter()
            .enumerate()
            .filter(|(_, r)| r.keys().next() == Some(&col))
            .min_by_key(|(_, r)| r.len())
            .expect("some row leads at col");
        let mut pivot_row = remaining.swap_remove(best);
        let lead = pivot_row[&col].clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for v in pivot_row.values_mut() {
                *v *= &inv;
            }
        }
        for r in remaining.iter_mut() {
            if let Some(a) = r.get(&col).cloned() {
                axpy(r, &-a, &pivot_row);
            }
        }
        remaining.retain(|r| !r.is_empty());
        echelon.push(pivot_row);
        pivots.push(col);
    }

    if reduce {
        for k in (0..echelon.len()).rev() {
            let p = pivots[k];
            let (above, rest) = echelon.split_at_mut(k);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                if let Some(a) = r.get(&p).cloned() {
                    axpy(r, &-a, pivot_row);
                }
            }
        }
    }
    (echelon, pivots)
}
