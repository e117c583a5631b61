//! Dense row-major complex matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{c_zero, C, Real};

#[derive(Clone, PartialEq)]
pub struct CMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<C<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![c_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(R::one(), R::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<R>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C<R>>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Real diagonal matrix from phase factors `exp(2 pi i t)`.
    pub fn diag(entries: &[C<R>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<R>] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)] + a * other[(l, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, s: C<R>) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * s)
    }

    pub fn frob_norm(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn dist_frob(&self, other: &Self) -> R {
        self.sub(other).frob_norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = R::zero();
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            m = m.max((*a - *b).norm());
        }
        m
    }

    pub fn trace(&self) -> C<R> {
        assert!(self.is_square());
        let mut t = c_zero();
        for i in 0..self.rows {
            t = t + self[(i, i)];
        }
        t
    }

    /// Residual `|| M* M - I ||_F`.
    pub fn unitarity_residual(&self) -> R {
        let gram = self.adjoint().mul(self);
        gram.dist_frob(&Self::identity(self.cols))
    }

    pub fn column(&self, j: usize) -> Vec<C<R>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<R>]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn columns_range(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.cols);
        Self::from_fn(self.rows, hi - lo, |i, j| self[(i, lo + j)])
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)];
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    out[(off + i, j)] = b[(i, j)];
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(ro + i, co + j)] = b[(i, j)];
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out[(i * other.rows + p, j * other.cols + q)] = a * other[(p, q)];
                    }
                }
            }
        }
        out
    }

    /// Apply to a vector.
    pub fn apply(&self, v: &[C<R>]) -> Vec<C<R>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = c_zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    /// Row-major flattening of a square matrix into a vector of length n*n.
    pub fn vec_rm(&self) -> Vec<C<R>> {
        self.data.clone()
    }

    pub fn from_vec_rm(rows: usize, cols: usize, data: Vec<C<R>>) -> Self {
        assert_eq!(data.len(), rows * cols);
        CMatrix { rows, cols, data }
    }
}

impl<R: Real> Index<(usize, usize)> for CMatrix<R> {
    type Output = C<R>;
    fn index(&self, (i, j): (usize, usize)) -> &C<R> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for CMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<R> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for CMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self.data[i * self.cols + j];
                write!(f, "{:?}{:+?}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
