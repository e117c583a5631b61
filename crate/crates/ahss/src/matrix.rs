//! Dense integer matrices over an exact signed integer type.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

use crate::error::AhssError;

/// Exact signed integer scalar. Implemented by `BigInt` and the fixed-width
/// signed primitives; all public computations in this crate use `BigInt`.
pub trait Int:
    Integer
    + Signed
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Clone
    + fmt::Debug
    + fmt::Display
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Clone
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Arbitrary-precision integer used throughout the crate.
pub type Z = BigInt;

/// Row-major dense matrix with exact integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

pub type ZMatrix = IntMatrix<Z>;

impl<I: Int> IntMatrix<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![I::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Result<Self, AhssError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AhssError::Shape("ragged row lengths".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a.clone() * other[(l, j)].clone();
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &I) {
        for j in 0..self.cols {
            let add = q.clone() * self[(src, j)].clone();
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &I) {
        for i in 0..self.rows {
            let add = q.clone() * self[(i, src)].clone();
            self[(i, dst)] += add;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = self[(r, j)].clone();
            self[(r, j)] = -v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<I, AhssError> {
        if self.rows != self.cols {
            return Err(AhssError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(I::one());
        }
        let mut a = self.clone();
        let mut sign = I::one();
        let mut prev = I::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match pivot {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(I::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
                a[(i, k)] = I::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }
}

impl ZMatrix {
    /// Convenience constructor from primitive entries, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(rows * cols, entries.len());
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Z::from(x)).collect(),
        }
    }
}

impl<I> Index<(usize, usize)> for IntMatrix<I> {
    type Output = I;
    fn index(&self, (i, j): (usize, usize)) -> &I {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<I> IndexMut<(usize, usize)> for IntMatrix<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut I {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<I: fmt::Debug> fmt::Debug for IntMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
