//! Smith normal form over an exact integer type, with full transform tracking.

use crate::matrix::{Int, IntMatrix};

/// Result of diagonalizing `M` by unimodular row and column operations:
/// `u * m * v = d` exactly, with `d` diagonal and its nonzero diagonal
/// entries forming a divisibility chain `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<I> {
    pub u: IntMatrix<I>,
    pub v: IntMatrix<I>,
    pub d: IntMatrix<I>,
    pub invariant_factors: Vec<I>,
}

impl<I: Int> SmithDecomposition<I> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Finitely generated abelian group invariants: `Z^rank + sum_j Z/torsion_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants<I> {
    pub rank: usize,
    pub torsion: Vec<I>,
}

fn find_pivot<I: Int>(m: &IntMatrix<I>, from: usize) -> Option<(usize, usize)> {
    // Smallest nonzero absolute value; ties broken by row-major position.
    let mut best: Option<((usize, usize), I)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((_, b)) if *b <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form<I: Int>(m: &IntMatrix<I>) -> SmithDecomposition<I> {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row t and column t. Inexact quotients leave smaller
        // remainders, so re-pivoting on the minimum terminates.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].clone().div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    // Remainder is strictly smaller than the pivot.
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].clone().div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // Enforce divisibility of every later entry by the pivot.
        let mut fixed = false;
        'divis: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d[(i, j)].clone().mod_floor(&d[(t, t)]).is_zero() {
                    let one = I::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    fixed = true;
                    break 'divis;
                }
            }
        }
        if fixed {
            continue; // redo step t with the new row content
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let mut invariant_factors = Vec::new();
    for i in 0..steps {
        if !d[(i, i)].is_zero() {
            invariant_factors.push(d[(i, i)].clone());
        }
    }
    SmithDecomposition {
        u,
        v,
        d,
        invariant_factors,
    }
}

/// Rank of an integer matrix (number of nonzero invariant factors).
pub fn rank<I: Int>(m: &IntMatrix<I>) -> usize {
    smith_normal_form(m).rank()
}

/// Cokernel of the map `Z^cols -> Z^rows` given by `m`.
pub fn cokernel<I: Int>(m: &IntMatrix<I>) -> AbelianInvariants<I> {
    let snf = smith_normal_form(m);
    let rank = m.rows() - snf.rank();
    let torsion = snf
        .invariant_factors
        .iter()
        .filter(|f| **f > I::one())
        .cloned()
        .collect();
    AbelianInvariants { rank, torsion }
}
