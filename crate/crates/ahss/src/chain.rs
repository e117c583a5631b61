//! Chain complexes of finitely generated free abelian groups and their
//! integral homology.

use crate::error::AhssError;
use crate::graded::{GradedAbelianGroup, GroupEntry, Rank};
use crate::matrix::{Z, ZMatrix};
use crate::snf::smith_normal_form;

use num_traits::One;

/// `dims[p]` is the rank of the degree-`p` chain group; `boundary(p)` is the
/// matrix of `d_p: C_p -> C_{p-1}` (shape `dims[p-1] x dims[p]`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<ZMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<ZMatrix>) -> Result<Self, AhssError> {
        if dims.is_empty() {
            return Err(AhssError::InvalidComplex("no chain groups".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(AhssError::InvalidComplex(format!(
                "expected {} boundary maps for {} chain groups, got {}",
                dims.len() - 1,
                dims.len(),
                boundaries.len()
            )));
        }
        for (p, b) in boundaries.iter().enumerate() {
            let p = p + 1;
            if b.rows() != dims[p - 1] || b.cols() != dims[p] {
                return Err(AhssError::InvalidComplex(format!(
                    "boundary {} has shape {}x{}, expected {}x{}",
                    p,
                    b.rows(),
                    b.cols(),
                    dims[p - 1],
                    dims[p]
                )));
            }
        }
        for p in 1..boundaries.len() {
            let composite = boundaries[p - 1].mul(&boundaries[p]);
            if !composite.is_zero() {
                return Err(AhssError::InvalidComplex(format!(
                    "d_{} compose d_{} is nonzero",
                    p,
                    p + 1
                )));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, p: usize) -> Option<&ZMatrix> {
        if p == 0 {
            None
        } else {
            self.boundaries.get(p - 1)
        }
    }

    /// Euler characteristic: alternating sum of chain ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Tensor product of complexes; used for product cell structures.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex, AhssError> {
        // Only the zero-differential case is needed here; ranks convolve.
        if self.boundaries.iter().any(|b| !b.is_zero())
            || other.boundaries.iter().any(|b| !b.is_zero())
        {
            return Err(AhssError::InvalidComplex(
                "tensor product implemented for zero differentials only".into(),
            ));
        }
        let top = self.top_degree() + other.top_degree();
        let mut dims = vec![0usize; top + 1];
        for (p, &a) in self.dims.iter().enumerate() {
            for (q, &b) in other.dims.iter().enumerate() {
                dims[p + q] += a * b;
            }
        }
        let boundaries = (1..=top)
            .map(|p| ZMatrix::zeros(dims[p - 1], dims[p]))
            .collect();
        ChainComplex::new(dims, boundaries)
    }

    /// Standard minimal cell structure of the circle: one 0-cell, one 1-cell.
    pub fn circle() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![ZMatrix::zeros(1, 1)]).unwrap()
    }
}

/// Integral homology `H_p = ker d_p / im d_{p+1}`, computed exactly.
pub fn homology(complex: &ChainComplex) -> GradedAbelianGroup {
    let top = complex.top_degree();
    let mut snfs = Vec::with_capacity(top);
    for p in 1..=top {
        snfs.push(smith_normal_form(complex.boundary(p).unwrap()));
    }
    let rank_of = |p: usize| -> usize {
        if p == 0 || p > top {
            0
        } else {
            snfs[p - 1].rank()
        }
    };
    let mut out = GradedAbelianGroup::zero();
    for p in 0..=top {
        let free = complex.dims()[p] - rank_of(p) - rank_of(p + 1);
        let torsion: Vec<Z> = if p < top {
            snfs[p]
                .invariant_factors
                .iter()
                .filter(|f| !f.is_one())
                .cloned()
                .collect()
        } else {
            Vec::new()
        };
        out.set(
            p as u32,
            GroupEntry {
                rank: Rank::Finite(free as u64),
                torsion,
                annotation: None,
            },
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn circle_homology() {
        let h = homology(&ChainComplex::circle());
        assert_eq!(h.rank_at(0), Rank::Finite(1));
        assert_eq!(h.rank_at(1), Rank::Finite(1));
        assert!(h.torsion_at(0).is_empty() && h.torsion_at(1).is_empty());
    }

    #[test]
    fn torus_from_tensor_square() {
        let t2 = ChainComplex::circle().tensor(&ChainComplex::circle()).unwrap();
        assert_eq!(t2.dims(), &[1, 2, 1]);
        let h = homology(&t2);
        assert_eq!(h.rank_at(0), Rank::Finite(1));
        assert_eq!(h.rank_at(1), Rank::Finite(2));
        assert_eq!(h.rank_at(2), Rank::Finite(1));
    }

    #[test]
    fn projective_plane_torsion() {
        // One cell in each degree 0..2, d_2 = (2), d_1 = 0.
        let c = ChainComplex::new(
            vec![1, 1, 1],
            vec![ZMatrix::zeros(1, 1), ZMatrix::from_i64(1, 1, &[2])],
        )
        .unwrap();
        let h = homology(&c);
        assert_eq!(h.rank_at(0), Rank::Finite(1));
        assert_eq!(h.rank_at(1), Rank::Finite(0));
        assert_eq!(h.torsion_at(1), &[Z::from(2)]);
        assert_eq!(h.rank_at(2), Rank::Finite(0));
    }

    #[test]
    fn rejects_nonsquaring_boundary() {
        let d1 = ZMatrix::from_i64(1, 1, &[1]);
        let d2 = ZMatrix::from_i64(1, 1, &[1]);
        let err = ChainComplex::new(vec![1, 1, 1], vec![d1, d2]);
        assert!(err.is_err());
    }

    /// Rational rank oracle, independent of the Smith normal form path:
    /// fraction-free Gaussian elimination.
    fn bareiss_rank(m: &ZMatrix) -> usize {
        let mut a = m.clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut rank = 0;
        let mut prev = Z::from(1);
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let pivot = (row..rows).find(|&i| !a[(i, col)].is_zero());
            let Some(p) = pivot else { continue };
            a.swap_rows(row, p);
            for i in row + 1..rows {
                for j in col + 1..cols {
                    let num = a[(row, col)].clone() * a[(i, j)].clone()
                        - a[(i, col)].clone() * a[(row, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
                a[(i, col)] = Z::from(0);
            }
            prev = a[(row, col)].clone();
            rank += 1;
            row += 1;
        }
        rank
    }

    proptest! {
        /// Two-term complexes 0 -> Z^q -> Z^p -> 0 always satisfy d(d) = 0;
        /// homology ranks must agree with rational rank-nullity.
        #[test]
        fn ranks_match_rational_oracle(rows in 1usize..5, cols in 1usize..5,
                                       entries in proptest::collection::vec(-9i64..=9, 16)) {
            let data: Vec<i64> = entries.into_iter().take(rows * cols).collect();
            let m = ZMatrix::from_i64(rows, cols, &data);
            let r = bareiss_rank(&m);
            let c = ChainComplex::new(vec![rows, cols], vec![m]).unwrap();
            let h = homology(&c);
            assert_eq!(h.rank_at(0), Rank::Finite((rows - r) as u64));
            assert_eq!(h.rank_at(1), Rank::Finite((cols - r) as u64));
        }

        /// Euler characteristic equals the alternating sum of homology ranks
        /// (torsion does not contribute).
        #[test]
        fn euler_characteristic_consistency(rows in 1usize..4, cols in 1usize..4,
                                            entries in proptest::collection::vec(-6i64..=6, 9)) {
            let data: Vec<i64> = entries.into_iter().take(rows * cols).collect();
            let m = ZMatrix::from_i64(rows, cols, &data);
            let c = ChainComplex::new(vec![rows, cols], vec![m]).unwrap();
            let h = homology(&c);
            let alt = match (h.rank_at(0), h.rank_at(1)) {
                (Rank::Finite(a), Rank::Finite(b)) => a as i64 - b as i64,
                _ => unreachable!(),
            };
            assert_eq!(alt, c.euler_characteristic());
        }
    }
}
