//! Built-in homotopy tables of deformation representation rings for the
//! example groups, plus the general finitely-generated-abelian builder.

use std::fmt;
use std::str::FromStr;

use crate::chain::{homology, ChainComplex};
use crate::error::AhssError;
use crate::graded::{GradedAbelianGroup, GroupEntry};
use crate::matrix::ZMatrix;
use crate::snf::cokernel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupName {
    Heisenberg,
    ZSemidirectZ2,
    Z2SemidirectZ4,
    Free(u32),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Heisenberg => write!(f, "heisenberg"),
            GroupName::ZSemidirectZ2 => write!(f, "z_semidirect_z2"),
            GroupName::Z2SemidirectZ4 => write!(f, "z2_semidirect_z4"),
            GroupName::Free(k) => write!(f, "free({k})"),
        }
    }
}

impl FromStr for GroupName {
    type Err = AhssError;
    fn from_str(s: &str) -> Result<Self, AhssError> {
        match s {
            "heisenberg" => Ok(GroupName::Heisenberg),
            "z_semidirect_z2" => Ok(GroupName::ZSemidirectZ2),
            "z2_semidirect_z4" => Ok(GroupName::Z2SemidirectZ4),
            _ => {
                if let Some(inner) = s.strip_prefix("free(").and_then(|r| r.strip_suffix(')')) {
                    let k: u32 = inner
                        .parse()
                        .map_err(|_| AhssError::UnknownGroup(s.to_string()))?;
                    if k == 0 {
                        return Err(AhssError::UnknownGroup(s.to_string()));
                    }
                    return Ok(GroupName::Free(k));
                }
                Err(AhssError::UnknownGroup(s.to_string()))
            }
        }
    }
}

/// Homotopy of the representation ring of `Z^r + A` for a finite abelian
/// group `A` given by its cyclic invariants: free of rank `|A| * C(r, p)`
/// in degree `p <= r`, zero above.
pub fn rep_ring_abelian(r: u32, torsion_invariants: &[u64], max_deg: u32) -> GradedAbelianGroup {
    let a_order: u64 = torsion_invariants.iter().product();
    let mut out = GradedAbelianGroup::zero();
    for p in 0..=max_deg.min(r) {
        out.set(p, GroupEntry::free(a_order * binomial(r, p)));
    }
    out
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Representation-ring homotopy tables for the example groups.
pub fn rep_ring_fixture(name: &GroupName) -> GradedAbelianGroup {
    match name {
        GroupName::Heisenberg => {
            // Countably many irreducible families indexed by roots of unity,
            // contributing ranks 1, 2, 1 in degrees 0, 1, 2.
            let mut out = GradedAbelianGroup::zero();
            out.set(0, GroupEntry::countable_per_unit(1));
            out.set(1, GroupEntry::countable_per_unit(2));
            out.set(2, GroupEntry::countable_per_unit(1));
            out
        }
        GroupName::ZSemidirectZ2 => {
            // Four characters modulo one relation class: the quotient of Z^4
            // by the image of the column (1, 1, -1, -1).
            let column = ZMatrix::from_i64(4, 1, &[1, 1, -1, -1]);
            let inv = cokernel(&column);
            let mut out = GradedAbelianGroup::zero();
            out.set(
                0,
                GroupEntry {
                    rank: crate::graded::Rank::Finite(inv.rank as u64),
                    torsion: inv.torsion,
                    annotation: None,
                },
            );
            out
        }
        GroupName::Z2SemidirectZ4 => homology(&z2_semidirect_z4_complex()),
        GroupName::Free(k) => {
            let mut out = GradedAbelianGroup::zero();
            out.set(0, GroupEntry::free(1));
            out.set(1, GroupEntry::free(*k as u64));
            out
        }
    }
}

/// Filtration cell structure for the Z^2 x| Z/4 example: ten 0-cells
/// (eight characters and two 2-dimensional irreducibles), two 1-cells
/// attaching the exceptional points onto previously attached 0-cells
/// (their boundary columns hit distinct basis summands), and one 2-cell
/// attached by a map trivial in homology.
pub fn z2_semidirect_z4_complex() -> ChainComplex {
    let mut d1 = ZMatrix::zeros(10, 2);
    d1[(8, 0)] = 1.into();
    d1[(0, 0)] = (-1).into();
    d1[(9, 1)] = 1.into();
    d1[(0, 1)] = (-1).into();
    let d2 = ZMatrix::zeros(2, 1);
    ChainComplex::new(vec![10, 2, 1], vec![d1, d2]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{Annotation, Rank};

    #[test]
    fn heisenberg_table() {
        let g = rep_ring_fixture(&GroupName::Heisenberg);
        for (deg, per_unit) in [(0u32, 1u64), (1, 2), (2, 1)] {
            let e = g.entry(deg).unwrap();
            assert_eq!(e.rank, Rank::Countable);
            assert_eq!(
                e.annotation,
                Some(Annotation::PerRootOfUnity { rank: per_unit })
            );
        }
        assert_eq!(g.rank_at(3), Rank::Finite(0));
    }

    #[test]
    fn z_semidirect_z2_table() {
        let g = rep_ring_fixture(&GroupName::ZSemidirectZ2);
        assert_eq!(g.rank_at(0), Rank::Finite(3));
        assert!(g.torsion_at(0).is_empty());
        assert_eq!(g.rank_at(1), Rank::Finite(0));
    }

    #[test]
    fn z2_semidirect_z4_table() {
        let g = rep_ring_fixture(&GroupName::Z2SemidirectZ4);
        assert_eq!(g.rank_at(0), Rank::Finite(8));
        assert_eq!(g.rank_at(1), Rank::Finite(0));
        assert_eq!(g.rank_at(2), Rank::Finite(1));
        assert!(!g.has_torsion());
    }

    #[test]
    fn free_group_table() {
        let g = rep_ring_fixture(&GroupName::Free(3));
        assert_eq!(g.rank_at(0), Rank::Finite(1));
        assert_eq!(g.rank_at(1), Rank::Finite(3));
        assert_eq!(g.rank_at(2), Rank::Finite(0));
    }

    #[test]
    fn abelian_ranks() {
        // Free part only: tensor powers of the circle homology.
        let g = rep_ring_abelian(1, &[], 10);
        assert_eq!(g.rank_at(0), Rank::Finite(1));
        assert_eq!(g.rank_at(1), Rank::Finite(1));
        assert_eq!(g.rank_at(2), Rank::Finite(0));
        let g = rep_ring_abelian(2, &[], 10);
        assert_eq!(
            (g.rank_at(0), g.rank_at(1), g.rank_at(2)),
            (Rank::Finite(1), Rank::Finite(2), Rank::Finite(1))
        );
        // Finite part scales every degree by |A|.
        let g = rep_ring_abelian(0, &[2], 10);
        assert_eq!(g.rank_at(0), Rank::Finite(2));
        assert_eq!(g.rank_at(1), Rank::Finite(0));
    }

    #[test]
    fn group_name_round_trip() {
        for s in ["heisenberg", "z_semidirect_z2", "z2_semidirect_z4", "free(5)"] {
            assert_eq!(s.parse::<GroupName>().unwrap().to_string(), s);
        }
        assert!("free(0)".parse::<GroupName>().is_err());
        assert!("so3".parse::<GroupName>().is_err());
    }
}
