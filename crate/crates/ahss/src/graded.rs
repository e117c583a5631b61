//! Graded abelian groups with countable ranks and torsion bookkeeping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::AhssError;
use crate::matrix::Z;

/// Free rank of one graded piece. `Countable` stands for a countably
/// infinite direct sum and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(u64),
    Countable,
}

impl Rank {
    pub fn add(self, other: Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Countable,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rank::Finite(0))
    }
}

/// Display bookkeeping attached to a countable-rank piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    PerRootOfUnity { rank: u64 },
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Annotation::PerRootOfUnity { rank } => {
                write!(f, "per root of unity: rank {rank}")
            }
        }
    }
}

impl FromStr for Annotation {
    type Err = AhssError;
    fn from_str(s: &str) -> Result<Self, AhssError> {
        let rest = s
            .strip_prefix("per root of unity: rank ")
            .ok_or_else(|| AhssError::Invalid(format!("unrecognized annotation: {s:?}")))?;
        let rank: u64 = rest
            .parse()
            .map_err(|_| AhssError::Invalid(format!("bad annotation rank: {rest:?}")))?;
        Ok(Annotation::PerRootOfUnity { rank })
    }
}

/// One degree of a graded abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEntry {
    pub rank: Rank,
    pub torsion: Vec<Z>,
    pub annotation: Option<Annotation>,
}

impl GroupEntry {
    pub fn free(rank: u64) -> Self {
        GroupEntry {
            rank: Rank::Finite(rank),
            torsion: Vec::new(),
            annotation: None,
        }
    }

    pub fn countable_per_unit(rank_per_unit: u64) -> Self {
        GroupEntry {
            rank: Rank::Countable,
            torsion: Vec::new(),
            annotation: Some(Annotation::PerRootOfUnity {
                rank: rank_per_unit,
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero() && self.torsion.is_empty()
    }

    /// Direct sum of two graded pieces.
    pub fn add(&self, other: &GroupEntry) -> GroupEntry {
        let rank = self.rank.add(other.rank);
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        let torsion = normalize_torsion(torsion);
        let annotation = match (&self.annotation, &other.annotation) {
            (
                Some(Annotation::PerRootOfUnity { rank: a }),
                Some(Annotation::PerRootOfUnity { rank: b }),
            ) => Some(Annotation::PerRootOfUnity { rank: a + b }),
            _ => None,
        };
        GroupEntry {
            rank,
            torsion,
            annotation,
        }
    }

    pub fn validate(&self) -> Result<(), AhssError> {
        for t in &self.torsion {
            if *t < Z::from(2) {
                return Err(AhssError::Invalid(format!("torsion entry {t} < 2")));
            }
        }
        for w in self.torsion.windows(2) {
            if !w[1].clone().mod_floor(&w[0]).is_zero() {
                return Err(AhssError::Invalid(format!(
                    "torsion {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// Normalize a multiset of cyclic orders into invariant-factor form
/// (each dividing the next) by gcd/lcm smoothing; no factorization needed.
pub fn normalize_torsion(mut list: Vec<Z>) -> Vec<Z> {
    list.retain(|d| !d.is_one() && !d.is_zero());
    if list.len() < 2 {
        return list;
    }
    loop {
        let mut changed = false;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = list[i].gcd(&list[j]);
                if !list[j].clone().mod_floor(&list[i]).is_zero() {
                    let l = list[i].lcm(&list[j]);
                    list[i] = g;
                    list[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    list.retain(|d| !d.is_one());
    list.sort();
    list
}

/// Graded abelian group: per-degree rank and torsion; absent degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    entries: BTreeMap<u32, GroupEntry>,
}

impl GradedAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn set(&mut self, degree: u32, entry: GroupEntry) {
        if entry.is_zero() {
            self.entries.remove(&degree);
        } else {
            self.entries.insert(degree, entry);
        }
    }

    pub fn entry(&self, degree: u32) -> Option<&GroupEntry> {
        self.entries.get(&degree)
    }

    pub fn rank_at(&self, degree: u32) -> Rank {
        self.entries
            .get(&degree)
            .map_or(Rank::Finite(0), |e| e.rank)
    }

    pub fn torsion_at(&self, degree: u32) -> &[Z] {
        self.entries.get(&degree).map_or(&[], |e| &e.torsion)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &GroupEntry)> {
        self.entries.iter().map(|(d, e)| (*d, e))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    pub fn has_torsion(&self) -> bool {
        self.entries.values().any(|e| !e.torsion.is_empty())
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &GradedAbelianGroup) -> GradedAbelianGroup {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            let merged = match out.entries.get(&d) {
                Some(existing) => existing.add(e),
                None => e.clone(),
            };
            out.set(d, merged);
        }
        out
    }

    pub fn validate(&self) -> Result<(), AhssError> {
        for e in self.entries.values() {
            e.validate()?;
        }
        Ok(())
    }
}
