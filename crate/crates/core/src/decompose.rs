//! Decomposition of a unitary tuple into irreducible summands with
//! multiplicities and an explicit unitary change of basis.
//!
//! Splitting strategy: a random self-adjoint element of the commutant has,
//! with probability one, eigenvalue clusters separating the invariant
//! subspaces; restrict to each cluster eigenspace and recurse. Leaves are
//! irreducible; similar leaves are merged into multiplicity classes, and
//! explicit intertwiners rewrite every copy in the basis of its class
//! representative so the block-diagonal reassembly is literal.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cmatrix::CMatrix;
use crate::commutant::{commutant_basis, intertwiner_basis, unitarize_intertwiner};
use crate::eigen::hermitian_eigen;
use crate::error::CoreError;
use crate::orthonormal::polar_unitary;
use crate::scalar::{C, Real};
use crate::similar::{simultaneously_similar, Verdict};
use crate::unitary::{UnitaryMatrix, UnitaryTuple};
use crate::words::{signature_budgeted, WordTraceSignature, DEFAULT_WORD_BUDGET};

#[derive(Clone, Debug)]
pub struct Summand<R> {
    pub tuple: UnitaryTuple<R>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition<R> {
    /// Pairwise non-similar irreducibles in canonical order (dimension,
    /// then trace-sequence lexicographic).
    pub summands: Vec<Summand<R>>,
    /// `conjugate(original, basis_change)` equals the block-diagonal tuple
    /// assembling each summand `multiplicity` times, in order.
    pub basis_change: UnitaryMatrix<R>,
    pub commutant_dim: usize,
    pub sigma_max: R,
    pub threshold: R,
}

impl<R: Real> Decomposition<R> {
    /// The block-diagonal tuple this decomposition certifies.
    pub fn assembly(&self) -> UnitaryTuple<R> {
        let k = self.summands[0].tuple.k();
        let members = (0..k)
            .map(|i| {
                let blocks: Vec<&CMatrix<R>> = self
                    .summands
                    .iter()
                    .flat_map(|s| std::iter::repeat(s.tuple.member(i).matrix()).take(s.multiplicity))
                    .collect();
                UnitaryMatrix::new_unchecked(CMatrix::block_diag(&blocks))
            })
            .collect();
        UnitaryTuple::new(members).expect("nonempty")
    }

    pub fn total_blocks(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }
}

pub fn decompose_irreducibles<R: Real>(
    t: &UnitaryTuple<R>,
    tol: R,
    seed: u64,
) -> Result<Decomposition<R>, CoreError>
where
    StandardNormal: Distribution<R>,
{
    let cb = commutant_basis(t, tol)?;
    if cb.dim() == 1 {
        return Ok(Decomposition {
            summands: vec![Summand {
                tuple: t.clone(),
                multiplicity: 1,
            }],
            basis_change: UnitaryMatrix::identity(t.n()),
            commutant_dim: 1,
            sigma_max: cb.sigma_max,
            threshold: cb.threshold,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, leaves) = split_recursive(t, tol, &mut rng)?;

    // Group leaves into similarity classes, in leaf order.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'leaves: for idx in 0..leaves.len() {
        for class in classes.iter_mut() {
            let rep = &leaves[class[0]];
            if rep.n() != leaves[idx].n() {
                continue;
            }
            match simultaneously_similar(rep, &leaves[idx], tol, None, seed.wrapping_add(1))? {
                Verdict::Similar { .. } => {
                    class.push(idx);
                    continue 'leaves;
                }
                Verdict::Distinct { .. } => {}
                Verdict::Inconclusive { reason } => {
                    return Err(CoreError::Inconclusive(format!(
                        "leaf merge was ambiguous: {reason}"
                    )));
                }
            }
        }
        classes.push(vec![idx]);
    }

    // Canonical class order: dimension, then trace-sequence lexicographic.
    let mut keyed: Vec<(usize, WordTraceSignature<R>)> = Vec::new();
    for class in &classes {
        let rep = &leaves[class[0]];
        let len = 2 * rep.n() * rep.n();
        let (sig, _) = signature_budgeted(rep, len, DEFAULT_WORD_BUDGET);
        keyed.push((class[0], sig));
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        let da = leaves[classes[a][0]].n();
        let db = leaves[classes[b][0]].n();
        da.cmp(&db).then_with(|| keyed[a].1.lex_cmp(&keyed[b].1))
    });

    // Leaf offsets in the recursion's block order.
    let n = t.n();
    let mut offsets = Vec::with_capacity(leaves.len());
    let mut acc = 0;
    for leaf in &leaves {
        offsets.push(acc);
        acc += leaf.n();
    }
    debug_assert_eq!(acc, n);

    // Permutation moving recursion blocks into canonical class layout, and
    // per-copy intertwiners rewriting each leaf as its representative.
    let mut perm = CMatrix::zeros(n, n);
    let mut correctors: Vec<CMatrix<R>> = Vec::new();
    let mut summands = Vec::with_capacity(order.len());
    let mut final_off = 0;
    for &ci in &order {
        let class = &classes[ci];
        let rep = leaves[class[0]].clone();
        let d = rep.n();
        for &leaf_idx in class {
            for r in 0..d {
                perm[(final_off + r, offsets[leaf_idx] + r)] = C::new(R::one(), R::zero());
            }
            final_off += d;
            if leaf_idx == class[0] {
                correctors.push(CMatrix::identity(d));
            } else {
                let basis = intertwiner_basis(&rep, &leaves[leaf_idx], tol)?;
                let v = basis
                    .first()
                    .and_then(|x| unitarize_intertwiner(x, tol))
                    .ok_or_else(|| {
                        CoreError::Inconclusive(
                            "similar leaves admitted no unitary intertwiner at tolerance".into(),
                        )
                    })?;
                correctors.push(v.into_matrix().adjoint());
            }
        }
        summands.push(Summand {
            tuple: rep,
            multiplicity: class.len(),
        });
    }
    let corrector_refs: Vec<&CMatrix<R>> = correctors.iter().collect();
    let basis_change = CMatrix::block_diag(&corrector_refs).mul(&perm).mul(&w);

    Ok(Decomposition {
        summands,
        basis_change: UnitaryMatrix::new_unchecked(polar_unitary(&basis_change, 1)),
        commutant_dim: cb.dim(),
        sigma_max: cb.sigma_max,
        threshold: cb.threshold,
    })
}

/// Recursive splitting. Returns `(w, leaves)` with `w t w*` equal to the
/// block-diagonal of the irreducible leaves, in block order.
fn split_recursive<R: Real>(
    t: &UnitaryTuple<R>,
    tol: R,
    rng: &mut ChaCha8Rng,
) -> Result<(CMatrix<R>, Vec<UnitaryTuple<R>>), CoreError>
where
    StandardNormal: Distribution<R>,
{
    let n = t.n();
    let cb = commutant_basis(t, tol)?;
    if cb.dim() == 1 {
        return Ok((CMatrix::identity(n), vec![t.clone()]));
    }

    let mut last_gap = R::zero();
    let mut gap_needed = R::zero();
    for _attempt in 0..2 {
        // Random self-adjoint commutant element.
        let mut h = CMatrix::zeros(n, n);
        for x in &cb.basis {
            let alpha: R = StandardNormal.sample(rng);
            let beta: R = StandardNormal.sample(rng);
            h = h
                .add(&x.add(&x.adjoint()).scale(C::new(alpha, R::zero())))
                .add(&x.sub(&x.adjoint()).scale(C::new(R::zero(), beta)));
        }
        let eig = hermitian_eigen(&h)?;
        let scale = eig
            .values
            .iter()
            .fold(R::one(), |m, &v| m.max(v.abs()));
        // Splitting across a narrow gap pollutes the restricted blocks with
        // error on the order of eps / gap, so clusters are cut only at
        // comfortably wide gaps; merged clusters simply recurse with a
        // fresh splitting element.
        let gap_tol = tol.max(R::epsilon().powf(R::of(1.0 / 3.0))) * scale;
        gap_needed = gap_tol;

        let mut cuts = vec![0usize];
        for j in 1..n {
            let gap = eig.values[j] - eig.values[j - 1];
            last_gap = last_gap.max(gap);
            if gap > gap_tol {
                cuts.push(j);
            }
        }
        cuts.push(n);
        if cuts.len() <= 2 {
            continue; // single cluster; redraw
        }

        let mut ws = Vec::new();
        let mut leaves = Vec::new();
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let q = eig.vectors.columns_range(lo, hi);
            let members = t
                .members()
                .iter()
                .map(|m| {
                    let b = q.adjoint().mul(m.matrix()).mul(&q);
                    UnitaryMatrix::new_unchecked(polar_unitary(&b, 2))
                })
                .collect();
            let sub = UnitaryTuple::new(members).expect("nonempty");
            let (w_sub, mut sub_leaves) = split_recursive(&sub, tol, rng)?;
            ws.push(w_sub);
            leaves.append(&mut sub_leaves);
        }
        let w_refs: Vec<&CMatrix<R>> = ws.iter().collect();
        let w = CMatrix::block_diag(&w_refs).mul(&eig.vectors.adjoint());
        return Ok((w, leaves));
    }
    Err(CoreError::Inconclusive(format!(
        "commutant dimension {} but the splitting element produced a single \
         eigenvalue cluster twice (largest gap {:e} <= required {:e})",
        cb.dim(),
        last_gap.to_f64().unwrap_or(f64::NAN),
        gap_needed.to_f64().unwrap_or(f64::NAN),
    )))
}
