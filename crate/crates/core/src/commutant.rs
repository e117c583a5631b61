//! Commutants and intertwiners of unitary tuples.
//!
//! The commutant of a tuple is the joint nullspace of the Sylvester
//! operators `X -> X A_i - A_i X`; it is scalar exactly when the tuple is
//! irreducible, and its dimension counts `sum(m_j^2)` over isotypic pieces.

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::nullspace::{intertwiner_stack, thresholded_nullspace};
use crate::scalar::{C, Real};
use crate::unitary::{UnitaryMatrix, UnitaryTuple};

/// Orthonormal basis (Frobenius inner product) of the commutant algebra.
#[derive(Clone, Debug)]
pub struct CommutantBasis<R> {
    pub n: usize,
    pub basis: Vec<CMatrix<R>>,
    pub sigma_max: R,
    pub threshold: R,
}

impl<R: Real> CommutantBasis<R> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn columns_to_matrices<R: Real>(basis: &CMatrix<R>, n: usize) -> Vec<CMatrix<R>> {
    (0..basis.cols())
        .map(|j| CMatrix::from_vec_rm(n, n, basis.column(j)))
        .collect()
}

pub fn commutant_basis<R: Real>(
    t: &UnitaryTuple<R>,
    tol: R,
) -> Result<CommutantBasis<R>, CoreError> {
    let l = intertwiner_stack(t, t)?;
    // Rank decisions are relative to the largest singular value of the
    // stacked operator, per the module contract.
    let ns = thresholded_nullspace(&l, tol, R::zero())?;
    Ok(CommutantBasis {
        n: t.n(),
        basis: columns_to_matrices(&ns.basis, t.n()),
        sigma_max: ns.sigma_max,
        threshold: ns.threshold,
    })
}

/// A tuple is irreducible exactly when only scalars commute with it.
pub fn is_irreducible<R: Real>(t: &UnitaryTuple<R>, tol: R) -> Result<bool, CoreError> {
    Ok(commutant_basis(t, tol)?.dim() == 1)
}

/// Basis of the space of intertwiners `X` with `X s_i = t_i X`; dimension 0
/// means no intertwiner, dimension 1 with invertible element means the
/// tuples are unitarily similar (for irreducible inputs).
pub fn intertwiner_basis<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
    tol: R,
) -> Result<Vec<CMatrix<R>>, CoreError> {
    let l = intertwiner_stack(s, t)?;
    // Unitary tuples give the stack unit natural scale; the floor keeps
    // thresholds meaningful when s and t all but coincide (the stack is
    // then nearly zero, e.g. between equal one-dimensional tuples).
    let ns = thresholded_nullspace(&l, tol, R::one())?;
    Ok(columns_to_matrices(&ns.basis, s.n()))
}

/// Scale an intertwiner between irreducible tuples to a unitary. For
/// irreducible `s`, `X* X` commutes with `s`, hence is a positive scalar
/// `c`; the unitary is `X / sqrt(c)`. Returns `None` when `X` is too close
/// to singular for that reading.
pub fn unitarize_intertwiner<R: Real>(x: &CMatrix<R>, tol: R) -> Option<UnitaryMatrix<R>> {
    let n = x.rows();
    let gram = x.adjoint().mul(x);
    let c = gram.trace().re / R::from_usize_exact(n);
    if c <= tol {
        return None;
    }
    let scaled = x.scale(C::new(c.sqrt().recip(), R::zero()));
    let residual = scaled.unitarity_residual();
    if residual > tol.sqrt().max(R::of(1e-7)) {
        return None;
    }
    Some(UnitaryMatrix::new_unchecked(scaled))
}
