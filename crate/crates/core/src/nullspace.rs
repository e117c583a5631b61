//! Thresholded nullspaces of stacked intertwining operators.
//!
//! Rank decisions are made against `tol * sigma_max`. A plain Gram-matrix
//! eigensolve squares the spectrum, which floors computed small singular
//! values near `sqrt(eps) * sigma_max`, far above a 1e-9 relative
//! threshold. We therefore refine: candidate near-null directions from the
//! Gram pass are re-measured by applying the operator itself, which
//! restores absolute accuracy near machine epsilon.

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::eigen::hermitian_eigen;
use crate::scalar::Real;
use crate::unitary::UnitaryTuple;

#[derive(Clone, Debug)]
pub struct Nullspace<R> {
    /// Orthonormal columns spanning the numerical nullspace.
    pub basis: CMatrix<R>,
    pub sigma_max: R,
    pub threshold: R,
}

/// `scale_floor` guards against degenerate near-zero operators: thresholds
/// are taken relative to `max(sigma_max, scale_floor)`. Pass zero for the
/// pure relative rule.
pub fn thresholded_nullspace<R: Real>(
    l: &CMatrix<R>,
    tol: R,
    scale_floor: R,
) -> Result<Nullspace<R>, CoreError> {
    let cols = l.cols();
    let gram = l.adjoint().mul(l);
    let eig = hermitian_eigen(&gram)?;
    let sigma_max = eig.values.last().map_or(R::zero(), |&x| x.max(R::zero()).sqrt());
    let scale = sigma_max.max(scale_floor);
    if scale.is_zero() {
        return Ok(Nullspace {
            basis: CMatrix::identity(cols),
            sigma_max,
            threshold: R::zero(),
        });
    }
    let threshold = tol * scale;
    // Coarse split: everything plausibly null at Gram accuracy.
    let split = scale * R::epsilon().powf(R::of(1.0 / 3.0));
    let candidates: Vec<usize> = (0..cols)
        .filter(|&j| eig.values[j].max(R::zero()).sqrt() <= split.max(threshold))
        .collect();
    if candidates.is_empty() {
        return Ok(Nullspace {
            basis: CMatrix::zeros(cols, 0),
            sigma_max,
            threshold,
        });
    }
    let mut q = CMatrix::zeros(cols, candidates.len());
    for (jj, &j) in candidates.iter().enumerate() {
        let col = eig.vectors.column(j);
        q.set_column(jj, &col);
    }
    // Refinement: exact residual norms of the operator on the candidates.
    let b = l.mul(&q);
    let small = hermitian_eigen(&b.adjoint().mul(&b))?;
    let keep: Vec<usize> = (0..candidates.len())
        .filter(|&j| small.values[j].max(R::zero()).sqrt() < threshold)
        .collect();
    let mut basis = CMatrix::zeros(cols, keep.len());
    let rotated = q.mul(&small.vectors);
    for (out_j, &j) in keep.iter().enumerate() {
        let col = rotated.column(j);
        basis.set_column(out_j, &col);
    }
    Ok(Nullspace {
        basis,
        sigma_max,
        threshold,
    })
}

/// Matrix of `X -> X s_i - t_i X` on row-major vectorized X, stacked over i.
/// With row-major vectorization, `vec(X A) = (I kron A^T) vec(X)` and
/// `vec(A X) = (A kron I) vec(X)`.
pub fn intertwiner_stack<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
) -> Result<CMatrix<R>, CoreError> {
    if s.k() != t.k() {
        return Err(CoreError::Shape("arity mismatch".into()));
    }
    if s.n() != t.n() {
        return Err(CoreError::Shape("dimension mismatch".into()));
    }
    let n = s.n();
    let id = CMatrix::identity(n);
    let blocks: Vec<CMatrix<R>> = s
        .members()
        .iter()
        .zip(t.members().iter())
        .map(|(si, ti)| {
            id.kron(&si.matrix().transpose())
                .sub(&ti.matrix().kron(&id))
        })
        .collect();
    let refs: Vec<&CMatrix<R>> = blocks.iter().collect();
    Ok(CMatrix::vstack(&refs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;
    use crate::unitary::random_tuple;

    #[test]
    fn zero_operator_has_full_nullspace() {
        let l = CMatrix::<f64>::zeros(3, 4);
        let ns = thresholded_nullspace(&l, 1e-9, 0.0).unwrap();
        assert_eq!(ns.basis.cols(), 4);
    }

    #[test]
    fn vectorization_convention() {
        // Check vec(X A) = (I kron A^T) vec(X) on a concrete instance.
        let t = random_tuple::<f64>(3, 1, 5).unwrap();
        let a = t.member(0).matrix();
        let x = CMatrix::from_fn(3, 3, |i, j| C::new((i + 2 * j) as f64, (i * j) as f64));
        let lhs = x.mul(a).vec_rm();
        let rhs = CMatrix::identity(3).kron(&a.transpose()).apply(&x.vec_rm());
        for (u, v) in lhs.iter().zip(rhs.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
        let lhs = a.mul(&x).vec_rm();
        let rhs = a.kron(&CMatrix::identity(3)).apply(&x.vec_rm());
        for (u, v) in lhs.iter().zip(rhs.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn refinement_reaches_tight_thresholds() {
        // The commutant stack of a random tuple always kills the identity;
        // the refined singular value must sit far below 1e-9 * sigma_max.
        let t = random_tuple::<f64>(4, 2, 9).unwrap();
        let l = intertwiner_stack(&t, &t).unwrap();
        let ns = thresholded_nullspace(&l, 1e-9, 0.0).unwrap();
        assert!(ns.basis.cols() >= 1);
        // Residual of the returned basis directions under the operator.
        let res = l.mul(&ns.basis);
        assert!(res.frob_norm() <= ns.threshold * (ns.basis.cols() as f64).sqrt());
    }
}
