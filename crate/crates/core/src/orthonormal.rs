//! Orthonormalization helpers: modified Gram-Schmidt with one
//! reorthogonalization pass, orthonormal completion, and polar correction.

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::scalar::{c_zero, C, Real};

fn project_off<R: Real>(v: &mut [C<R>], q: &[C<R>]) {
    let mut dot = c_zero();
    for (a, b) in q.iter().zip(v.iter()) {
        dot = dot + a.conj() * *b;
    }
    for (a, b) in q.iter().zip(v.iter_mut()) {
        *b = *b - *a * dot;
    }
}

fn norm<R: Real>(v: &[C<R>]) -> R {
    v.iter()
        .map(|z| z.norm_sqr())
        .fold(R::zero(), |a, b| a + b)
        .sqrt()
}

/// Orthonormalize the columns of `a` (modified Gram-Schmidt, two passes).
/// Positive normalization: the triangular factor has positive diagonal.
/// Fails if the columns are numerically rank deficient.
pub fn orthonormalize<R: Real>(a: &CMatrix<R>) -> Result<CMatrix<R>, CoreError> {
    let (rows, cols) = (a.rows(), a.cols());
    if cols > rows {
        return Err(CoreError::Shape(format!(
            "cannot orthonormalize {cols} columns in dimension {rows}"
        )));
    }
    let mut q = CMatrix::zeros(rows, cols);
    let scale = a.frob_norm().max(R::one());
    let floor = scale * R::epsilon() * R::from_usize_exact(rows.max(4));
    for j in 0..cols {
        let mut v = a.column(j);
        for _pass in 0..2 {
            for i in 0..j {
                let qi = q.column(i);
                project_off(&mut v, &qi);
            }
        }
        let nv = norm(&v);
        if nv <= floor {
            return Err(CoreError::Domain(format!(
                "rank-deficient column set at column {j}"
            )));
        }
        let inv = C::new(nv.recip(), R::zero());
        for x in v.iter_mut() {
            *x = *x * inv;
        }
        q.set_column(j, &v);
    }
    Ok(q)
}

/// Extend orthonormal columns `b` (n x d) to a full n x n unitary. The
/// complement is chosen deterministically from coordinate vectors by
/// largest residual.
pub fn orthonormal_completion<R: Real>(b: &CMatrix<R>) -> CMatrix<R> {
    let n = b.rows();
    let d = b.cols();
    debug_assert!(d <= n);
    let mut cols: Vec<Vec<C<R>>> = (0..d).map(|j| b.column(j)).collect();
    while cols.len() < n {
        let mut best: Option<(Vec<C<R>>, R)> = None;
        for e in 0..n {
            let mut v = vec![c_zero(); n];
            v[e] = C::new(R::one(), R::zero());
            for q in &cols {
                project_off(&mut v, q);
            }
            let nv = norm(&v);
            if best.as_ref().map_or(true, |(_, bn)| nv > *bn) {
                best = Some((v, nv));
            }
        }
        let (mut v, nv) = best.expect("n > 0");
        // Second pass for orthogonality at working precision.
        for q in &cols {
            project_off(&mut v, q);
        }
        let nv2 = norm(&v).max(nv * R::epsilon());
        let inv = C::new(nv2.recip(), R::zero());
        for x in v.iter_mut() {
            *x = *x * inv;
        }
        cols.push(v);
    }
    let mut out = CMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

/// Nearest-unitary correction of an almost-unitary square matrix via the
/// Newton iteration `X <- (X + (X*)^{-1}) / 2`, implemented without an
/// explicit inverse: for near-unitary X, (X*)^{-1} ~ X (2I - X* X).
pub fn polar_unitary<R: Real>(a: &CMatrix<R>, sweeps: usize) -> CMatrix<R> {
    let n = a.rows();
    debug_assert!(a.is_square());
    let id2 = CMatrix::identity(n).scale(C::new(R::of(2.0), R::zero()));
    let mut x = a.clone();
    for _ in 0..sweeps {
        let corr = x.mul(&id2.sub(&x.adjoint().mul(&x)));
        x = x.add(&corr).scale(C::new(R::of(0.5), R::zero()));
    }
    x
}
