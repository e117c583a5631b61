//! Eigensolvers built on cyclic complex Jacobi rotations.
//!
//! Jacobi is slower than tridiagonalization-based solvers but backward
//! stable, orthogonality-exact up to rounding, and dependency-free. Sizes
//! here stay in the low hundreds, where it is entirely adequate.
//!
//! A unitary matrix is normal, so it is diagonalized by splitting into the
//! commuting Hermitian pair `H = (U + U*)/2`, `K = (U - U*)/(2i)`,
//! diagonalizing `H`, then refining inside near-degenerate `H`-eigenspaces
//! with `K`. Eigenvalues are read off as Rayleigh quotients.

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::scalar::{c_zero, C, Real};

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix: `a = V diag(values) V*`,
/// values ascending, V unitary.
#[derive(Clone, Debug)]
pub struct HermitianEigen<R> {
    pub values: Vec<R>,
    pub vectors: CMatrix<R>,
}

pub fn hermitian_eigen<R: Real>(a: &CMatrix<R>) -> Result<HermitianEigen<R>, CoreError> {
    if !a.is_square() {
        return Err(CoreError::Shape("hermitian_eigen needs a square matrix".into()));
    }
    let n = a.rows();
    // Enforce exact Hermitian symmetry of the working copy.
    let mut m = a.add(&a.adjoint()).scale(C::new(R::of(0.5), R::zero()));
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        let values = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok(HermitianEigen { values, vectors: v });
    }

    let norm0 = m.frob_norm();
    let stop = norm0 * R::epsilon() * R::from_usize_exact(n);
    let mut converged = norm0.is_zero();
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut off = R::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let beta = m[(p, q)];
                let b = beta.norm();
                let alpha = m[(p, p)].re;
                let gamma = m[(q, q)].re;
                if b <= (alpha.abs() + gamma.abs() + R::epsilon()) * R::epsilon() {
                    m[(p, q)] = c_zero();
                    m[(q, p)] = c_zero();
                    continue;
                }
                let phi = beta / C::new(b, R::zero());
                let tau = (gamma - alpha) / (b + b);
                let t = if tau >= R::zero() {
                    (tau + (R::one() + tau * tau).sqrt()).recip()
                } else {
                    -((-tau + (R::one() + tau * tau).sqrt()).recip())
                };
                let c = (R::one() + t * t).sqrt().recip();
                let s = t * c;

                // J differs from the identity at
                //   [p,p]=c  [p,q]=s  [q,p]=-s*conj(phi)  [q,q]=c*conj(phi);
                // apply m <- J* m J and accumulate v <- v J.
                let cc = C::new(c, R::zero());
                let ss = C::new(s, R::zero());
                let sphi = phi.scale(s);
                let sphic = phi.conj().scale(s);
                let cphic = phi.conj().scale(c);
                for i in 0..n {
                    let mp = m[(i, p)];
                    let mq = m[(i, q)];
                    m[(i, p)] = mp * cc - mq * sphic;
                    m[(i, q)] = mp * ss + mq * cphic;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * cc - vq * sphic;
                    v[(i, q)] = vp * ss + vq * cphic;
                }
                for j in 0..n {
                    let mp = m[(p, j)];
                    let mq = m[(q, j)];
                    m[(p, j)] = mp * cc - mq * sphi;
                    m[(q, j)] = mp * ss + mq * phi.scale(c);
                }
                // Clean the annihilated pair and keep the diagonal real.
                m[(p, q)] = c_zero();
                m[(q, p)] = c_zero();
                m[(p, p)] = C::new(m[(p, p)].re, R::zero());
                m[(q, q)] = C::new(m[(q, q)].re, R::zero());
            }
        }
    }
    if !converged {
        // One final check: the last sweep may have converged.
        let mut off = R::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() > stop {
            return Err(CoreError::NoConvergence(MAX_SWEEPS));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let col = v.column(old_j);
        vectors.set_column(new_j, &col);
    }
    Ok(HermitianEigen { values, vectors })
}

/// Spectral data of a unitary matrix: phases `t_j` in `[0, 1)` sorted
/// ascending (eigenvalue `exp(2 pi i t_j)`) with an aligned orthonormal
/// eigenbasis in the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct UnitaryEigen<R> {
    pub phases: Vec<R>,
    pub vectors: CMatrix<R>,
}

pub fn unitary_eigen<R: Real>(u: &CMatrix<R>, tol: R) -> Result<UnitaryEigen<R>, CoreError> {
    if !u.is_square() {
        return Err(CoreError::Shape("unitary_eigen needs a square matrix".into()));
    }
    let residual = u.unitarity_residual();
    if residual > tol {
        return Err(CoreError::NotUnitary {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = u.rows();
    let half = C::new(R::of(0.5), R::zero());
    let mhalf_i = C::new(R::zero(), R::of(-0.5));
    let uh = u.adjoint();
    let h = u.add(&uh).scale(half);
    let k = u.sub(&uh).scale(mhalf_i);

    let he = hermitian_eigen(&h)?;
    let mut vectors = he.vectors;

    // Refine inside clusters of nearly equal cos values with the sin part.
    let cluster_tol = R::epsilon().sqrt();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (he.values[end] - he.values[end - 1]).abs() <= cluster_tol {
            end += 1;
        }
        if end - start > 1 {
            let block = vectors.columns_range(start, end);
            let k_small = block.adjoint().mul(&k).mul(&block);
            let sub = hermitian_eigen(&k_small)?;
            let refined = block.mul(&sub.vectors);
            for j in 0..end - start {
                let col = refined.column(j);
                vectors.set_column(start + j, &col);
            }
        }
        start = end;
    }

    // Rayleigh quotients give the eigenvalues; normalize to phases in turns.
    let mut pairs: Vec<(R, Vec<C<R>>)> = Vec::with_capacity(n);
    for j in 0..n {
        let col = vectors.column(j);
        let image = u.apply(&col);
        let mut lambda: C<R> = c_zero();
        for (a, b) in col.iter().zip(image.iter()) {
            lambda = lambda + a.conj() * *b;
        }
        let modulus = lambda.norm();
        if (modulus - R::one()).abs() > tol {
            return Err(CoreError::NotUnitary {
                residual: (modulus - R::one()).abs().to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut t = lambda.arg() / R::TAU();
        if t < R::zero() {
            t = t + R::one();
        }
        if t >= R::one() || R::one() - t <= tol {
            t = R::zero();
        }
        pairs.push((t, col));
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("phases are finite"));
    let mut out_vectors = CMatrix::zeros(n, n);
    let mut phases = Vec::with_capacity(n);
    for (j, (t, col)) in pairs.into_iter().enumerate() {
        phases.push(t);
        out_vectors.set_column(j, &col);
    }
    Ok(UnitaryEigen {
        phases,
        vectors: out_vectors,
    })
}

/// Singular values of a rectangular complex matrix, descending, computed
/// through the Hermitian dilation `[[0, M], [M*, 0]]` whose spectrum is
/// `{+s_i, -s_i}` plus zeros. Small singular values come out with absolute
/// accuracy on the order of machine epsilon times the largest one.
pub fn singular_values<R: Real>(m: &CMatrix<R>) -> Result<Vec<R>, CoreError> {
    let (r, c) = (m.rows(), m.cols());
    let count = r.min(c);
    if count == 0 {
        return Ok(Vec::new());
    }
    let n = r + c;
    let mut d = CMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..c {
            d[(i, r + j)] = m[(i, j)];
            d[(r + j, i)] = m[(i, j)].conj();
        }
    }
    let eig = hermitian_eigen(&d)?;
    let mut vals: Vec<R> = eig
        .values
        .iter()
        .rev()
        .take(count)
        .map(|&x| x.max(R::zero()))
        .collect();
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    Ok(vals)
}
