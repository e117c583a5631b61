//! Unitary matrices and k-tuples under simultaneous conjugation: the basic
//! carriers, block sums, stabilization, and seeded Haar sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::orthonormal::orthonormalize;
use crate::scalar::{C, Real};

/// `true` iff `|| M* M - I ||_F <= tol`.
pub fn check_unitary<R: Real>(m: &CMatrix<R>, tol: R) -> Result<bool, CoreError> {
    if !m.is_square() {
        return Err(CoreError::Shape(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.unitarity_residual() <= tol)
}

/// Square complex matrix validated to be unitary within a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix<R> {
    mat: CMatrix<R>,
}

impl<R: Real> UnitaryMatrix<R> {
    pub fn new(mat: CMatrix<R>, tol: R) -> Result<Self, CoreError> {
        if mat.rows() == 0 {
            return Err(CoreError::Domain("dimension must be at least 1".into()));
        }
        if !mat.is_square() {
            return Err(CoreError::Shape(format!(
                "expected a square matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let residual = mat.unitarity_residual();
        if residual > tol {
            return Err(CoreError::NotUnitary {
                residual: residual.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(UnitaryMatrix { mat })
    }

    /// Caller guarantees unitarity (construction-by-construction paths).
    pub fn new_unchecked(mat: CMatrix<R>) -> Self {
        debug_assert!(mat.is_square());
        UnitaryMatrix { mat }
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix {
            mat: CMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix<R> {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix<R> {
        self.mat
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix {
            mat: self.mat.adjoint(),
        }
    }
}

/// Ordered k-tuple of same-dimension unitary matrices: a unitary
/// representation of the free group on k generators.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryTuple<R> {
    n: usize,
    matrices: Vec<UnitaryMatrix<R>>,
}

impl<R: Real> UnitaryTuple<R> {
    pub fn new(matrices: Vec<UnitaryMatrix<R>>) -> Result<Self, CoreError> {
        let Some(first) = matrices.first() else {
            return Err(CoreError::Domain("arity must be at least 1".into()));
        };
        let n = first.n();
        if matrices.iter().any(|m| m.n() != n) {
            return Err(CoreError::Shape(
                "all members of a tuple must share the same dimension".into(),
            ));
        }
        Ok(UnitaryTuple { n, matrices })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        UnitaryTuple {
            n,
            matrices: (0..k).map(|_| UnitaryMatrix::identity(n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    pub fn member(&self, i: usize) -> &UnitaryMatrix<R> {
        &self.matrices[i]
    }

    pub fn members(&self) -> &[UnitaryMatrix<R>] {
        &self.matrices
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!((self.n, self.k()), (other.n, other.k()));
        let mut m = R::zero();
        for (a, b) in self.matrices.iter().zip(other.matrices.iter()) {
            m = m.max(a.matrix().max_abs_diff(b.matrix()));
        }
        m
    }
}

/// Seeded approximately-Haar unitary: complex Gaussian matrix followed by
/// Gram-Schmidt; the positive-diagonal triangular factor convention makes
/// the factor unique, so the result is Haar distributed.
pub fn random_unitary<R: Real>(n: usize, seed: u64) -> Result<UnitaryMatrix<R>, CoreError>
where
    StandardNormal: Distribution<R>,
{
    if n == 0 {
        return Err(CoreError::Domain("dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix(n, n, &mut rng);
    let q = orthonormalize(&g)
        .map_err(|_| CoreError::Domain("degenerate Gaussian sample".into()))?;
    Ok(UnitaryMatrix::new_unchecked(q))
}

pub(crate) fn gaussian_matrix<R: Real>(
    rows: usize,
    cols: usize,
    rng: &mut ChaCha8Rng,
) -> CMatrix<R>
where
    StandardNormal: Distribution<R>,
{
    let half = R::of(0.5).sqrt();
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: R = StandardNormal.sample(rng);
        let im: R = StandardNormal.sample(rng);
        C::new(re * half, im * half)
    })
}

/// Random tuple with independent Haar members.
pub fn random_tuple<R: Real>(n: usize, k: usize, seed: u64) -> Result<UnitaryTuple<R>, CoreError>
where
    StandardNormal: Distribution<R>,
{
    if k == 0 {
        return Err(CoreError::Domain("arity must be at least 1".into()));
    }
    let members = (0..k)
        .map(|i| random_unitary(n, seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    UnitaryTuple::new(members)
}

/// Member-wise block-diagonal sum; arities must match.
pub fn block_sum<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
) -> Result<UnitaryTuple<R>, CoreError> {
    if s.k() != t.k() {
        return Err(CoreError::Shape(format!(
            "arity mismatch: {} vs {}",
            s.k(),
            t.k()
        )));
    }
    let members = s
        .members()
        .iter()
        .zip(t.members().iter())
        .map(|(a, b)| {
            UnitaryMatrix::new_unchecked(CMatrix::block_diag(&[a.matrix(), b.matrix()]))
        })
        .collect();
    Ok(UnitaryTuple::new(members).expect("nonempty"))
}

/// Pad every member with an identity block of size `m`.
pub fn stabilize<R: Real>(t: &UnitaryTuple<R>, m: usize) -> UnitaryTuple<R> {
    if m == 0 {
        return t.clone();
    }
    let id = UnitaryTuple::identity(m, t.k());
    block_sum(t, &id).expect("arities match")
}

/// Simultaneous conjugation: member i becomes `W A_i W*`.
pub fn conjugate<R: Real>(
    t: &UnitaryTuple<R>,
    w: &UnitaryMatrix<R>,
) -> Result<UnitaryTuple<R>, CoreError> {
    if w.n() != t.n() {
        return Err(CoreError::Shape(format!(
            "conjugator dimension {} does not match tuple dimension {}",
            w.n(),
            t.n()
        )));
    }
    let wa = w.matrix();
    let wh = w.matrix().adjoint();
    let members = t
        .members()
        .iter()
        .map(|a| UnitaryMatrix::new_unchecked(wa.mul(a.matrix()).mul(&wh)))
        .collect();
    Ok(UnitaryTuple::new(members).expect("nonempty"))
}
