//! Eigenspace flag configurations: a unitary matrix as an ordered system of
//! orthogonal eigenspaces with increasing phases, the face and degeneracy
//! maps organizing these configurations simplicially, Grassmannian
//! arrangements with principal-angle invariants, and the explicit homotopy
//! contracting stabilized arrangements.

use rand_distr::{Distribution, StandardNormal};

use crate::cmatrix::CMatrix;
use crate::eigen::unitary_eigen;
use crate::error::CoreError;
use crate::orthonormal::{orthonormal_completion, orthonormalize};
use crate::scalar::{unit_phase, C, Real};
use crate::unitary::{random_unitary, UnitaryMatrix};

/// One eigenspace block: an orthonormal basis (columns) and a phase in
/// turns. Zero-column bases are legal in non-canonical configurations.
#[derive(Clone, Debug)]
pub struct HarrisBlock<R> {
    pub basis: CMatrix<R>,
    pub phase: R,
}

impl<R: Real> HarrisBlock<R> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Ordered orthogonal eigenspaces with weakly increasing phases in `[0, 1]`.
/// Canonical form: strictly increasing phases in `(0, 1)` and every block
/// nonempty; the complement of the spanned space carries phase 0 implicitly.
#[derive(Clone, Debug)]
pub struct HarrisConfiguration<R> {
    pub n: usize,
    pub blocks: Vec<HarrisBlock<R>>,
}

impl<R: Real> HarrisConfiguration<R> {
    pub fn validate(&self, tol: R) -> Result<(), CoreError> {
        let total: usize = self.blocks.iter().map(HarrisBlock::dim).sum();
        if total > self.n {
            return Err(CoreError::Invalid(format!(
                "blocks span {} dimensions in ambient dimension {}",
                total, self.n
            )));
        }
        for b in &self.blocks {
            if b.basis.rows() != self.n {
                return Err(CoreError::Shape("block basis has wrong ambient dimension".into()));
            }
            if b.phase < R::zero() || b.phase > R::one() {
                return Err(CoreError::Domain(format!("phase {} outside [0, 1]", b.phase)));
            }
        }
        for w in self.blocks.windows(2) {
            if w[0].phase > w[1].phase {
                return Err(CoreError::Invalid("phases are not sorted".into()));
            }
        }
        let stacked = all_columns(self.n, self.blocks.iter().map(|b| &b.basis));
        if stacked.cols() > 0 {
            let residual = stacked.unitarity_residual();
            if residual > tol {
                return Err(CoreError::Invalid(format!(
                    "block bases are not jointly orthonormal (residual {:e})",
                    residual.to_f64().unwrap_or(f64::NAN)
                )));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.blocks.len()
    }
}

fn all_columns<'a, R: Real>(
    n: usize,
    blocks: impl Iterator<Item = &'a CMatrix<R>>,
) -> CMatrix<R> {
    let mats: Vec<&CMatrix<R>> = blocks.collect();
    if mats.is_empty() {
        return CMatrix::zeros(n, 0);
    }
    CMatrix::hstack(&mats)
}

/// Canonical configuration of a unitary matrix: eigenspaces for the phase
/// clusters in `(0, 1)`, increasing phase order; the phase-0 eigenspace
/// (acted on trivially) is omitted. Eigenphases within `tol` of each other
/// are merged into one block.
pub fn harris_decompose<R: Real>(
    u: &UnitaryMatrix<R>,
    tol: R,
) -> Result<HarrisConfiguration<R>, CoreError> {
    let eig = unitary_eigen(u.matrix(), tol)?;
    let n = u.n();
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eig.phases[end] - eig.phases[end - 1]).abs() <= tol {
            end += 1;
        }
        let mean = {
            let mut acc = R::zero();
            for j in start..end {
                acc = acc + eig.phases[j];
            }
            acc / R::from_usize_exact(end - start)
        };
        // Blocks at phase 0 (or wrapped from 1) belong to the trivial part.
        if mean > tol && mean < R::one() - tol {
            blocks.push(HarrisBlock {
                basis: eig.vectors.columns_range(start, end),
                phase: mean,
            });
        }
        start = end;
    }
    Ok(HarrisConfiguration { n, blocks })
}

/// The matrix with eigenvalue `exp(2 pi i t_i)` on block i and 1 on the
/// orthogonal complement: `I + sum_i (exp(2 pi i t_i) - 1) P_i`.
pub fn harris_reconstruct<R: Real>(
    c: &HarrisConfiguration<R>,
    tol: R,
) -> Result<UnitaryMatrix<R>, CoreError> {
    c.validate(tol)?;
    let mut m = CMatrix::identity(c.n);
    let one = C::new(R::one(), R::zero());
    for b in &c.blocks {
        if b.dim() == 0 {
            continue;
        }
        let proj = b.basis.mul(&b.basis.adjoint());
        m = m.add(&proj.scale(unit_phase(b.phase) - one));
    }
    UnitaryMatrix::new(m, tol.max(R::of(1e-7)))
}

/// Face map `d_i` (0 <= i <= p): `d_0` drops the first block, `d_p` drops
/// the last, and interior `d_i` merges blocks i and i+1 (1-based) into one
/// block carrying the later phase. Dropping a block hands its space to the
/// trivially-acted complement, matching phase 0 and 1 endpoints.
pub fn face_map<R: Real>(
    c: &HarrisConfiguration<R>,
    i: usize,
) -> Result<HarrisConfiguration<R>, CoreError> {
    let p = c.p();
    if p == 0 || i > p {
        return Err(CoreError::Domain(format!(
            "face index {i} out of range for p = {p}"
        )));
    }
    let mut blocks = c.blocks.clone();
    if i == 0 {
        blocks.remove(0);
    } else if i == p {
        blocks.pop();
    } else {
        let left = blocks.remove(i - 1);
        let right = &mut blocks[i - 1];
        right.basis = CMatrix::hstack(&[&left.basis, &right.basis]);
    }
    Ok(HarrisConfiguration { n: c.n, blocks })
}

/// Degeneracy map `s_i` (0 <= i <= p): insert a zero-dimensional block
/// after position i (1-based), duplicating the neighboring phase so the
/// simplicial identities hold on (blocks, phases) jointly.
pub fn degeneracy_map<R: Real>(
    c: &HarrisConfiguration<R>,
    i: usize,
) -> Result<HarrisConfiguration<R>, CoreError> {
    let p = c.p();
    if i > p {
        return Err(CoreError::Domain(format!(
            "degeneracy index {i} out of range for p = {p}"
        )));
    }
    let phase = if i == 0 {
        c.blocks.first().map_or(R::zero(), |b| b.phase)
    } else {
        c.blocks[i - 1].phase
    };
    let mut blocks = c.blocks.clone();
    blocks.insert(
        i,
        HarrisBlock {
            basis: CMatrix::zeros(c.n, 0),
            phase,
        },
    );
    Ok(HarrisConfiguration { n: c.n, blocks })
}

/// Structural and geometric equality of configurations: equal ambient
/// dimension, block count, dimensions, phases within `tol`, and projector
/// distance within `tol` per block.
pub fn configurations_close<R: Real>(
    a: &HarrisConfiguration<R>,
    b: &HarrisConfiguration<R>,
    tol: R,
) -> bool {
    if a.n != b.n || a.p() != b.p() {
        return false;
    }
    for (x, y) in a.blocks.iter().zip(b.blocks.iter()) {
        if x.dim() != y.dim() {
            return false;
        }
        if (x.phase - y.phase).abs() > tol {
            return false;
        }
        let px = x.basis.mul(&x.basis.adjoint());
        let py = y.basis.mul(&y.basis.adjoint());
        if px.dist_frob(&py) > tol {
            return false;
        }
    }
    true
}

/// Ordered system of mutually orthogonal planes in a common ambient space.
#[derive(Clone, Debug)]
pub struct PlaneArrangement<R> {
    pub n: usize,
    pub planes: Vec<CMatrix<R>>,
}

impl<R: Real> PlaneArrangement<R> {
    pub fn validate(&self, tol: R) -> Result<(), CoreError> {
        for p in &self.planes {
            if p.rows() != self.n {
                return Err(CoreError::Shape("plane has wrong ambient dimension".into()));
            }
        }
        let total: usize = self.planes.iter().map(CMatrix::cols).sum();
        if total > self.n {
            return Err(CoreError::Invalid(format!(
                "planes span {} dimensions in ambient dimension {}",
                total, self.n
            )));
        }
        let stacked = all_columns(self.n, self.planes.iter());
        if stacked.cols() > 0 && stacked.unitarity_residual() > tol {
            return Err(CoreError::Invalid(
                "planes are not jointly orthonormal".into(),
            ));
        }
        Ok(())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.planes.iter().map(CMatrix::cols).collect()
    }
}

/// k plane arrangements sharing one ambient space.
#[derive(Clone, Debug)]
pub struct MultiArrangement<R> {
    pub n: usize,
    pub members: Vec<PlaneArrangement<R>>,
}

impl<R: Real> MultiArrangement<R> {
    pub fn validate(&self, tol: R) -> Result<(), CoreError> {
        if self.members.is_empty() {
            return Err(CoreError::Domain("at least one member required".into()));
        }
        for m in &self.members {
            if m.n != self.n {
                return Err(CoreError::Shape("member ambient dimension mismatch".into()));
            }
            m.validate(tol)?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// Per-member plane dimensions: the arrangement's dimension type.
    pub fn dimension_type(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(PlaneArrangement::dims).collect()
    }
}

/// Deterministic random multi-arrangement: member i takes consecutive
/// column groups of a Haar unitary as its planes.
pub fn random_arrangement<R: Real>(
    n: usize,
    dims: &[Vec<usize>],
    seed: u64,
) -> Result<MultiArrangement<R>, CoreError>
where
    StandardNormal: Distribution<R>,
{
    let mut members = Vec::with_capacity(dims.len());
    for (i, member_dims) in dims.iter().enumerate() {
        let total: usize = member_dims.iter().sum();
        if total > n {
            return Err(CoreError::Domain(format!(
                "member {i} needs {total} dimensions but the ambient space has {n}"
            )));
        }
        let u = random_unitary::<R>(n, seed.wrapping_add(101 * i as u64 + 11))?;
        let mut planes = Vec::with_capacity(member_dims.len());
        let mut off = 0;
        for &d in member_dims {
            planes.push(u.matrix().columns_range(off, off + d));
            off += d;
        }
        members.push(PlaneArrangement { n, planes });
    }
    Ok(MultiArrangement { n, members })
}

/// Cosines of the principal angles between two subspaces: singular values
/// of the cross-Gram matrix `V* W`, sorted descending, clamped to `[0, 1]`.
pub fn principal_angles<R: Real>(
    v: &CMatrix<R>,
    w: &CMatrix<R>,
) -> Result<Vec<R>, CoreError> {
    if v.rows() != w.rows() {
        return Err(CoreError::Shape(format!(
            "ambient dimensions differ: {} vs {}",
            v.rows(),
            w.rows()
        )));
    }
    let cross = v.adjoint().mul(w);
    let mut sv = crate::eigen::singular_values(&cross)?;
    for x in sv.iter_mut() {
        *x = x.min(R::one()).max(R::zero());
    }
    Ok(sv)
}

/// Chordal subspace distance derived from principal angles:
/// `sqrt(sum_i (1 - cos^2 theta_i))` over the smaller dimension.
pub fn subspace_distance<R: Real>(v: &CMatrix<R>, w: &CMatrix<R>) -> Result<R, CoreError> {
    let cos = principal_angles(v, w)?;
    let mut acc = R::zero();
    for c in cos {
        acc = acc + (R::one() - c * c).max(R::zero());
    }
    Ok(acc.sqrt())
}

/// Flattened principal-angle lists over all ordered pairs of distinct
/// planes (across members and within them). Two arrangements of equal
/// dimension type are compared entry by entry.
pub fn angle_signature<R: Real>(m: &MultiArrangement<R>) -> Result<Vec<R>, CoreError> {
    let planes: Vec<&CMatrix<R>> = m
        .members
        .iter()
        .flat_map(|a| a.planes.iter())
        .collect();
    let mut out = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            out.extend(principal_angles(planes[i], planes[j])?);
        }
    }
    Ok(out)
}

fn rotation_block<R: Real>(k: usize, n: usize, member: usize, theta: R) -> CMatrix<R> {
    let mut a = CMatrix::identity(k * n);
    if member == 0 {
        return a;
    }
    let (c, s) = (theta.cos(), theta.sin());
    for r in 0..n {
        a[(r, r)] = C::new(c, R::zero());
        a[(r, member * n + r)] = C::new(s, R::zero());
        a[(member * n + r, r)] = C::new(-s, R::zero());
        a[(member * n + r, member * n + r)] = C::new(c, R::zero());
    }
    a
}

/// Plain stabilization: embed every member into the first block of the
/// k-fold ambient sum, exactly (zero padding, no renormalization).
pub fn stabilize_arrangement<R: Real>(m: &MultiArrangement<R>) -> MultiArrangement<R> {
    let k = m.k();
    let n = m.n;
    let members = m
        .members
        .iter()
        .map(|a| PlaneArrangement {
            n: k * n,
            planes: a
                .planes
                .iter()
                .map(|p| {
                    let mut padded = CMatrix::zeros(k * n, p.cols());
                    for i in 0..n {
                        for j in 0..p.cols() {
                            padded[(i, j)] = p[(i, j)];
                        }
                    }
                    padded
                })
                .collect(),
        })
        .collect();
    MultiArrangement { n: k * n, members }
}

/// The contraction homotopy at parameter `theta` in `[0, pi/2]`: member i
/// of the output is the block rotation carrying the first ambient copy
/// toward the i-th, applied to the stabilized member. At 0 this is plain
/// stabilization; at pi/2 member i lands inside the i-th copy, so the
/// result depends only on the dimension type up to a common unitary.
/// Bases are reorthonormalized after rotation to control drift.
pub fn null_homotopy<R: Real>(
    m: &MultiArrangement<R>,
    theta: R,
) -> Result<MultiArrangement<R>, CoreError> {
    if theta < R::zero() || theta > R::FRAC_PI_2() {
        return Err(CoreError::Domain(format!(
            "theta {theta} outside [0, pi/2]"
        )));
    }
    m.validate(R::of(1e-7))?;
    let k = m.k();
    let n = m.n;
    let stabilized = stabilize_arrangement(m);
    let mut members = Vec::with_capacity(k);
    for (i, member) in stabilized.members.iter().enumerate() {
        let a = rotation_block::<R>(k, n, i, theta);
        let planes = member
            .planes
            .iter()
            .map(|p| {
                if p.cols() == 0 {
                    return Ok(CMatrix::zeros(k * n, 0));
                }
                orthonormalize(&a.mul(p))
            })
            .collect::<Result<Vec<_>, _>>()?;
        members.push(PlaneArrangement { n: k * n, planes });
    }
    Ok(MultiArrangement { n: k * n, members })
}

/// Apply a unitary to every plane of every member.
pub fn apply_unitary<R: Real>(
    m: &MultiArrangement<R>,
    g: &UnitaryMatrix<R>,
) -> Result<MultiArrangement<R>, CoreError> {
    if g.n() != m.n {
        return Err(CoreError::Shape("unitary dimension mismatch".into()));
    }
    Ok(MultiArrangement {
        n: m.n,
        members: m
            .members
            .iter()
            .map(|a| PlaneArrangement {
                n: m.n,
                planes: a.planes.iter().map(|p| g.matrix().mul(p)).collect(),
            })
            .collect(),
    })
}

/// Per-plane projector distance between arrangements of equal shape.
pub fn arrangements_close<R: Real>(
    a: &MultiArrangement<R>,
    b: &MultiArrangement<R>,
    tol: R,
) -> bool {
    if a.n != b.n || a.k() != b.k() {
        return false;
    }
    for (x, y) in a.members.iter().zip(b.members.iter()) {
        if x.planes.len() != y.planes.len() {
            return false;
        }
        for (p, q) in x.planes.iter().zip(y.planes.iter()) {
            if p.cols() != q.cols() {
                return false;
            }
            let pp = p.mul(&p.adjoint());
            let pq = q.mul(&q.adjoint());
            if pp.dist_frob(&pq) > tol {
                return false;
            }
        }
    }
    true
}

/// Explicit block-diagonal unitary carrying the endpoint configuration of
/// `a` to that of `b`: block i maps member i's planes of `a` onto member
/// i's planes of `b` plane by plane. Requires equal dimension types.
pub fn matching_block_unitary<R: Real>(
    a: &MultiArrangement<R>,
    b: &MultiArrangement<R>,
) -> Result<UnitaryMatrix<R>, CoreError> {
    if a.n != b.n || a.dimension_type() != b.dimension_type() {
        return Err(CoreError::Shape(
            "arrangements have different dimension types".into(),
        ));
    }
    let n = a.n;
    let mut blocks = Vec::with_capacity(a.k());
    for (ma, mb) in a.members.iter().zip(b.members.iter()) {
        let basis_a = all_columns(n, ma.planes.iter());
        let basis_b = all_columns(n, mb.planes.iter());
        let full_a = orthonormal_completion(&basis_a);
        let full_b = orthonormal_completion(&basis_b);
        blocks.push(full_b.mul(&full_a.adjoint()));
    }
    let refs: Vec<&CMatrix<R>> = blocks.iter().collect();
    let g = CMatrix::block_diag(&refs);
    UnitaryMatrix::new(g, R::of(1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::random_unitary;

    fn c64(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn decompose_identity_is_empty() {
        let cfg = harris_decompose(&UnitaryMatrix::<f64>::identity(5), 1e-9).unwrap();
        assert_eq!(cfg.p(), 0);
        assert_eq!(cfg.n, 5);
    }

    #[test]
    fn decompose_simple_diag() {
        let u = UnitaryMatrix::new(
            CMatrix::diag(&[unit_phase(1.0f64 / 3.0), c64(1.0, 0.0)]),
            1e-12,
        )
        .unwrap();
        let cfg = harris_decompose(&u, 1e-9).unwrap();
        assert_eq!(cfg.p(), 1);
        assert_eq!(cfg.blocks[0].dim(), 1);
        assert!((cfg.blocks[0].phase - 1.0 / 3.0).abs() < 1e-12);
        assert!((cfg.blocks[0].basis[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert!(cfg.blocks[0].basis[(1, 0)].norm() < 1e-12);
    }

    #[test]
    fn reconstruct_examples() {
        let empty = HarrisConfiguration::<f64> { n: 4, blocks: vec![] };
        let u = harris_reconstruct(&empty, 1e-9).unwrap();
        assert_eq!(u.matrix(), &CMatrix::identity(4));

        let mut basis = CMatrix::zeros(2, 1);
        basis[(0, 0)] = c64(1.0, 0.0);
        let cfg = HarrisConfiguration {
            n: 2,
            blocks: vec![HarrisBlock { basis, phase: 0.5 }],
        };
        let u = harris_reconstruct(&cfg, 1e-9).unwrap();
        let expect = CMatrix::diag(&[c64(-1.0, 0.0), c64(1.0, 0.0)]);
        assert!(u.matrix().dist_frob(&expect) < 1e-12);
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..10u64 {
            let u = random_unitary::<f64>(16, seed).unwrap();
            let cfg = harris_decompose(&u, 1e-9).unwrap();
            cfg.validate(1e-9).unwrap();
            let back = harris_reconstruct(&cfg, 1e-9).unwrap();
            let err = back.matrix().dist_frob(u.matrix());
            assert!(err <= 1e-8, "seed {seed}: {err}");
        }
    }

    #[test]
    fn equivariance_via_projectors() {
        let u = random_unitary::<f64>(6, 3).unwrap();
        let w = random_unitary::<f64>(6, 4).unwrap();
        let conj = UnitaryMatrix::new_unchecked(
            w.matrix().mul(u.matrix()).mul(&w.matrix().adjoint()),
        );
        let a = harris_decompose(&u, 1e-9).unwrap();
        let b = harris_decompose(&conj, 1e-9).unwrap();
        assert_eq!(a.p(), b.p());
        for (x, y) in a.blocks.iter().zip(b.blocks.iter()) {
            assert!((x.phase - y.phase).abs() < 1e-10);
            let moved = w.matrix().mul(&x.basis);
            // Same span: all principal-angle cosines equal 1.
            let cos = principal_angles(&moved, &y.basis).unwrap();
            for v in cos {
                assert!((v - 1.0).abs() < 1e-9);
            }
        }
    }

    fn random_config(n: usize, dims: &[usize], seed: u64) -> HarrisConfiguration<f64> {
        let u = random_unitary::<f64>(n, seed).unwrap();
        let mut blocks = Vec::new();
        let mut off = 0;
        for (i, &d) in dims.iter().enumerate() {
            blocks.push(HarrisBlock {
                basis: u.matrix().columns_range(off, off + d),
                phase: 0.1 + 0.8 * (i as f64 + 1.0) / (dims.len() as f64 + 1.0),
            });
            off += d;
        }
        HarrisConfiguration { n, blocks }
    }

    #[test]
    fn face_map_merges_dimensions() {
        let cfg = random_config(6, &[1, 2, 1], 5);
        let merged = face_map(&cfg, 1).unwrap();
        assert_eq!(merged.p(), 2);
        assert_eq!(merged.blocks[0].dim(), 3);
        assert!((merged.blocks[0].phase - cfg.blocks[1].phase).abs() < 1e-15);
        merged.validate(1e-9).unwrap();
        assert!(face_map(&cfg, 4).is_err());
    }

    #[test]
    fn simplicial_face_identities() {
        // d_i d_j = d_{j-1} d_i for i < j, exhaustively for p <= 4.
        for seed in 0..6u64 {
            for dims in [vec![1usize, 1], vec![1, 2, 1], vec![1, 1, 1, 2]] {
                let cfg = random_config(8, &dims, seed);
                let p = cfg.p();
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = face_map(&face_map(&cfg, j).unwrap(), i).unwrap();
                        let rhs = face_map(&face_map(&cfg, i).unwrap(), j - 1).unwrap();
                        assert!(
                            configurations_close(&lhs, &rhs, 1e-12),
                            "d_{i} d_{j} failed on p={p} seed={seed}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn simplicial_degeneracy_identities() {
        for seed in 0..4u64 {
            let cfg = random_config(8, &[1, 2, 1], seed);
            let p = cfg.p();
            for i in 0..=p {
                // d_i s_i = id = d_{i+1} s_i
                let s = degeneracy_map(&cfg, i).unwrap();
                let a = face_map(&s, i).unwrap();
                let b = face_map(&s, i + 1).unwrap();
                assert!(configurations_close(&a, &cfg, 1e-12), "d_{i} s_{i}");
                assert!(configurations_close(&b, &cfg, 1e-12), "d_{} s_{i}", i + 1);
            }
            // s_i s_j = s_{j+1} s_i for i <= j
            for j in 0..=p {
                for i in 0..=j {
                    let lhs = degeneracy_map(&degeneracy_map(&cfg, j).unwrap(), i).unwrap();
                    let rhs = degeneracy_map(&degeneracy_map(&cfg, i).unwrap(), j + 1).unwrap();
                    assert!(configurations_close(&lhs, &rhs, 1e-12), "s_{i} s_{j}");
                }
            }
        }
    }

    #[test]
    fn principal_angle_examples() {
        let u = random_unitary::<f64>(6, 8).unwrap();
        let v = u.matrix().columns_range(0, 2);
        let w = u.matrix().columns_range(2, 5);
        // Same subspace: all ones.
        for x in principal_angles(&v, &v).unwrap() {
            assert!((x - 1.0).abs() < 1e-12);
        }
        // Orthogonal subspaces: all zeros.
        for x in principal_angles(&v, &w).unwrap() {
            assert!(x.abs() < 1e-12);
        }
        // Unitary invariance.
        let g = random_unitary::<f64>(6, 9).unwrap();
        let a = principal_angles(&v, &w).unwrap();
        let b = principal_angles(&g.matrix().mul(&v), &g.matrix().mul(&w)).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() <= 1e-9);
        }
        let bad = CMatrix::<f64>::zeros(4, 1);
        assert!(principal_angles(&v, &bad).is_err());
    }

    #[test]
    fn homotopy_theta_zero_is_stabilization() {
        let m = random_arrangement::<f64>(4, &[vec![1, 2], vec![2]], 3).unwrap();
        let out = null_homotopy(&m, 0.0).unwrap();
        let plain = stabilize_arrangement(&m);
        assert_eq!(out.n, 8);
        for (a, b) in out.members.iter().zip(plain.members.iter()) {
            for (p, q) in a.planes.iter().zip(b.planes.iter()) {
                assert!(p.max_abs_diff(q) <= 1e-12);
            }
        }
    }

    #[test]
    fn homotopy_preserves_invariants() {
        let m = random_arrangement::<f64>(4, &[vec![1, 1], vec![2]], 5).unwrap();
        for theta in [0.3f64, 0.9, std::f64::consts::FRAC_PI_2] {
            let out = null_homotopy(&m, theta).unwrap();
            out.validate(1e-9).unwrap();
        }
        assert!(null_homotopy(&m, -0.1).is_err());
        assert!(null_homotopy(&m, 1.8).is_err());
    }

    #[test]
    fn homotopy_endpoint_is_constant_on_dimension_type() {
        let dims = vec![vec![1usize, 2], vec![2usize]];
        let m1 = random_arrangement::<f64>(4, &dims, 21).unwrap();
        let m2 = random_arrangement::<f64>(4, &dims, 22).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let e1 = null_homotopy(&m1, half_pi).unwrap();
        let e2 = null_homotopy(&m2, half_pi).unwrap();
        let s1 = angle_signature(&e1).unwrap();
        let s2 = angle_signature(&e2).unwrap();
        assert_eq!(s1.len(), s2.len());
        for (a, b) in s1.iter().zip(s2.iter()) {
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
        // Explicit matching unitary between the endpoints.
        let g = matching_block_unitary(&m1, &m2).unwrap();
        let moved = apply_unitary(&e1, &g).unwrap();
        assert!(arrangements_close(&moved, &e2, 1e-9));
    }

    #[test]
    fn homotopy_is_lipschitz_in_theta() {
        let m = random_arrangement::<f64>(5, &[vec![2, 1], vec![3]], 33).unwrap();
        let steps = 24;
        let delta = std::f64::consts::FRAC_PI_2 / steps as f64;
        let mut previous = null_homotopy(&m, 0.0).unwrap();
        for s in 1..=steps {
            let theta = delta * s as f64;
            let current = null_homotopy(&m, theta).unwrap();
            for (a, b) in previous.members.iter().zip(current.members.iter()) {
                for (p, q) in a.planes.iter().zip(b.planes.iter()) {
                    let d = subspace_distance(p, q).unwrap();
                    assert!(d <= 2.0 * delta, "distance {d} over step {delta}");
                }
            }
            previous = current;
        }
    }
}
