//! The eigenvalue map: spectra of unitary tuples as unordered multisets of
//! circle phases, with a transport metric making "equal up to tolerance"
//! meaningful on the quotient.

use crate::eigen::unitary_eigen;
use crate::error::CoreError;
use crate::scalar::Real;
use crate::unitary::{UnitaryMatrix, UnitaryTuple};

/// Unordered multiset of `n` circle phases, stored sorted in `[0, 1)`.
/// A phase `t` stands for the eigenvalue `exp(2 pi i t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMultiset<R> {
    phases: Vec<R>,
}

impl<R: Real> PhaseMultiset<R> {
    pub fn new(mut phases: Vec<R>) -> Result<Self, CoreError> {
        for p in &phases {
            if *p < R::zero() || *p >= R::one() {
                return Err(CoreError::Domain(format!(
                    "phase {p} outside [0, 1)"
                )));
            }
        }
        phases.sort_by(|a, b| a.partial_cmp(b).expect("phases are finite"));
        Ok(PhaseMultiset { phases })
    }

    pub fn zeros(n: usize) -> Self {
        PhaseMultiset {
            phases: vec![R::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[R] {
        &self.phases
    }
}

/// Eigenvalue phases of a unitary matrix, sorted ascending in `[0, 1)`.
/// Phases within `tol` of a full turn are wrapped to 0.
pub fn eigenphases<R: Real>(
    u: &UnitaryMatrix<R>,
    tol: R,
) -> Result<PhaseMultiset<R>, CoreError> {
    let eig = unitary_eigen(u.matrix(), tol)?;
    PhaseMultiset::new(eig.phases)
}

/// Componentwise eigenphases of a tuple: a well-defined invariant of the
/// simultaneous conjugation orbit.
pub fn eigenvalue_map<R: Real>(t: &UnitaryTuple<R>) -> Result<Vec<PhaseMultiset<R>>, CoreError> {
    eigenvalue_map_with_tol(t, R::default_tol())
}

pub fn eigenvalue_map_with_tol<R: Real>(
    t: &UnitaryTuple<R>,
    tol: R,
) -> Result<Vec<PhaseMultiset<R>>, CoreError> {
    t.members().iter().map(|u| eigenphases(u, tol)).collect()
}

fn circle_dist<R: Real>(a: R, b: R) -> R {
    let d = (a - b).abs();
    d.min(R::one() - d)
}

/// Minimal total circular distance over bijections between two multisets of
/// equal size: transport on the circle, evaluated by scanning the n cyclic
/// alignments of the two sorted lists.
pub fn sym_distance<R: Real>(
    a: &PhaseMultiset<R>,
    b: &PhaseMultiset<R>,
) -> Result<R, CoreError> {
    if a.n() != b.n() {
        return Err(CoreError::Shape(format!(
            "multiset sizes differ: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let n = a.n();
    if n == 0 {
        return Ok(R::zero());
    }
    let mut best = R::infinity();
    for shift in 0..n {
        let mut total = R::zero();
        for i in 0..n {
            total = total + circle_dist(a.phases[i], b.phases[(i + shift) % n]);
        }
        best = best.min(total);
    }
    Ok(best)
}

/// Largest componentwise transport distance between two eigenvalue-map
/// images.
pub fn sym_distance_componentwise<R: Real>(
    a: &[PhaseMultiset<R>],
    b: &[PhaseMultiset<R>],
) -> Result<R, CoreError> {
    if a.len() != b.len() {
        return Err(CoreError::Shape("component counts differ".into()));
    }
    let mut worst = R::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        worst = worst.max(sym_distance(x, y)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::CMatrix;
    use crate::scalar::{unit_phase, C};
    use crate::unitary::{block_sum, conjugate, random_tuple, random_unitary, stabilize};
    use proptest::prelude::*;

    fn multiset(phases: &[f64]) -> PhaseMultiset<f64> {
        PhaseMultiset::new(phases.to_vec()).unwrap()
    }

    #[test]
    fn eigenphases_examples() {
        let id = UnitaryMatrix::<f64>::identity(4);
        assert_eq!(eigenphases(&id, 1e-9).unwrap(), PhaseMultiset::zeros(4));

        let flip = UnitaryMatrix::<f64>::new(
            CMatrix::from_rows(vec![
                vec![C::new(0.0, 0.0), C::new(1.0, 0.0)],
                vec![C::new(1.0, 0.0), C::new(0.0, 0.0)],
            ])
            .unwrap(),
            1e-12,
        )
        .unwrap();
        let ph = eigenphases(&flip, 1e-9).unwrap();
        assert!((ph.phases()[0] - 0.0).abs() < 1e-12);
        assert!((ph.phases()[1] - 0.5).abs() < 1e-12);

        let diag = UnitaryMatrix::new(
            CMatrix::diag(&[unit_phase(0.3f64), unit_phase(0.7)]),
            1e-12,
        )
        .unwrap();
        let ph = eigenphases(&diag, 1e-9).unwrap();
        assert!((ph.phases()[0] - 0.3).abs() < 1e-12);
        assert!((ph.phases()[1] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn phases_near_full_turn_wrap_to_zero() {
        let u = UnitaryMatrix::new(
            CMatrix::diag(&[unit_phase(1.0f64 - 1e-12), unit_phase(0.25)]),
            1e-9,
        )
        .unwrap();
        let ph = eigenphases(&u, 1e-9).unwrap();
        assert_eq!(ph.phases()[0], 0.0);
    }

    #[test]
    fn eigenvalue_map_identity_tuple() {
        let t = UnitaryTuple::<f64>::identity(3, 4);
        let img = eigenvalue_map(&t).unwrap();
        assert_eq!(img.len(), 4);
        for m in img {
            assert_eq!(m, PhaseMultiset::zeros(3));
        }
    }

    #[test]
    fn dimension_one_is_faithful() {
        // For n = 1 the map keeps each scalar's phase exactly.
        let phases = [0.1f64, 0.6, 0.9];
        let members: Vec<UnitaryMatrix<f64>> = phases
            .iter()
            .map(|&t| UnitaryMatrix::new(CMatrix::diag(&[unit_phase(t)]), 1e-12).unwrap())
            .collect();
        let t = UnitaryTuple::new(members).unwrap();
        let img = eigenvalue_map(&t).unwrap();
        for (m, &expect) in img.iter().zip(phases.iter()) {
            assert!((m.phases()[0] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn sym_distance_examples() {
        let a = multiset(&[0.1, 0.4, 0.8]);
        assert_eq!(sym_distance(&a, &a).unwrap(), 0.0);
        let b = multiset(&[0.95]);
        let c = multiset(&[0.05]);
        assert!((sym_distance(&b, &c).unwrap() - 0.10).abs() < 1e-15);
        assert!(sym_distance(&a, &b).is_err());
    }

    /// Factorial brute force over all bijections.
    fn brute_force_distance(a: &PhaseMultiset<f64>, b: &PhaseMultiset<f64>) -> f64 {
        fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let n = a.n();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut all = Vec::new();
        perms(&mut idx, 0, &mut all);
        let mut best = f64::INFINITY;
        for p in all {
            let mut total = 0.0;
            for i in 0..n {
                let d = (a.phases()[i] - b.phases()[p[i]]).abs();
                total += d.min(1.0 - d);
            }
            best = best.min(total);
        }
        best
    }

    proptest! {
        #[test]
        fn cyclic_scan_matches_brute_force(
            xs in proptest::collection::vec(0.0f64..1.0, 1..=6),
            ys in proptest::collection::vec(0.0f64..1.0, 1..=6),
        ) {
            let n = xs.len().min(ys.len());
            let a = multiset(&xs[..n]);
            let b = multiset(&ys[..n]);
            let scan = sym_distance(&a, &b).unwrap();
            let brute = brute_force_distance(&a, &b);
            prop_assert!((scan - brute).abs() <= 1e-12, "scan {scan} vs brute {brute}");
        }

        #[test]
        fn metric_axioms(
            xs in proptest::collection::vec(0.0f64..1.0, 4),
            ys in proptest::collection::vec(0.0f64..1.0, 4),
            zs in proptest::collection::vec(0.0f64..1.0, 4),
        ) {
            let a = multiset(&xs);
            let b = multiset(&ys);
            let c = multiset(&zs);
            let ab = sym_distance(&a, &b).unwrap();
            let ba = sym_distance(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12);
            prop_assert!(sym_distance(&a, &a).unwrap() == 0.0);
            let ac = sym_distance(&a, &c).unwrap();
            let cb = sym_distance(&c, &b).unwrap();
            prop_assert!(ab <= ac + cb + 1e-12);
        }
    }

    #[test]
    fn conjugation_invariance() {
        for seed in 0..8u64 {
            let t = random_tuple::<f64>(5, 3, seed).unwrap();
            let w = random_unitary::<f64>(5, seed + 1000).unwrap();
            let tc = conjugate(&t, &w).unwrap();
            let d = sym_distance_componentwise(
                &eigenvalue_map(&t).unwrap(),
                &eigenvalue_map(&tc).unwrap(),
            )
            .unwrap();
            assert!(d <= 1e-9, "seed {seed}: distance {d}");
        }
    }

    #[test]
    fn stabilization_adds_a_zero_phase() {
        let t = random_tuple::<f64>(3, 2, 33).unwrap();
        let img = eigenvalue_map(&t).unwrap();
        let imgs = eigenvalue_map(&stabilize(&t, 1)).unwrap();
        for (m, ms) in img.iter().zip(imgs.iter()) {
            let mut expect = m.phases().to_vec();
            expect.push(0.0);
            let expect = PhaseMultiset::new(expect).unwrap();
            assert!(sym_distance(&expect, ms).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn block_sum_unions_spectra() {
        let s = random_tuple::<f64>(2, 2, 101).unwrap();
        let t = random_tuple::<f64>(3, 2, 102).unwrap();
        let sum = block_sum(&s, &t).unwrap();
        let img_sum = eigenvalue_map(&sum).unwrap();
        let img_s = eigenvalue_map(&s).unwrap();
        let img_t = eigenvalue_map(&t).unwrap();
        for i in 0..2 {
            let mut union = img_s[i].phases().to_vec();
            union.extend_from_slice(img_t[i].phases());
            let union = PhaseMultiset::new(union).unwrap();
            assert!(sym_distance(&union, &img_sum[i]).unwrap() <= 1e-9);
        }
    }
}
