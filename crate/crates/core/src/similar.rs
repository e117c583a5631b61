//! The simultaneous similarity decision: are two unitary tuples conjugate
//! by one common unitary?
//!
//! Two stages. A word-trace prefilter compares orbit fingerprints up to a
//! word-length bound (default `2 n^2`, capped by an enumeration budget) and
//! certifies `distinct` with a separating word. The authoritative positive
//! test decomposes both tuples into irreducibles and matches the summand
//! classes; trace agreement alone never certifies `similar`.

use rand_distr::{Distribution, StandardNormal};

use crate::decompose::decompose_irreducibles;
use crate::error::CoreError;
use crate::scalar::{C, Real};
use crate::unitary::UnitaryTuple;
use crate::words::{
    effective_max_len, first_separating_word, signature_budgeted, Word, DEFAULT_WORD_BUDGET,
};

#[derive(Clone, Debug)]
pub struct SummandMatch<R> {
    pub dim: usize,
    pub multiplicity: usize,
    pub signature_distance: R,
}

#[derive(Clone, Debug)]
pub enum Verdict<R> {
    Similar { matching: Vec<SummandMatch<R>> },
    Distinct { witness: Word, trace_a: C<R>, trace_b: C<R> },
    Inconclusive { reason: String },
}

impl<R> Verdict<R> {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Similar { .. } => "similar",
            Verdict::Distinct { .. } => "distinct",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Word length actually used for a requested bound (`None` = `2 n^2`) under
/// the default enumeration budget.
pub fn resolve_word_len(n: usize, k: usize, requested: Option<usize>) -> (usize, usize) {
    let req = requested.unwrap_or(2 * n * n);
    (req, effective_max_len(k, req, DEFAULT_WORD_BUDGET))
}

pub fn simultaneously_similar<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
    tol: R,
    max_word_len: Option<usize>,
    seed: u64,
) -> Result<Verdict<R>, CoreError>
where
    StandardNormal: Distribution<R>,
{
    if s.n() != t.n() {
        return Err(CoreError::Shape(format!(
            "dimension mismatch: {} vs {}",
            s.n(),
            t.n()
        )));
    }
    if s.k() != t.k() {
        return Err(CoreError::Shape(format!(
            "arity mismatch: {} vs {}",
            s.k(),
            t.k()
        )));
    }

    let (_, eff_len) = resolve_word_len(s.n(), s.k(), max_word_len);
    if let Some((witness, trace_a, trace_b)) = first_separating_word(s, t, eff_len, tol) {
        return Ok(Verdict::Distinct {
            witness,
            trace_a,
            trace_b,
        });
    }

    let ds = match decompose_irreducibles(s, tol, seed) {
        Ok(d) => d,
        Err(CoreError::Inconclusive(reason)) => {
            return Ok(Verdict::Inconclusive {
                reason: format!("left decomposition: {reason}"),
            })
        }
        Err(e) => return Err(e),
    };
    let dt = match decompose_irreducibles(t, tol, seed.wrapping_add(1)) {
        Ok(d) => d,
        Err(CoreError::Inconclusive(reason)) => {
            return Ok(Verdict::Inconclusive {
                reason: format!("right decomposition: {reason}"),
            })
        }
        Err(e) => return Err(e),
    };

    if ds.summands.len() != dt.summands.len() {
        return Ok(Verdict::Inconclusive {
            reason: format!(
                "signatures agree to tolerance but decompositions have {} vs {} classes",
                ds.summands.len(),
                dt.summands.len()
            ),
        });
    }

    // Greedy matching on (dim, multiplicity, signature), canonical order
    // with ties broken by smallest signature distance.
    let sig_of = |u: &UnitaryTuple<R>| {
        let len = 2 * u.n() * u.n();
        signature_budgeted(u, len, DEFAULT_WORD_BUDGET).0
    };
    let sigs_t: Vec<_> = dt.summands.iter().map(|x| sig_of(&x.tuple)).collect();
    let mut used = vec![false; dt.summands.len()];
    let mut matching = Vec::with_capacity(ds.summands.len());
    for a in &ds.summands {
        let sig_a = sig_of(&a.tuple);
        let mut best: Option<(usize, R)> = None;
        for (j, b) in dt.summands.iter().enumerate() {
            if used[j] || b.tuple.n() != a.tuple.n() || b.multiplicity != a.multiplicity {
                continue;
            }
            let d = sig_a.sup_distance(&sigs_t[j])?;
            if best.as_ref().map_or(true, |&(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= tol => {
                used[j] = true;
                matching.push(SummandMatch {
                    dim: a.tuple.n(),
                    multiplicity: a.multiplicity,
                    signature_distance: d,
                });
            }
            _ => {
                return Ok(Verdict::Inconclusive {
                    reason: format!(
                        "no matching summand of dimension {} and multiplicity {} within tolerance",
                        a.tuple.n(),
                        a.multiplicity
                    ),
                });
            }
        }
    }
    Ok(Verdict::Similar { matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::CMatrix;
    use crate::scalar::unit_phase;
    use crate::unitary::{block_sum, conjugate, random_tuple, random_unitary, UnitaryMatrix};
    use crate::words::word_trace;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn conjugated_tuples_are_similar() {
        for seed in 0..4u64 {
            let t = random_tuple::<f64>(3, 2, seed).unwrap();
            let w = random_unitary::<f64>(3, seed + 77).unwrap();
            let tc = conjugate(&t, &w).unwrap();
            let v = simultaneously_similar(&t, &tc, 1e-9, None, seed).unwrap();
            assert!(matches!(v, Verdict::Similar { .. }), "seed {seed}: {v:?}");
        }
    }

    #[test]
    fn reflexivity() {
        let t = random_tuple::<f64>(4, 2, 5).unwrap();
        let v = simultaneously_similar(&t, &t, 1e-9, None, 0).unwrap();
        assert!(matches!(v, Verdict::Similar { .. }));
    }

    #[test]
    fn different_single_letter_traces_give_length_one_witness() {
        let a = UnitaryTuple::new(vec![UnitaryMatrix::new(
            CMatrix::diag(&[unit_phase(0.1f64), unit_phase(0.2)]),
            1e-12,
        )
        .unwrap()])
        .unwrap();
        let b = UnitaryTuple::new(vec![UnitaryMatrix::new(
            CMatrix::diag(&[unit_phase(0.1f64), unit_phase(0.6)]),
            1e-12,
        )
        .unwrap()])
        .unwrap();
        let v = simultaneously_similar(&a, &b, 1e-9, None, 0).unwrap();
        match v {
            Verdict::Distinct {
                witness,
                trace_a,
                trace_b,
            } => {
                assert_eq!(witness.len(), 1);
                // Soundness: re-evaluate the witness independently.
                let za = word_trace(&a, &witness).unwrap();
                let zb = word_trace(&b, &witness).unwrap();
                assert!((za - trace_a).norm() < 1e-12);
                assert!((zb - trace_b).norm() < 1e-12);
                assert!((za - zb).norm() > 1e-9);
            }
            other => panic!("expected distinct, got {other:?}"),
        }
    }

    #[test]
    fn hadamard_swap_pair_is_similar() {
        let x = UnitaryMatrix::new(
            CMatrix::from_rows(vec![
                vec![c(0.0, 0.0), c(1.0, 0.0)],
                vec![c(1.0, 0.0), c(0.0, 0.0)],
            ])
            .unwrap(),
            1e-12,
        )
        .unwrap();
        let z =
            UnitaryMatrix::new(CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-12).unwrap();
        let xz = UnitaryTuple::new(vec![x.clone(), z.clone()]).unwrap();
        let zx = UnitaryTuple::new(vec![z, x]).unwrap();
        let v = simultaneously_similar(&xz, &zx, 1e-9, None, 0).unwrap();
        assert!(matches!(v, Verdict::Similar { .. }), "{v:?}");
    }

    #[test]
    fn verdicts_are_symmetric() {
        for seed in 0..4u64 {
            let a = random_tuple::<f64>(2, 2, seed).unwrap();
            let choice = seed % 2 == 0;
            let b = if choice {
                conjugate(&a, &random_unitary(2, seed + 9).unwrap()).unwrap()
            } else {
                random_tuple::<f64>(2, 2, seed + 1000).unwrap()
            };
            let v1 = simultaneously_similar(&a, &b, 1e-9, None, 3).unwrap();
            let v2 = simultaneously_similar(&b, &a, 1e-9, None, 3).unwrap();
            assert_eq!(v1.name(), v2.name(), "seed {seed}");
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = random_tuple::<f64>(2, 2, 1).unwrap();
        let b = random_tuple::<f64>(3, 2, 1).unwrap();
        assert!(simultaneously_similar(&a, &b, 1e-9, None, 0).is_err());
        let d = random_tuple::<f64>(2, 3, 1).unwrap();
        assert!(simultaneously_similar(&a, &d, 1e-9, None, 0).is_err());
    }

    #[test]
    fn perturbation_is_detected_with_high_probability() {
        // Noise at 1e3 * tol must separate the orbits essentially always.
        let tol = 1e-9;
        let mut detected = 0;
        let total = 10;
        for seed in 0..total {
            let t = random_tuple::<f64>(2, 2, seed).unwrap();
            let w = random_unitary::<f64>(2, seed + 500).unwrap();
            let tc = conjugate(&t, &w).unwrap();
            let noisy: Vec<UnitaryMatrix<f64>> = tc
                .members()
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let noise = CMatrix::from_fn(2, 2, |a, b| {
                        let phase = ((seed as f64) + (i * 4 + a * 2 + b) as f64).sin();
                        c(1e-6 * phase, 1e-6 * phase.cos())
                    });
                    let dirty = m.matrix().add(&noise);
                    UnitaryMatrix::new_unchecked(crate::orthonormal::polar_unitary(&dirty, 3))
                })
                .collect();
            let noisy = UnitaryTuple::new(noisy).unwrap();
            let v = simultaneously_similar(&t, &noisy, tol, None, seed).unwrap();
            if matches!(v, Verdict::Distinct { .. }) {
                detected += 1;
            }
        }
        assert!(detected >= 9, "detected only {detected}/{total}");
    }

    #[test]
    fn block_sum_is_commutative_up_to_similarity() {
        let a = random_tuple::<f64>(2, 2, 21).unwrap();
        let b = random_tuple::<f64>(3, 2, 22).unwrap();
        let ab = block_sum(&a, &b).unwrap();
        let ba = block_sum(&b, &a).unwrap();
        let v = simultaneously_similar(&ab, &ba, 1e-9, None, 1).unwrap();
        assert!(matches!(v, Verdict::Similar { .. }), "{v:?}");
    }
}
