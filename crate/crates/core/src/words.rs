//! Reduced words in the free group on k generators and their traces under
//! a unitary tuple. Traces of words are invariants of the simultaneous
//! conjugation orbit and serve as the orbit fingerprint.

use std::cmp::Ordering;
use std::fmt;

use crate::cmatrix::CMatrix;
use crate::error::CoreError;
use crate::scalar::{C, Real};
use crate::unitary::UnitaryTuple;

/// Number of words examined by default in budget-capped enumerations.
pub const DEFAULT_WORD_BUDGET: usize = 20_000;

/// A reduced word: letters are (generator index, exponent +-1), with no
/// letter immediately followed by its inverse. Generator indices are
/// 0-based internally and 1-based in display and JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<(usize, i8)>) -> Result<Self, CoreError> {
        for &(_, e) in &letters {
            if e != 1 && e != -1 {
                return Err(CoreError::Invalid("exponents must be +1 or -1".into()));
            }
        }
        for pair in letters.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == -pair[1].1 {
                return Err(CoreError::Invalid(
                    "word is not reduced: letter followed by its inverse".into(),
                ));
            }
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, e)| (g, -e))
                .collect(),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    fn letter_key(g: usize, e: i8) -> usize {
        2 * g + usize::from(e < 0)
    }

    /// Length-then-lexicographic order used for deterministic enumeration.
    pub fn canonical_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.letters.iter().map(|&(g, e)| Self::letter_key(g, e));
            let b = other.letters.iter().map(|&(g, e)| Self::letter_key(g, e));
            a.cmp(b)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("x{}", g + 1)
                } else {
                    format!("x{}^-1", g + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Count of reduced words of length exactly `len` over k generators.
pub fn reduced_word_count(k: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let mut total: u128 = 2 * k as u128;
    for _ in 1..len {
        total = total.saturating_mul(2 * k as u128 - 1);
    }
    total
}

/// Largest length L <= requested with cumulative word count within budget.
pub fn effective_max_len(k: usize, requested: usize, budget: usize) -> usize {
    let mut cumulative: u128 = 0;
    for len in 0..=requested {
        cumulative = cumulative.saturating_add(reduced_word_count(k, len));
        if cumulative > budget as u128 {
            return len.saturating_sub(1);
        }
    }
    requested
}

/// Trace of the product of the tuple's members along the word; exponent -1
/// uses the conjugate transpose (the inverse, since members are unitary).
pub fn word_trace<R: Real>(t: &UnitaryTuple<R>, w: &Word) -> Result<C<R>, CoreError> {
    if let Some(g) = w.max_generator() {
        if g >= t.k() {
            return Err(CoreError::Domain(format!(
                "word uses generator x{} but the tuple has arity {}",
                g + 1,
                t.k()
            )));
        }
    }
    let n = t.n();
    let mut prod = CMatrix::identity(n);
    for &(g, e) in w.letters() {
        let m = t.member(g).matrix();
        prod = if e == 1 {
            prod.mul(m)
        } else {
            prod.mul(&m.adjoint())
        };
    }
    Ok(prod.trace())
}

/// Conjugation-invariant fingerprint: traces of every reduced word of
/// length at most `max_len`, in canonical enumeration order.
#[derive(Clone, Debug)]
pub struct WordTraceSignature<R> {
    pub max_len: usize,
    pub entries: Vec<(Word, C<R>)>,
}

impl<R: Real> WordTraceSignature<R> {
    /// Largest entrywise absolute difference; signatures must share the
    /// enumeration parameters.
    pub fn sup_distance(&self, other: &Self) -> Result<R, CoreError> {
        if self.entries.len() != other.entries.len() {
            return Err(CoreError::Shape("signature length mismatch".into()));
        }
        let mut worst = R::zero();
        for ((wa, za), (wb, zb)) in self.entries.iter().zip(other.entries.iter()) {
            if wa != wb {
                return Err(CoreError::Shape("signature word sets differ".into()));
            }
            worst = worst.max((*za - *zb).norm());
        }
        Ok(worst)
    }

    /// Deterministic lexicographic comparison of trace sequences, used for
    /// canonical ordering of decomposition summands.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for ((_, za), (_, zb)) in self.entries.iter().zip(other.entries.iter()) {
            match za
                .re
                .partial_cmp(&zb.re)
                .unwrap_or(Ordering::Equal)
                .then(za.im.partial_cmp(&zb.im).unwrap_or(Ordering::Equal))
            {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.entries.len().cmp(&other.entries.len())
    }

    pub fn get(&self, w: &Word) -> Option<C<R>> {
        self.entries
            .iter()
            .find(|(word, _)| word == w)
            .map(|(_, z)| *z)
    }
}

/// Depth-first walk over reduced words in canonical order, carrying the
/// running product so each node costs one matrix multiply.
fn walk_words<R: Real, F: FnMut(&[(usize, i8)], &CMatrix<R>) -> bool>(
    t: &UnitaryTuple<R>,
    max_len: usize,
    visit: &mut F,
) {
    let n = t.n();
    let mut letters: Vec<(usize, i8)> = Vec::new();
    let mut stack: Vec<CMatrix<R>> = vec![CMatrix::identity(n)];
    walk_rec(t, max_len, &mut letters, &mut stack, visit);
}

fn walk_rec<R: Real, F: FnMut(&[(usize, i8)], &CMatrix<R>) -> bool>(
    t: &UnitaryTuple<R>,
    max_len: usize,
    letters: &mut Vec<(usize, i8)>,
    stack: &mut Vec<CMatrix<R>>,
    visit: &mut F,
) -> bool {
    let prod = stack.last().expect("nonempty").clone();
    if !visit(letters, &prod) {
        return false;
    }
    if letters.len() == max_len {
        return true;
    }
    for g in 0..t.k() {
        for e in [1i8, -1] {
            if let Some(&(lg, le)) = letters.last() {
                if lg == g && le == -e {
                    continue; // not reduced
                }
            }
            let m = t.member(g).matrix();
            let next = if e == 1 {
                prod.mul(m)
            } else {
                prod.mul(&m.adjoint())
            };
            letters.push((g, e));
            stack.push(next);
            let keep_going = walk_rec(t, max_len, letters, stack, visit);
            stack.pop();
            letters.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// All traces of reduced words of length <= max_len, ordered by length then
/// lexicographically.
pub fn signature<R: Real>(t: &UnitaryTuple<R>, max_len: usize) -> WordTraceSignature<R> {
    let mut by_len: Vec<Vec<(Word, C<R>)>> = vec![Vec::new(); max_len + 1];
    walk_words(t, max_len, &mut |letters, prod| {
        by_len[letters.len()].push((
            Word {
                letters: letters.to_vec(),
            },
            prod.trace(),
        ));
        true
    });
    WordTraceSignature {
        max_len,
        entries: by_len.into_iter().flatten().collect(),
    }
}

/// Signature truncated so the total number of words stays within `budget`;
/// returns the effective length actually enumerated.
pub fn signature_budgeted<R: Real>(
    t: &UnitaryTuple<R>,
    max_len: usize,
    budget: usize,
) -> (WordTraceSignature<R>, usize) {
    let eff = effective_max_len(t.k(), max_len, budget);
    (signature(t, eff), eff)
}

/// First word (in canonical length-then-lex order, length <= max_len)
/// whose traces under `s` and `t` differ by more than `tol`, with both
/// trace values. One lockstep walk over both product trees; among all
/// separators the canonically smallest is returned.
pub fn first_separating_word<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
    max_len: usize,
    tol: R,
) -> Option<(Word, C<R>, C<R>)> {
    debug_assert_eq!(s.k(), t.k());
    let mut letters: Vec<(usize, i8)> = Vec::new();
    let mut stack_s = vec![CMatrix::identity(s.n())];
    let mut stack_t = vec![CMatrix::identity(t.n())];
    let mut best: Option<(Word, C<R>, C<R>)> = None;
    walk_pair_rec(
        s, t, max_len, tol, &mut letters, &mut stack_s, &mut stack_t, &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn walk_pair_rec<R: Real>(
    s: &UnitaryTuple<R>,
    t: &UnitaryTuple<R>,
    max_len: usize,
    tol: R,
    letters: &mut Vec<(usize, i8)>,
    stack_s: &mut Vec<CMatrix<R>>,
    stack_t: &mut Vec<CMatrix<R>>,
    best: &mut Option<(Word, C<R>, C<R>)>,
) {
    let prod_s = stack_s.last().expect("nonempty").clone();
    let prod_t = stack_t.last().expect("nonempty").clone();
    let trace_s = prod_s.trace();
    let trace_t = prod_t.trace();
    if (trace_s - trace_t).norm() > tol {
        let candidate = Word {
            letters: letters.clone(),
        };
        let replace = match best {
            Some((existing, _, _)) => candidate.canonical_cmp(existing) == Ordering::Less,
            None => true,
        };
        if replace {
            *best = Some((candidate, trace_s, trace_t));
        }
    }
    if letters.len() == max_len {
        return;
    }
    // Once a separator of some length exists, deeper words cannot beat it.
    if let Some((existing, _, _)) = best {
        if existing.len() <= letters.len() {
            return;
        }
    }
    for g in 0..s.k() {
        for e in [1i8, -1] {
            if let Some(&(lg, le)) = letters.last() {
                if lg == g && le == -e {
                    continue;
                }
            }
            let next_s = if e == 1 {
                prod_s.mul(s.member(g).matrix())
            } else {
                prod_s.mul(&s.member(g).matrix().adjoint())
            };
            let next_t = if e == 1 {
                prod_t.mul(t.member(g).matrix())
            } else {
                prod_t.mul(&t.member(g).matrix().adjoint())
            };
            letters.push((g, e));
            stack_s.push(next_s);
            stack_t.push(next_t);
            walk_pair_rec(s, t, max_len, tol, letters, stack_s, stack_t, best);
            stack_s.pop();
            stack_t.pop();
            letters.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::CMatrix;
    use crate::unitary::{conjugate, random_tuple, random_unitary, UnitaryMatrix, UnitaryTuple};

    #[test]
    fn empty_word_trace_is_dimension() {
        let t = UnitaryTuple::<f64>::identity(5, 2);
        let z = word_trace(&t, &Word::empty()).unwrap();
        assert_eq!(z, C::new(5.0, 0.0));
    }

    #[test]
    fn single_letter_trace() {
        let d = CMatrix::diag(&[C::new(0.0, 1.0), C::new(0.0, -1.0)]);
        let t = UnitaryTuple::new(vec![UnitaryMatrix::new(d, 1e-12).unwrap()]).unwrap();
        let w = Word::new(vec![(0, 1)]).unwrap();
        assert!(word_trace(&t, &w).unwrap().norm() < 1e-15);
    }

    #[test]
    fn out_of_range_generator() {
        let t = UnitaryTuple::<f64>::identity(2, 1);
        let w = Word::new(vec![(1, 1)]).unwrap();
        assert!(word_trace(&t, &w).is_err());
    }

    #[test]
    fn enumeration_k1_len2() {
        let t = UnitaryTuple::<f64>::identity(2, 1);
        let sig = signature(&t, 2);
        let words: Vec<String> = sig.entries.iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(words, vec!["e", "x1", "x1^-1", "x1*x1", "x1^-1*x1^-1"]);
    }

    #[test]
    fn enumeration_counts() {
        let t = random_tuple::<f64>(2, 2, 3).unwrap();
        let sig = signature(&t, 3);
        // 1 + 4 + 12 + 36
        assert_eq!(sig.entries.len(), 53);
        assert_eq!(reduced_word_count(2, 3), 36);
        assert_eq!(effective_max_len(2, 10, 53), 3);
        assert_eq!(effective_max_len(2, 10, 52), 2);
        assert_eq!(effective_max_len(1, 2, 100), 2);
    }

    #[test]
    fn signature_invariants() {
        let t = random_tuple::<f64>(3, 2, 17).unwrap();
        let sig = signature(&t, 2);
        // Empty word entry equals the dimension.
        assert_eq!(sig.entries[0].0, Word::empty());
        assert!((sig.entries[0].1 - C::new(3.0, 0.0)).norm() < 1e-12);
        // Entries for w and its inverse are conjugate.
        for (w, z) in &sig.entries {
            let zi = sig.get(&w.inverse()).expect("inverse enumerated");
            assert!((z.conj() - zi).norm() < 1e-12);
        }
    }

    #[test]
    fn traces_are_conjugation_invariant() {
        for seed in 0..5u64 {
            let t = random_tuple::<f64>(4, 2, seed).unwrap();
            let w = random_unitary::<f64>(4, seed + 50).unwrap();
            let tc = conjugate(&t, &w).unwrap();
            let sa = signature(&t, 3);
            let sb = signature(&tc, 3);
            assert!(sa.sup_distance(&sb).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn stabilize_adds_one_to_every_trace() {
        let t = random_tuple::<f64>(3, 2, 8).unwrap();
        let s = crate::unitary::stabilize(&t, 1);
        let sa = signature(&t, 3);
        let sb = signature(&s, 3);
        for ((_, za), (_, zb)) in sa.entries.iter().zip(sb.entries.iter()) {
            assert!((*zb - *za - C::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn separating_word_is_shortest() {
        let a = UnitaryTuple::new(vec![UnitaryMatrix::new(
            CMatrix::diag(&[C::new(1.0, 0.0), C::new(-1.0, 0.0)]),
            1e-12,
        )
        .unwrap()])
        .unwrap();
        let b = UnitaryTuple::new(vec![UnitaryMatrix::new(
            CMatrix::diag(&[C::new(0.0, 1.0), C::new(0.0, -1.0)]),
            1e-12,
        )
        .unwrap()])
        .unwrap();
        // Both have trace 0 in length 1; squares differ (2 vs -2).
        let (w, za, zb) = first_separating_word(&a, &b, 8, 1e-9).unwrap();
        assert_eq!(w.to_string(), "x1*x1");
        assert!((za - C::new(2.0, 0.0)).norm() < 1e-12);
        assert!((zb - C::new(-2.0, 0.0)).norm() < 1e-12);
    }
}
