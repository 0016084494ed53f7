//! Ferrers tests.
//!
//! A language is Ferrers when its residuals are totally ordered by
//! inclusion. For a final segment the right residuals are finitely many and
//! computable; for a regular language the left residuals are the reachable
//! states of a deterministic automaton and inclusion is decided exactly.
//! The quadruple condition `xx' ∈ L, yy' ∈ L ⇒ xy' ∈ L or yx' ∈ L` can only
//! be sampled, so [`quadruple_sample_test`] refutes but never confirms.

use crate::automata::Dfa;
use crate::envelope::{build_envelope, residual_closure, EnvelopeLattice};
use crate::error::{Error, Result};
use crate::segments::FinalSegment;
use crate::words::{Alphabet, Word};

/// A verdict with an incomparable pair of residuals when negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FerrersVerdict<T> {
    pub ferrers: bool,
    pub witness: Option<(T, T)>,
}

impl<T> FerrersVerdict<T> {
    fn yes() -> Self {
        FerrersVerdict {
            ferrers: true,
            witness: None,
        }
    }

    fn no(a: T, b: T) -> Self {
        FerrersVerdict {
            ferrers: false,
            witness: Some((a, b)),
        }
    }
}

/// Right residuals `F v⁻¹` pairwise comparable under inclusion.
pub fn is_ferrers_segment(segment: &FinalSegment) -> Result<FerrersVerdict<FinalSegment>> {
    if segment.is_empty() {
        return Ok(FerrersVerdict::yes());
    }
    let residuals = residual_closure(segment)?;
    for (i, p) in residuals.iter().enumerate() {
        for q in &residuals[i + 1..] {
            if !p.is_subset(q)? && !q.is_subset(p)? {
                return Ok(FerrersVerdict::no(q.clone(), p.clone()));
            }
        }
    }
    Ok(FerrersVerdict::yes())
}

/// Languages of the reachable states pairwise comparable under inclusion.
/// The witness is a pair of state indices.
pub fn is_ferrers_regular(dfa: &Dfa) -> FerrersVerdict<usize> {
    let states = dfa.reachable();
    for (i, &p) in states.iter().enumerate() {
        for &q in &states[i + 1..] {
            if dfa.inclusion_counterexample(p, q).is_some() && dfa.inclusion_counterexample(q, p).is_some() {
                return FerrersVerdict::no(p, q);
            }
        }
    }
    FerrersVerdict::yes()
}

/// Whether the envelope elements form a chain under inclusion.
pub fn is_linearly_orderable(env: &EnvelopeLattice) -> bool {
    env.is_chain()
}

/// Runs both the residual test and the envelope chain test, failing if they
/// disagree; otherwise returns the shared verdict.
pub fn check_ferrers_equivalence(segment: &FinalSegment) -> Result<bool> {
    let by_residuals = is_ferrers_segment(segment)?.ferrers;
    let by_envelope = is_linearly_orderable(&build_envelope(segment)?);
    if by_residuals != by_envelope {
        return Err(Error::CheckFailed(format!(
            "{segment}: residual test says {by_residuals}, envelope chain test says {by_envelope}"
        )));
    }
    Ok(by_residuals)
}

/// Words with `xx' ∈ L` and `yy' ∈ L` but neither `xy'` nor `yx'` in `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    pub x: Word,
    pub x2: Word,
    pub y: Word,
    pub y2: Word,
}

/// Whether one quadruple satisfies the exchange condition.
pub fn quadruple_holds(member: impl Fn(&Word) -> bool, x: &Word, x2: &Word, y: &Word, y2: &Word) -> bool {
    !(member(&x.concat(x2)) && member(&y.concat(y2))) || member(&x.concat(y2)) || member(&y.concat(x2))
}

/// Tries every quadruple of words of length at most `bound`. `Some` refutes
/// the Ferrers property; `None` is only evidence for it.
pub fn quadruple_sample_test(alphabet: &Alphabet, member: impl Fn(&Word) -> bool, bound: usize) -> Option<Quadruple> {
    let words = alphabet.words_up_to(bound);
    let pairs: Vec<(&Word, &Word)> = words
        .iter()
        .flat_map(|x| words.iter().map(move |x2| (x, x2)))
        .filter(|(x, x2)| member(&x.concat(x2)))
        .collect();
    for &(x, x2) in &pairs {
        for &(y, y2) in &pairs {
            if !member(&x.concat(y2)) && !member(&y.concat(x2)) {
                return Some(Quadruple {
                    x: x.clone(),
                    x2: x2.clone(),
                    y: y.clone(),
                    y2: y2.clone(),
                });
            }
        }
    }
    None
}
