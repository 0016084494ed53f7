//! Final segments of `A*` under the Higman ordering, stored by their
//! canonical antichain basis.
//!
//! With inclusion these form a complete lattice; concatenation distributes
//! over union, `A*` is the unit, and the letter involution extends to an
//! operation-reversing map. Residuals by single words are computed exactly
//! from the basis.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

/// An up-closed subset of `A*`, represented by its minimal words.
///
/// The basis is an antichain sorted in canonical word order, so equality of
/// segments is structural equality of bases. The empty basis is `∅`; the
/// basis `{□}` is `A*`.
#[derive(Clone, Debug)]
pub struct FinalSegment {
    alphabet: Arc<Alphabet>,
    basis: Vec<Word>,
}

impl FinalSegment {
    /// `↑words`, with `words` reduced to its minimal elements.
    pub fn new(alphabet: Arc<Alphabet>, words: Vec<Word>) -> Self {
        let basis = alphabet.minimal_elements(words);
        FinalSegment { alphabet, basis }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        FinalSegment { alphabet, basis: Vec::new() }
    }

    /// `A*`.
    pub fn full(alphabet: Arc<Alphabet>) -> Self {
        FinalSegment {
            alphabet,
            basis: vec![Word::empty()],
        }
    }

    /// `↑w`.
    pub fn principal(alphabet: Arc<Alphabet>, w: Word) -> Self {
        FinalSegment { alphabet, basis: vec![w] }
    }

    /// Parses each generator with [`Alphabet::parse_word`].
    pub fn parse(alphabet: Arc<Alphabet>, generators: &[&str]) -> Result<Self> {
        let words = generators
            .iter()
            .map(|g| alphabet.parse_word(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(alphabet, words))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_empty()
    }

    /// Basis words formatted with [`Alphabet::format_word`].
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|w| self.alphabet.format_word(w)).collect()
    }

    fn same_alphabet(&self, other: &FinalSegment) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.basis.iter().any(|b| self.alphabet.embeds(b, w))
    }

    pub fn union(&self, other: &FinalSegment) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut words = self.basis.clone();
        words.extend(other.basis.iter().cloned());
        Ok(Self::new(self.alphabet.clone(), words))
    }

    pub fn intersect(&self, other: &FinalSegment) -> Result<Self> {
        self.same_alphabet(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let mut words = Vec::new();
        for u in &self.basis {
            for v in &other.basis {
                words.extend(self.alphabet.min_upper_bounds(u, v));
            }
        }
        Ok(Self::new(self.alphabet.clone(), words))
    }

    /// Language concatenation `self · other`.
    pub fn concat(&self, other: &FinalSegment) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut words = Vec::with_capacity(self.basis.len() * other.basis.len());
        for u in &self.basis {
            for v in &other.basis {
                words.push(u.concat(v));
            }
        }
        Ok(Self::new(self.alphabet.clone(), words))
    }

    /// `F w⁻¹ = {x : xw ∈ F}`.
    pub fn right_residual(&self, w: &Word) -> Self {
        let words = self
            .basis
            .iter()
            .map(|u| self.alphabet.max_embeddable_suffix(u, w).0)
            .collect();
        Self::new(self.alphabet.clone(), words)
    }

    /// `w⁻¹ F = {v : wv ∈ F}`.
    pub fn left_residual(&self, w: &Word) -> Self {
        let words = self
            .basis
            .iter()
            .map(|u| self.alphabet.max_embeddable_prefix(u, w).1)
            .collect();
        Self::new(self.alphabet.clone(), words)
    }

    /// Inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &FinalSegment) -> Result<bool> {
        self.same_alphabet(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    /// The algebra's order, which is reverse inclusion: `self <= other` iff `self ⊇ other`.
    pub fn leq(&self, other: &FinalSegment) -> Result<bool> {
        other.is_subset(self)
    }

    /// `{ w̄ : w ∈ self }`.
    pub fn involute(&self) -> Self {
        let words = self.basis.iter().map(|w| self.alphabet.involute(w)).collect();
        Self::new(self.alphabet.clone(), words)
    }

    /// `self · ↑w ⊆ target`.
    pub fn shifted_within(&self, w: &Word, target: &FinalSegment) -> bool {
        self.basis.iter().all(|b| target.contains(&b.concat(w)))
    }

    /// `{w : self · ↑w ⊆ target}`, the intersection of the left residuals of
    /// `target` by the basis words of `self`.
    pub fn right_divisor_into(&self, target: &FinalSegment) -> Result<Self> {
        self.same_alphabet(target)?;
        let mut acc = Self::full(self.alphabet.clone());
        for b in &self.basis {
            acc = acc.intersect(&target.left_residual(b))?;
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    /// The distance of the algebra between two final segments: the set of
    /// words `w` with `p·↑w ⊆ q` and `q·↑w̄ ⊆ p`.
    pub fn algebra_distance(p: &FinalSegment, q: &FinalSegment) -> Result<Self> {
        let forward = p.right_divisor_into(q)?;
        let backward = q.right_divisor_into(p)?.involute();
        forward.intersect(&backward)
    }
}

impl PartialEq for FinalSegment {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}

impl Eq for FinalSegment {}

impl Hash for FinalSegment {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl Ord for FinalSegment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.cmp(&other.basis)
    }
}

impl PartialOrd for FinalSegment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FinalSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.is_full() {
            return write!(f, "A*");
        }
        let parts = self.basis_strings();
        if parts.len() == 1 {
            write!(f, "↑{}", parts[0])
        } else {
            write!(f, "↑{{{}}}", parts.join(","))
        }
    }
}
