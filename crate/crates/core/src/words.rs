//! Ordered alphabets with an involution, words over them, and the Higman
//! subword ordering.
//!
//! Words are plain letter sequences; every operation that depends on the
//! letter order or the involution is a method of [`Alphabet`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word. Ordered length-first, then lexicographically by letter index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Juxtaposition `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Splits into `(self[..at], self[at..])`.
    pub fn split_at(&self, at: usize) -> (Word, Word) {
        (self.prefix(at), self.suffix_from(at))
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// A finite alphabet with a partial order and an order-preserving involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    // leq[a * n + b] <=> a <= b
    leq: Vec<bool>,
    bar: Vec<Letter>,
    // minimal common upper bounds of (a, b), indexed a * n + b
    joins: Vec<Vec<Letter>>,
}

impl Alphabet {
    /// Builds an alphabet from letter names, a list of `(a, b)` pairs meaning
    /// `a <= b` (closed reflexively and transitively here) and a partial
    /// involution map. Letters absent from the map are fixed unless they are
    /// the image of another letter, in which case the map is completed
    /// symmetrically.
    pub fn new(letters: &[&str], order: &[(&str, &str)], involution: &[(&str, &str)]) -> Result<Self> {
        let n = letters.len();
        if n > u16::MAX as usize {
            return Err(Error::CheckFailed(format!("{n} letters is too many")));
        }
        let mut names = Vec::with_capacity(n);
        for &l in letters {
            if l.is_empty() || l.contains(['[', ']']) {
                return Err(Error::MalformedWord {
                    word: l.to_string(),
                    reason: "letter names must be nonempty and free of brackets".into(),
                });
            }
            if names.iter().any(|x: &String| x == l) {
                return Err(Error::DuplicateLetter(l.to_string()));
            }
            names.push(l.to_string());
        }
        let lookup = |s: &str| -> Result<usize> {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::UnknownLetter(s.to_string()))
        };

        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in order {
            let (a, b) = (lookup(a)?, lookup(b)?);
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::OrderNotAntisymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }

        let mut bar: Vec<Option<usize>> = vec![None; n];
        for &(a, b) in involution {
            let (a, b) = (lookup(a)?, lookup(b)?);
            for (from, to) in [(a, b), (b, a)] {
                match bar[from] {
                    Some(prev) if prev != to => return Err(Error::NotAnInvolution(names[from].clone())),
                    _ => bar[from] = Some(to),
                }
            }
        }
        let bar: Vec<Letter> = bar
            .into_iter()
            .enumerate()
            .map(|(i, b)| Letter(b.unwrap_or(i) as u16))
            .collect();
        for i in 0..n {
            if bar[bar[i].index()].index() != i {
                return Err(Error::NotAnInvolution(names[i].clone()));
            }
            for j in 0..n {
                if leq[i * n + j] && !leq[bar[i].index() * n + bar[j].index()] {
                    return Err(Error::InvolutionNotMonotone(names[i].clone(), names[j].clone()));
                }
            }
        }

        let mut joins = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&c| leq[a * n + c] && leq[b * n + c]).collect();
                joins[a * n + b] = uppers
                    .iter()
                    .copied()
                    .filter(|&c| !uppers.iter().any(|&d| d != c && leq[d * n + c]))
                    .map(|c| Letter(c as u16))
                    .collect();
            }
        }

        Ok(Alphabet { names, leq, bar, joins })
    }

    /// One letter per character of `chars`, trivial order, identity involution.
    pub fn plain(chars: &str) -> Result<Self> {
        let owned: Vec<String> = chars.chars().map(String::from).collect();
        let letters: Vec<&str> = owned.iter().map(String::as_str).collect();
        Self::new(&letters, &[], &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|x| x == name)
            .map(|i| Letter(i as u16))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// `a <= b` in the letter order.
    pub fn leq(&self, a: Letter, b: Letter) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    /// The involution on letters.
    pub fn bar(&self, a: Letter) -> Letter {
        self.bar[a.index()]
    }

    /// Minimal common upper bounds of two letters (possibly none).
    pub fn letter_joins(&self, a: Letter, b: Letter) -> &[Letter] {
        &self.joins[a.index() * self.len() + b.index()]
    }

    /// Order pairs `(a, b)` with `a < b` (strict), for serialization.
    pub fn strict_order_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.letters() {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Parses a word. Single-character letters are written as themselves,
    /// longer letter names are enclosed in brackets: `"a[b']c"`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            let name = if c == '[' {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(c) => name.push(c),
                        None => {
                            return Err(Error::MalformedWord {
                                word: s.to_string(),
                                reason: "unterminated `[`".into(),
                            })
                        }
                    }
                }
                name
            } else if c == ']' {
                return Err(Error::MalformedWord {
                    word: s.to_string(),
                    reason: "unbalanced `]`".into(),
                });
            } else {
                c.to_string()
            };
            out.push(self.letter(&name)?);
        }
        Ok(Word(out))
    }

    /// Inverse of [`Alphabet::parse_word`]; the empty word formats as `""`.
    pub fn format_word(&self, w: &Word) -> String {
        let mut s = String::new();
        for &a in w.letters() {
            let name = self.name(a);
            if name.chars().count() == 1 {
                s.push_str(name);
            } else {
                s.push('[');
                s.push_str(name);
                s.push(']');
            }
        }
        s
    }

    /// Like [`Alphabet::format_word`] but shows the empty word as `□`.
    pub fn show_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "□".to_string()
        } else {
            self.format_word(w)
        }
    }

    /// Reverses the word and applies the letter involution pointwise.
    pub fn involute(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&a| self.bar(a)).collect())
    }

    /// Higman ordering `u <= v`: `u` embeds into `v` by a strictly increasing
    /// position map with `u[i] <= v[h(i)]`. Greedy leftmost matching.
    pub fn embeds(&self, u: &Word, v: &Word) -> bool {
        if u.len() > v.len() {
            return false;
        }
        let mut j = 0;
        for &a in u.letters() {
            loop {
                if j == v.len() {
                    return false;
                }
                let b = v.0[j];
                j += 1;
                if self.leq(a, b) {
                    break;
                }
            }
        }
        true
    }

    /// Splits `u = u' u''` with `u''` the longest suffix of `u` that embeds into `w`.
    pub fn max_embeddable_suffix(&self, u: &Word, w: &Word) -> (Word, Word) {
        let mut j = w.len();
        let mut i = u.len();
        'outer: while i > 0 {
            let a = u.0[i - 1];
            while j > 0 {
                j -= 1;
                if self.leq(a, w.0[j]) {
                    i -= 1;
                    continue 'outer;
                }
            }
            break;
        }
        u.split_at(i)
    }

    /// Splits `u = u' u''` with `u'` the longest prefix of `u` that embeds into `w`.
    pub fn max_embeddable_prefix(&self, u: &Word, w: &Word) -> (Word, Word) {
        let mut j = 0;
        let mut i = 0;
        'outer: while i < u.len() {
            let a = u.0[i];
            while j < w.len() {
                let b = w.0[j];
                j += 1;
                if self.leq(a, b) {
                    i += 1;
                    continue 'outer;
                }
            }
            break;
        }
        u.split_at(i)
    }

    /// The antichain of minimal words above both `u` and `v`.
    ///
    /// Each step of the merge emits the next letter of `u`, the next letter of
    /// `v`, or a minimal common upper bound of both next letters. Results are
    /// tabulated over suffix pairs and pruned to antichains at every cell.
    pub fn min_upper_bounds(&self, u: &Word, v: &Word) -> Vec<Word> {
        let (n, m) = (u.len(), v.len());
        // table[i][j] holds reversed words for suffixes u[i..], v[j..]
        let mut table: Vec<Vec<Vec<Vec<Letter>>>> = vec![vec![Vec::new(); m + 1]; n + 1];
        for i in (0..=n).rev() {
            for j in (0..=m).rev() {
                let cell = if i == n {
                    vec![v.0[j..].iter().rev().copied().collect()]
                } else if j == m {
                    vec![u.0[i..].iter().rev().copied().collect()]
                } else {
                    let mut cands: Vec<Vec<Letter>> = Vec::new();
                    let extend = |tail: &Vec<Vec<Letter>>, head: Letter, out: &mut Vec<Vec<Letter>>| {
                        for t in tail {
                            let mut w = t.clone();
                            w.push(head);
                            out.push(w);
                        }
                    };
                    extend(&table[i + 1][j], u.0[i], &mut cands);
                    extend(&table[i][j + 1], v.0[j], &mut cands);
                    for &c in self.letter_joins(u.0[i], v.0[j]) {
                        extend(&table[i + 1][j + 1], c, &mut cands);
                    }
                    let words: Vec<Word> = cands
                        .into_iter()
                        .map(|mut r| {
                            r.reverse();
                            Word(r)
                        })
                        .collect();
                    self.minimal_elements(words)
                        .into_iter()
                        .map(|w| w.0.into_iter().rev().collect())
                        .collect()
                };
                table[i][j] = cell;
            }
        }
        let out = std::mem::take(&mut table[0][0])
            .into_iter()
            .map(|mut r| {
                r.reverse();
                Word(r)
            })
            .collect();
        self.minimal_elements(out)
    }

    /// Minimal elements of a finite set of words, sorted canonically.
    pub fn minimal_elements(&self, mut words: Vec<Word>) -> Vec<Word> {
        words.sort();
        words.dedup();
        let keep: Vec<bool> = words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                !words
                    .iter()
                    .enumerate()
                    .any(|(j, u)| j != i && u.len() <= w.len() && self.embeds(u, w))
            })
            .collect();
        words
            .into_iter()
            .zip(keep)
            .filter_map(|(w, k)| k.then_some(w))
            .collect()
    }

    /// All words of length at most `max_len`, in canonical order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in self.letters() {
                    let mut x = w.clone();
                    x.push(a);
                    next.push(x);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Map from letter name to involution image name, omitting fixed letters.
    pub fn involution_map(&self) -> BTreeMap<String, String> {
        self.letters()
            .filter(|&a| self.bar(a) != a)
            .map(|a| (self.name(a).to_string(), self.name(self.bar(a)).to_string()))
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}
