//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the algorithms under test beyond letter comparisons and word storage.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use higman_core::{Alphabet, FinalSegment, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive word length for membership comparisons.
pub const ORACLE_BOUND: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab() -> Arc<Alphabet> {
    Arc::new(Alphabet::plain("ab").unwrap())
}

pub fn seg(alpha: &Arc<Alphabet>, gens: &[&str]) -> FinalSegment {
    FinalSegment::parse(alpha.clone(), gens).unwrap()
}

pub fn w(alpha: &Alphabet, s: &str) -> Word {
    alpha.parse_word(s).unwrap()
}

/// Subsequence embedding by dynamic programming over prefix pairs.
pub fn embeds(alpha: &Alphabet, u: &Word, v: &Word) -> bool {
    let (u, v) = (u.letters(), v.letters());
    let mut dp = vec![vec![false; v.len() + 1]; u.len() + 1];
    for row in dp[0].iter_mut() {
        *row = true;
    }
    for i in 1..=u.len() {
        for j in 1..=v.len() {
            dp[i][j] = dp[i][j - 1] || (dp[i - 1][j - 1] && alpha.leq(u[i - 1], v[j - 1]));
        }
    }
    dp[u.len()][v.len()]
}

/// All words of length at most `n`, shortest first.
pub fn all_words(alpha: &Alphabet, n: usize) -> Vec<Word> {
    let letters: Vec<_> = alpha.letters().collect();
    let mut layer = vec![Word::empty()];
    let mut out = layer.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &layer {
            for &a in &letters {
                let mut x = v.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Membership in the up-closure of `gens`.
pub fn member(alpha: &Alphabet, gens: &[Word], v: &Word) -> bool {
    gens.iter().any(|g| embeds(alpha, g, v))
}

pub fn in_concat(x: impl Fn(&Word) -> bool, y: impl Fn(&Word) -> bool, v: &Word) -> bool {
    (0..=v.len()).any(|i| {
        let (l, r) = v.split_at(i);
        x(&l) && y(&r)
    })
}

/// Minimal words of a set under embedding.
pub fn minimal(alpha: &Alphabet, words: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = words
        .iter()
        .filter(|v| !words.iter().any(|u| u != *v && embeds(alpha, u, v)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

fn is_antichain(alpha: &Alphabet, words: &[Word]) -> bool {
    words
        .iter()
        .enumerate()
        .all(|(i, u)| words.iter().enumerate().all(|(j, v)| i == j || !embeds(alpha, u, v)))
}

/// Every antichain of one to three words of length one to three over
/// `{a, b}`, together with `A*`.
pub fn regression_set() -> Vec<FinalSegment> {
    let alpha = ab();
    let words: Vec<Word> = all_words(&alpha, 3).into_iter().filter(|v| !v.is_empty()).collect();
    let mut out = vec![FinalSegment::full(alpha.clone())];
    let n = words.len();
    for i in 0..n {
        out.push(FinalSegment::new(alpha.clone(), vec![words[i].clone()]));
        for j in i + 1..n {
            let pair = vec![words[i].clone(), words[j].clone()];
            if is_antichain(&alpha, &pair) {
                out.push(FinalSegment::new(alpha.clone(), pair));
            }
            for k in j + 1..n {
                let triple = vec![words[i].clone(), words[j].clone(), words[k].clone()];
                if is_antichain(&alpha, &triple) {
                    out.push(FinalSegment::new(alpha.clone(), triple));
                }
            }
        }
    }
    out
}

/// A random word of length in `lens`.
pub fn random_word(alpha: &Alphabet, rng: &mut impl Rng, lens: std::ops::RangeInclusive<usize>) -> Word {
    let letters: Vec<_> = alpha.letters().collect();
    let len = rng.gen_range(lens);
    Word::new((0..len).map(|_| *letters.choose(rng).unwrap()).collect())
}

/// A nonempty final segment with one to three random generators.
pub fn random_segment(alpha: &Arc<Alphabet>, rng: &mut impl Rng, lens: std::ops::RangeInclusive<usize>) -> FinalSegment {
    let k = rng.gen_range(1..=3);
    let gens = (0..k).map(|_| random_word(alpha, rng, lens.clone())).collect();
    FinalSegment::new(alpha.clone(), gens)
}

/// The words of length at most `n` in a segment, as a set.
pub fn language(f: &FinalSegment, n: usize) -> BTreeSet<Word> {
    all_words(f.alphabet(), n)
        .into_iter()
        .filter(|v| member(f.alphabet(), f.basis(), v))
        .collect()
}

/// Up-sets of a product of chains `0 < 1 < … < d-1`, by testing every subset.
pub fn brute_upsets(dims: &[usize]) -> u128 {
    let mut points: Vec<Vec<usize>> = vec![vec![]];
    for &d in dims {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let n = points.len();
    assert!(n <= 20, "too many points for subset enumeration");
    let leq = |p: &Vec<usize>, q: &Vec<usize>| p.iter().zip(q).all(|(a, b)| a <= b);
    let above: Vec<u32> = points
        .iter()
        .map(|p| {
            points
                .iter()
                .enumerate()
                .filter(|(_, q)| leq(p, q))
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let mut count = 0u128;
    for mask in 0u32..(1u32 << n) {
        if (0..n).all(|i| mask & (1 << i) == 0 || mask & above[i] == above[i]) {
            count += 1;
        }
    }
    count
}

/// The envelope of `F` computed by sets of words: right residuals `F w⁻¹`
/// restricted to words of length at most [`ORACLE_BOUND`], closed under
/// intersection, plus the set of all words. Exact when the generators of
/// `F` have total length at most the bound.
pub fn brute_envelope(f: &FinalSegment) -> BTreeSet<BTreeSet<Word>> {
    let alpha = f.alphabet();
    let total: usize = f.basis().iter().map(Word::len).sum();
    assert!(total <= ORACLE_BOUND, "generators too long for an exact brute-force envelope");
    let universe = all_words(alpha, ORACLE_BOUND);
    let mut sets: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
    sets.insert(universe.iter().cloned().collect());
    for suffix in all_words(alpha, total) {
        let residual: BTreeSet<Word> = universe
            .iter()
            .filter(|u| member(alpha, f.basis(), &u.concat(&suffix)))
            .cloned()
            .collect();
        sets.insert(residual);
    }
    loop {
        let list: Vec<_> = sets.iter().cloned().collect();
        let mut grew = false;
        for (i, p) in list.iter().enumerate() {
            for q in &list[i + 1..] {
                if sets.insert(p.intersection(q).cloned().collect()) {
                    grew = true;
                }
            }
        }
        if !grew {
            return sets;
        }
    }
}

/// `w ∈ d(P, Q)` by the defining inclusions `P·w ⊆ Q` and `Q·w̄ ⊆ P`, tested
/// on basis words.
pub fn in_algebra_distance(p: &FinalSegment, q: &FinalSegment, v: &Word) -> bool {
    let alpha = p.alphabet();
    let bar = Word::new(v.letters().iter().rev().map(|&a| alpha.bar(a)).collect());
    p.basis().iter().all(|b| member(alpha, q.basis(), &b.concat(v)))
        && q.basis().iter().all(|c| member(alpha, p.basis(), &c.concat(&bar)))
}

/// Whether `{a^n b^m : n, m ≥ 2}` contains `v`.
pub fn in_a2b2(alpha: &Alphabet, v: &Word) -> bool {
    let s = alpha.format_word(v);
    let n = s.chars().take_while(|&c| c == 'a').count();
    let rest = &s[n..];
    n >= 2 && rest.len() >= 2 && rest.chars().all(|c| c == 'b')
}
