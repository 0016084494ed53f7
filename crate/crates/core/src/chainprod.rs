//! Up-sets of finite chain products and the coding of an envelope `S_F`
//! into them.
//!
//! For `F = ↑{u_0, …, u_{k-1}}` with nonempty generators, the envelope is
//! isomorphic to an intersection-closed family of up-sets of
//! `n_0 ⊗ ⋯ ⊗ n_{k-1}` with `n_i = |u_i|`, and to all of them when the
//! generators have pairwise disjoint down-sets.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::envelope::EnvelopeLattice;
use crate::error::{Error, Result};
use crate::segments::FinalSegment;
use crate::words::{Alphabet, Letter, Word};

/// Products with more points than this are not enumerated.
pub const ENUMERATION_POINT_CAP: usize = 64;

/// `n_0 ⊗ ⋯ ⊗ n_{k-1}`, points ordered componentwise and indexed in mixed
/// radix with the last coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainProduct {
    dims: Vec<usize>,
    size: usize,
}

impl ChainProduct {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidProduct("no chains".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidProduct("chains must be nonempty".into()));
        }
        let size = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidProduct("too many points".into()))?;
        Ok(ChainProduct { dims: dims.to_vec(), size })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.dims.len()];
        for (slot, &n) in t.iter_mut().zip(&self.dims).rev() {
            *slot = index % n;
            index /= n;
        }
        t
    }

    pub fn index(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.dims.len() {
            return None;
        }
        let mut idx = 0;
        for (&x, &n) in tuple.iter().zip(&self.dims) {
            if x >= n {
                return None;
            }
            idx = idx * n + x;
        }
        Some(idx)
    }

    pub fn leq(&self, p: &[usize], q: &[usize]) -> bool {
        p.iter().zip(q).all(|(a, b)| a <= b)
    }

    /// Indices of the points covering `index` (one coordinate up by one).
    fn successors(&self, index: usize) -> Vec<usize> {
        let t = self.tuple(index);
        let mut out = Vec::new();
        let mut stride = 1;
        for i in (0..self.dims.len()).rev() {
            if t[i] + 1 < self.dims[i] {
                out.push(index + stride);
            }
            stride *= self.dims[i];
        }
        out
    }
}

/// An up-closed set of points of a [`ChainProduct`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpSet {
    bits: Vec<u64>,
    product: ChainProduct,
}

impl PartialOrd for ChainProduct {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ChainProduct {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dims.cmp(&other.dims)
    }
}

impl UpSet {
    pub fn empty(product: &ChainProduct) -> Self {
        UpSet {
            bits: vec![0; product.len().div_ceil(64)],
            product: product.clone(),
        }
    }

    pub fn full(product: &ChainProduct) -> Self {
        let mut u = Self::empty(product);
        for i in 0..product.len() {
            u.set(i, true);
        }
        u
    }

    /// `↑tuples`.
    pub fn from_min_tuples(product: &ChainProduct, tuples: &[Vec<usize>]) -> Result<Self> {
        let mins = tuples
            .iter()
            .map(|t| {
                product
                    .index(t)
                    .map(|_| t.clone())
                    .ok_or_else(|| Error::InvalidProduct(format!("tuple {t:?} is outside {:?}", product.dims)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut u = Self::empty(product);
        for i in 0..product.len() {
            let t = product.tuple(i);
            if mins.iter().any(|m| product.leq(m, &t)) {
                u.set(i, true);
            }
        }
        Ok(u)
    }

    /// `None` if `points` is not up-closed.
    pub fn from_points(product: &ChainProduct, points: &[usize]) -> Option<Self> {
        let mut u = Self::empty(product);
        for &p in points {
            if p >= product.len() {
                return None;
            }
            u.set(p, true);
        }
        u.is_up_closed().then_some(u)
    }

    fn set(&mut self, i: usize, on: bool) {
        if on {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn product(&self) -> &ChainProduct {
        &self.product
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.product.index(tuple).is_some_and(|i| self.contains_index(i))
    }

    /// Number of points in the set.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_up_closed(&self) -> bool {
        (0..self.product.len())
            .filter(|&i| self.contains_index(i))
            .all(|i| self.product.successors(i).into_iter().all(|j| self.contains_index(j)))
    }

    pub fn intersect(&self, other: &UpSet) -> Result<UpSet> {
        if self.product != other.product {
            return Err(Error::InvalidProduct("up-sets of different products".into()));
        }
        Ok(UpSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
            product: self.product.clone(),
        })
    }

    pub fn is_subset(&self, other: &UpSet) -> bool {
        self.product == other.product && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// The antichain of minimal points, in index order.
    pub fn min_tuples(&self) -> Vec<Vec<usize>> {
        let members: Vec<Vec<usize>> = (0..self.product.len())
            .filter(|&i| self.contains_index(i))
            .map(|i| self.product.tuple(i))
            .collect();
        members
            .iter()
            .filter(|t| !members.iter().any(|s| s != *t && self.product.leq(s, t)))
            .cloned()
            .collect()
    }
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .min_tuples()
            .iter()
            .map(|t| format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "↑{{{}}}", parts.join(","))
    }
}

fn binomial_paths(n0: usize, n1: usize) -> Result<u128> {
    // monotone staircases in an n0 × n1 box
    let mut row = vec![1u128; n1 + 1];
    for _ in 0..n0 {
        for j in 1..=n1 {
            row[j] = row[j]
                .checked_add(row[j - 1])
                .ok_or_else(|| Error::InvalidProduct("up-set count does not fit in 128 bits".into()))?;
        }
    }
    Ok(row[n1])
}

/// Walks points from the top index down, deciding membership; a point may
/// join only if all its covers are already members.
fn walk_upsets(product: &ChainProduct, visit: &mut dyn FnMut(&[bool])) {
    let succ: Vec<Vec<usize>> = (0..product.len()).map(|i| product.successors(i)).collect();
    let mut member = vec![false; product.len()];

    fn rec(pos: usize, succ: &[Vec<usize>], member: &mut Vec<bool>, visit: &mut dyn FnMut(&[bool])) {
        if pos == 0 {
            visit(member);
            return;
        }
        let i = pos - 1;
        member[i] = false;
        rec(i, succ, member, visit);
        if succ[i].iter().all(|&j| member[j]) {
            member[i] = true;
            rec(i, succ, member, visit);
            member[i] = false;
        }
    }

    rec(product.len(), &succ, &mut member, visit);
}

/// Number of up-sets of `n_0 ⊗ ⋯ ⊗ n_{k-1}`.
pub fn count_upsets(dims: &[usize]) -> Result<u128> {
    let product = ChainProduct::new(dims)?;
    match dims {
        [n] => Ok(*n as u128 + 1),
        [n0, n1] => binomial_paths(*n0, *n1),
        _ => {
            if product.len() > ENUMERATION_POINT_CAP {
                return Err(Error::CapExceeded {
                    what: "chain product points",
                    actual: product.len(),
                    cap: ENUMERATION_POINT_CAP,
                });
            }
            let mut count = 0u128;
            walk_upsets(&product, &mut |_| count += 1);
            Ok(count)
        }
    }
}

/// All up-sets of `product`, sorted.
pub fn enumerate_upsets(product: &ChainProduct) -> Result<Vec<UpSet>> {
    if product.len() > ENUMERATION_POINT_CAP {
        return Err(Error::CapExceeded {
            what: "chain product points",
            actual: product.len(),
            cap: ENUMERATION_POINT_CAP,
        });
    }
    let mut out = Vec::new();
    walk_upsets(product, &mut |member| {
        let mut u = UpSet::empty(product);
        for (i, &m) in member.iter().enumerate() {
            if m {
                u.set(i, true);
            }
        }
        out.push(u);
    });
    out.sort();
    Ok(out)
}

/// `(f(v), g(v))` for `F = ↑(X_0 ⋯ X_{n-1})` with letter sets `X_i`.
///
/// `f(v)` is the largest `m` with `v ∈ ↑(X_0 ⋯ X_{m-1})` and `g(v)` is one
/// less than the least `p` with `v ∈ ↑(X_p ⋯ X_{n-1})`. For `u, v ∉ F`,
/// `uv ∈ F` iff `f(u) > g(v)`.
pub fn coding_maps(alphabet: &Alphabet, factors: &[Vec<Letter>], v: &Word) -> Result<(usize, usize)> {
    let n = factors.len();
    let matches = |stage: &Vec<Letter>, c: Letter| stage.iter().any(|&x| alphabet.leq(x, c));
    let mut f = 0;
    for &c in v.letters() {
        if f < n && matches(&factors[f], c) {
            f += 1;
        }
    }
    if f == n {
        return Err(Error::WordInSegment(alphabet.show_word(v)));
    }
    let mut r = 0;
    for &c in v.letters().iter().rev() {
        if r < n && matches(&factors[n - 1 - r], c) {
            r += 1;
        }
    }
    Ok((f, n - r - 1))
}

/// `(|v'_0|, …, |v'_{k-1}|)`, where `v'_i` is what remains of `u_i` after
/// removing its longest suffix that embeds in `v`.
pub fn tuple_of_word(alphabet: &Alphabet, generators: &[Word], v: &Word) -> Vec<usize> {
    generators
        .iter()
        .map(|u| alphabet.max_embeddable_suffix(u, v).0.len())
        .collect()
}

/// Whether `↓u_i ∩ ↓u_j = {□}` for all `i ≠ j`, i.e. no letter lies below a
/// letter of two different generators.
pub fn disjoint_downsets(alphabet: &Alphabet, generators: &[Word]) -> bool {
    let below = |u: &Word| -> Vec<bool> {
        alphabet
            .letters()
            .map(|c| u.letters().iter().any(|&x| alphabet.leq(c, x)))
            .collect()
    };
    let sets: Vec<Vec<bool>> = generators.iter().map(below).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].iter().zip(&sets[j]).any(|(a, b)| *a && *b) {
                return false;
            }
        }
    }
    true
}

/// A tuple of prefix lengths reachable as [`tuple_of_word`] of some word,
/// with the shortest such word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchievableTuple {
    pub prefix: Vec<usize>,
    pub witness: Word,
}

/// The maps `φ: S_F → F(n_0 ⊗ ⋯ ⊗ n_{k-1})` and `Ψ` back, for the basis
/// `u_0, …, u_{k-1}` of `F`.
#[derive(Clone, Debug)]
pub struct GeneratorCoding {
    alphabet: Arc<Alphabet>,
    target: FinalSegment,
    generators: Vec<Word>,
    product: ChainProduct,
    tuples: Vec<AchievableTuple>,
}

impl GeneratorCoding {
    /// Requires `F` nonempty and different from `A*`.
    pub fn new(target: &FinalSegment) -> Result<Self> {
        if target.is_empty() {
            return Err(Error::EmptySegment);
        }
        if target.is_full() {
            return Err(Error::InvalidProduct("A* has the empty word as generator".into()));
        }
        let alphabet = target.alphabet().clone();
        let generators = target.basis().to_vec();
        let dims: Vec<usize> = generators.iter().map(Word::len).collect();
        let product = ChainProduct::new(&dims)?;

        // Prepending a letter extends each embeddable suffix by at most one
        // letter, so suffix lengths evolve independently of the word itself.
        let start = vec![0usize; generators.len()];
        let mut seen: HashMap<Vec<usize>, Word> = HashMap::from([(start.clone(), Word::empty())]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for a in alphabet.letters() {
                let next: Vec<usize> = t
                    .iter()
                    .zip(&generators)
                    .map(|(&l, u)| {
                        let n = u.len();
                        if l < n && alphabet.leq(u.letters()[n - l - 1], a) {
                            l + 1
                        } else {
                            l
                        }
                    })
                    .collect();
                if !seen.contains_key(&next) {
                    let witness = Word::letter(a).concat(&seen[&t]);
                    seen.insert(next.clone(), witness);
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let tuples = order
            .into_iter()
            .map(|suffix| {
                let prefix = suffix.iter().zip(&dims).map(|(l, n)| n - l).collect();
                AchievableTuple {
                    prefix,
                    witness: seen[&suffix].clone(),
                }
            })
            .collect();

        Ok(GeneratorCoding {
            alphabet,
            target: target.clone(),
            generators,
            product,
            tuples,
        })
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn product(&self) -> &ChainProduct {
        &self.product
    }

    pub fn achievable_tuples(&self) -> &[AchievableTuple] {
        &self.tuples
    }

    /// `↑{u_i[..p_i]}`, the right residual of `F` by any word with prefix tuple `p`.
    pub fn residual_of_tuple(&self, prefix: &[usize]) -> FinalSegment {
        let words = self
            .generators
            .iter()
            .zip(prefix)
            .map(|(u, &p)| u.prefix(p))
            .collect();
        FinalSegment::new(self.alphabet.clone(), words)
    }

    /// `φ(X)`: the complement of the union of the boxes `{x : x_i < p_i}`
    /// over achievable tuples `p` whose residual contains `X`.
    pub fn phi(&self, element: &FinalSegment) -> Result<UpSet> {
        let mut up = UpSet::full(&self.product);
        for t in &self.tuples {
            if !element.is_subset(&self.residual_of_tuple(&t.prefix))? {
                continue;
            }
            for i in 0..self.product.len() {
                let x = self.product.tuple(i);
                if x.iter().zip(&t.prefix).all(|(a, b)| a < b) {
                    up.set(i, false);
                }
            }
        }
        Ok(up)
    }

    /// `Ψ(Y) = ⋂_{x ∉ Y} ↑{u_i[..x_i + 1]}`.
    pub fn psi(&self, up: &UpSet) -> Result<FinalSegment> {
        self.psi_with_offset(up, 1)
    }

    fn psi_with_offset(&self, up: &UpSet, offset: usize) -> Result<FinalSegment> {
        if up.product() != &self.product {
            return Err(Error::InvalidProduct("up-set of a different product".into()));
        }
        let mut acc = FinalSegment::full(self.alphabet.clone());
        for i in (0..self.product.len()).filter(|&i| !up.contains_index(i)) {
            let x = self.product.tuple(i);
            let mu = FinalSegment::new(
                self.alphabet.clone(),
                self.generators
                    .iter()
                    .zip(&x)
                    .map(|(u, &xi)| u.prefix((xi + offset).min(u.len())))
                    .collect(),
            );
            acc = acc.intersect(&mu)?;
        }
        Ok(acc)
    }

    /// Checks `Ψ(φ(X)) = X` for every element of the envelope of the same
    /// final segment. Returns the images.
    pub fn verify_round_trip(&self, env: &EnvelopeLattice) -> Result<Vec<UpSet>> {
        if env.target() != &self.target {
            return Err(Error::CheckFailed("envelope of a different final segment".into()));
        }
        let images = env.elements().iter().map(|e| self.phi(e)).collect::<Result<Vec<_>>>()?;
        for (e, img) in env.elements().iter().zip(&images) {
            let back = self.psi(img)?;
            if &back != e {
                return Err(Error::CheckFailed(format!("Ψ(φ({e})) = {back}")));
            }
        }
        Ok(images)
    }

    /// A pair of element indices with `φ(X ∩ X') ≠ φ(X) ∩ φ(X')`, if any.
    /// The inclusion `⊆` always holds; equality can fail when generators
    /// share letters, as for `↑{ab, ba}` with `X = ↑a`, `X' = ↑b`.
    pub fn meet_counterexample(&self, env: &EnvelopeLattice) -> Result<Option<(usize, usize)>> {
        let images = env.elements().iter().map(|e| self.phi(e)).collect::<Result<Vec<_>>>()?;
        for i in 0..env.len() {
            for j in i + 1..env.len() {
                let meet = env.element(i).intersect(env.element(j))?;
                if self.phi(&meet)? != images[i].intersect(&images[j])? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

/// For generators with pairwise disjoint down-sets, checks that `S_F` has as
/// many elements as there are up-sets of the chain product and that `φ` hits
/// every one of them.
pub fn verify_full_embedding(env: &EnvelopeLattice) -> Result<bool> {
    let coding = GeneratorCoding::new(env.target())?;
    if !disjoint_downsets(env.alphabet(), coding.generators()) {
        return Err(Error::CheckFailed("generators do not have disjoint down-sets".into()));
    }
    let all = enumerate_upsets(coding.product())?;
    if all.len() != env.len() {
        return Ok(false);
    }
    let mut images = env.elements().iter().map(|e| coding.phi(e)).collect::<Result<Vec<_>>>()?;
    images.sort();
    images.dedup();
    Ok(images == all)
}
