//! The injective envelope `S_F` of the two-point space `{x, y}` with
//! `d(x, y) = F`, realized as the intersection closure of the right
//! residuals of `F`.
//!
//! Elements are final segments, `x = A*` and `y = F`. The letter-level
//! transition relation `T_F` turns the envelope into a reflexive involutive
//! automaton accepting exactly `F`, and path languages of that automaton are
//! the envelope distances.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::automata::{articulation_states, minimal_dfa, Automaton, SegmentDfa, StateId, TransitionSystem};
use crate::error::{Error, Result};
use crate::segments::FinalSegment;
use crate::words::{Alphabet, Word};

/// Least set containing `F` and closed under right residuals by letters.
/// Returned in canonical order.
pub fn residual_closure(target: &FinalSegment) -> Result<Vec<FinalSegment>> {
    if target.is_empty() {
        return Err(Error::EmptySegment);
    }
    let alpha = target.alphabet().clone();
    let mut seen = BTreeSet::from([target.clone()]);
    let mut queue = VecDeque::from([target.clone()]);
    while let Some(g) = queue.pop_front() {
        for a in alpha.letters() {
            let r = g.right_residual(&Word::letter(a));
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The envelope lattice of a nonempty final segment.
#[derive(Debug)]
pub struct EnvelopeLattice {
    target: FinalSegment,
    elements: Vec<FinalSegment>,
    index: HashMap<FinalSegment, usize>,
    x: usize,
    y: usize,
    // included[i][j] iff elements[i] ⊆ elements[j]
    included: Vec<Vec<bool>>,
    hasse: Vec<(usize, usize)>,
    system: TransitionSystem,
    distances: OnceLock<Vec<Vec<FinalSegment>>>,
}

/// Builds `S_F`: residual closure plus `A*`, closed under pairwise
/// intersection, with covers and `T_F`.
pub fn build_envelope(target: &FinalSegment) -> Result<EnvelopeLattice> {
    EnvelopeLattice::new(target)
}

impl EnvelopeLattice {
    pub fn new(target: &FinalSegment) -> Result<Self> {
        let alpha = target.alphabet().clone();
        let mut set: BTreeSet<FinalSegment> = residual_closure(target)?.into_iter().collect();
        set.insert(FinalSegment::full(alpha.clone()));

        let mut pending: Vec<FinalSegment> = set.iter().cloned().collect();
        let mut done: Vec<FinalSegment> = Vec::new();
        while let Some(e) = pending.pop() {
            for other in &done {
                let meet = e.intersect(other)?;
                if set.insert(meet.clone()) {
                    pending.push(meet);
                }
            }
            done.push(e);
        }

        let elements: Vec<FinalSegment> = set.into_iter().collect();
        let index: HashMap<FinalSegment, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let x = index[&FinalSegment::full(alpha.clone())];
        let y = index[target];

        let mut included = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                included[i][j] = elements[i].is_subset(&elements[j])?;
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !included[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && included[i][k] && included[k][j]);
                if !between {
                    hasse.push((i, j));
                }
            }
        }

        let mut system = TransitionSystem::new(alpha.clone(), n);
        for (p, pe) in elements.iter().enumerate() {
            for (q, qe) in elements.iter().enumerate() {
                for a in alpha.letters() {
                    let forward = pe.shifted_within(&Word::letter(a), qe);
                    if forward && qe.shifted_within(&Word::letter(alpha.bar(a)), pe) {
                        system.add_transition(p, a, q)?;
                    }
                }
            }
        }

        Ok(EnvelopeLattice {
            target: target.clone(),
            elements,
            index,
            x,
            y,
            included,
            hasse,
            system,
            distances: OnceLock::new(),
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.target.alphabet()
    }

    pub fn target(&self) -> &FinalSegment {
        &self.target
    }

    pub fn elements(&self) -> &[FinalSegment] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &FinalSegment {
        &self.elements[i]
    }

    pub fn index_of(&self, segment: &FinalSegment) -> Option<usize> {
        self.index.get(segment).copied()
    }

    fn require(&self, segment: &FinalSegment) -> Result<usize> {
        self.index_of(segment)
            .ok_or_else(|| Error::NotAnElement(segment.to_string()))
    }

    /// Index of `A*`.
    pub fn x(&self) -> usize {
        self.x
    }

    /// Index of `F`.
    pub fn y(&self) -> usize {
        self.y
    }

    /// `elements[i] ⊆ elements[j]`.
    pub fn is_included(&self, i: usize, j: usize) -> bool {
        self.included[i][j]
    }

    /// Cover pairs `(lower, upper)` of the inclusion order.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// `T_F` on element indices.
    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    /// `(M_F, {p}, {q})`.
    pub fn automaton_between(&self, p: usize, q: usize) -> Result<Automaton> {
        Automaton::new(self.system.clone(), &[p], &[q])
    }

    /// `(M_F, {x}, {y})`.
    pub fn automaton(&self) -> Automaton {
        Automaton::new(self.system.clone(), &[self.x], &[self.y]).expect("base points are elements")
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: i, count: self.len() })
        }
    }

    /// Path language from `p` to `q` in `M_F`.
    pub fn dist(&self, p: usize, q: usize) -> Result<FinalSegment> {
        self.check_index(p)?;
        self.check_index(q)?;
        if let Some(m) = self.distances.get() {
            return Ok(m[p][q].clone());
        }
        self.automaton_between(p, q)?.accepted_basis()
    }

    /// [`EnvelopeLattice::dist`] addressed by segment.
    pub fn dist_between(&self, p: &FinalSegment, q: &FinalSegment) -> Result<FinalSegment> {
        self.dist(self.require(p)?, self.require(q)?)
    }

    /// All pairwise distances, computed once.
    pub fn distance_matrix(&self) -> &[Vec<FinalSegment>] {
        self.distances.get_or_init(|| {
            let n = self.len();
            let mut m = Vec::with_capacity(n);
            for p in 0..n {
                let mut row = Vec::with_capacity(n);
                for q in 0..n {
                    let d = if p == q {
                        FinalSegment::full(self.alphabet().clone())
                    } else {
                        self.automaton_between(p, q)
                            .and_then(|a| a.accepted_basis())
                            .expect("envelope systems are saturated")
                    };
                    row.push(d);
                }
                m.push(row);
            }
            m
        })
    }

    /// `(d(x, P), d(y, P))`.
    pub fn metric_form_pair(&self, p: usize) -> Result<(FinalSegment, FinalSegment)> {
        Ok((self.dist(self.x, p)?, self.dist(self.y, p)?))
    }

    /// Whether the elements are totally ordered by inclusion.
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.included[i][j] || self.included[j][i]))
    }

    /// The envelope as a pointed metric space with base points `(x, y)`.
    pub fn to_pointed(&self) -> PointedSpace {
        let labels = self.elements.iter().map(ToString::to_string).collect();
        let space = FiniteMetricSpace {
            alphabet: self.alphabet().clone(),
            labels,
            dist: self.distance_matrix().to_vec(),
        };
        PointedSpace {
            space,
            x: self.x,
            y: self.y,
        }
    }

    /// Maps each state `Y` of the minimal automaton of `F` to
    /// `i(Y) = ⋂_{b ∈ basis(Y)} F b⁻¹`, and checks that this is a morphism
    /// into `(M_F, {x}, {y})`.
    pub fn min_dfa_morphism(&self) -> Result<MinDfaMorphism> {
        let min = minimal_dfa(&self.target);
        let mut images = Vec::with_capacity(min.states.len());
        for state in &min.states {
            let mut img = FinalSegment::full(self.alphabet().clone());
            for b in state.basis() {
                img = img.intersect(&self.target.right_residual(b))?;
            }
            images.push(self.require(&img)?);
        }
        if images[min.dfa.start()] != self.x {
            return Err(Error::CheckFailed("i(F) is not A*".into()));
        }
        if let Some(full) = min.states.iter().position(FinalSegment::is_full) {
            if images[full] != self.y {
                return Err(Error::CheckFailed("i(A*) is not F".into()));
            }
        }
        for (s, &img) in images.iter().enumerate() {
            for a in self.alphabet().letters() {
                let t = min.dfa.step(s, a);
                if !self.system.has_transition(img, a, images[t]) {
                    return Err(Error::CheckFailed(format!(
                        "transition {} -{}-> {} has no image",
                        min.states[s],
                        self.alphabet().name(a),
                        min.states[t]
                    )));
                }
            }
        }
        Ok(MinDfaMorphism { min, images })
    }
}

/// Result of [`EnvelopeLattice::min_dfa_morphism`].
#[derive(Clone, Debug)]
pub struct MinDfaMorphism {
    pub min: SegmentDfa,
    /// Envelope element index for each automaton state.
    pub images: Vec<usize>,
}

/// A finite space whose distances are final segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    alphabet: Arc<Alphabet>,
    labels: Vec<String>,
    dist: Vec<Vec<FinalSegment>>,
}

/// First failed metric axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `d(p, q) = A*` with `p ≠ q`, or `d(p, p) ≠ A*`.
    Identity { p: usize, q: usize },
    /// `d(p, q)·d(q, r) ⊄ d(p, r)`.
    Triangle { p: usize, q: usize, r: usize },
    /// `d(p, q) ≠ involute(d(q, p))`.
    Symmetry { p: usize, q: usize },
}

/// A pair of points with a word of their distance that admits no midpoint
/// for the given split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub p: usize,
    pub q: usize,
    pub word: Word,
    pub split: usize,
}

impl FiniteMetricSpace {
    pub fn new(alphabet: Arc<Alphabet>, labels: Vec<String>, dist: Vec<Vec<FinalSegment>>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::CheckFailed("distance matrix is not square over the labels".into()));
        }
        for d in dist.iter().flatten() {
            if **d.alphabet() != *alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(FiniteMetricSpace { alphabet, labels, dist })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distance(&self, p: usize, q: usize) -> &FinalSegment {
        &self.dist[p][q]
    }

    /// Identity of indiscernibles, triangle containment and involution
    /// symmetry.
    pub fn check_axioms(&self) -> Option<AxiomViolation> {
        let n = self.len();
        for p in 0..n {
            for q in 0..n {
                if self.dist[p][q].is_full() != (p == q) {
                    return Some(AxiomViolation::Identity { p, q });
                }
                if self.dist[p][q] != self.dist[q][p].involute() {
                    return Some(AxiomViolation::Symmetry { p, q });
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let d_pq = &self.dist[p][q];
                    let d_qr = &self.dist[q][r];
                    let d_pr = &self.dist[p][r];
                    let ok = d_pq
                        .basis()
                        .iter()
                        .all(|u| d_qr.basis().iter().all(|v| d_pr.contains(&u.concat(v))));
                    if !ok {
                        return Some(AxiomViolation::Triangle { p, q, r });
                    }
                }
            }
        }
        None
    }

    /// For every pair, every basis word of the distance and every split
    /// `w = αβ`, looks for `z` with `α ∈ d(p, z)` and `β ∈ d(z, q)`.
    pub fn check_convexity(&self) -> Option<ConvexityWitness> {
        let n = self.len();
        for p in 0..n {
            for q in 0..n {
                for w in self.dist[p][q].basis() {
                    for split in 0..=w.len() {
                        let (alpha, beta) = w.split_at(split);
                        let found = (0..n).any(|z| self.dist[p][z].contains(&alpha) && self.dist[z][q].contains(&beta));
                        if !found {
                            return Some(ConvexityWitness {
                                p,
                                q,
                                word: w.clone(),
                                split,
                            });
                        }
                    }
                }
            }
        }
        None
    }
}

/// A metric space with two distinguished points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSpace {
    pub space: FiniteMetricSpace,
    pub x: usize,
    pub y: usize,
}

impl PointedSpace {
    pub fn new(space: FiniteMetricSpace, x: usize, y: usize) -> Result<Self> {
        for s in [x, y] {
            if s >= space.len() {
                return Err(Error::StateOutOfRange { state: s, count: space.len() });
            }
        }
        Ok(PointedSpace { space, x, y })
    }

    /// The one-point space.
    pub fn point(alphabet: Arc<Alphabet>) -> Self {
        let full = FinalSegment::full(alphabet.clone());
        PointedSpace {
            space: FiniteMetricSpace {
                alphabet,
                labels: vec!["·".into()],
                dist: vec![vec![full]],
            },
            x: 0,
            y: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// A distance-preserving bijection onto `other` sending base points to
    /// base points, as the image of each point.
    pub fn isometry_to(&self, other: &PointedSpace) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.space.alphabet != other.space.alphabet {
            return None;
        }
        let d = |s: &PointedSpace, p: usize, q: usize| s.space.dist[p][q].clone();
        // candidates[p]: points of other with the same distances to and from the base points
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|p| {
                (0..n)
                    .filter(|&c| {
                        d(self, self.x, p) == d(other, other.x, c)
                            && d(self, self.y, p) == d(other, other.y, c)
                            && d(self, p, self.x) == d(other, c, other.x)
                            && d(self, p, self.y) == d(other, c, other.y)
                    })
                    .filter(|&c| (p != self.x || c == other.x) && (p != self.y || c == other.y))
                    .collect()
            })
            .collect();

        fn extend(
            a: &PointedSpace,
            b: &PointedSpace,
            candidates: &[Vec<usize>],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let p = map.len();
            if p == a.len() {
                return true;
            }
            for &c in &candidates[p] {
                if used[c] {
                    continue;
                }
                let ok = (0..p).all(|r| {
                    a.space.dist[p][r] == b.space.dist[c][map[r]] && a.space.dist[r][p] == b.space.dist[map[r]][c]
                });
                if !ok {
                    continue;
                }
                map.push(c);
                used[c] = true;
                if extend(a, b, candidates, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
            false
        }

        let mut map = Vec::with_capacity(n);
        let mut used = vec![false; n];
        extend(self, other, &candidates, &mut map, &mut used).then_some(map)
    }

    /// Searches for a non-expansive map of the space into itself that fixes
    /// both base points and is not the identity. Finding none means no proper
    /// subspace containing the base points is a retract of the whole space,
    /// so in particular no proper subspace is an isometric copy of it.
    pub fn no_proper_isometric_subspace(&self) -> bool {
        let n = self.len();
        let dist = &self.space.dist;
        // non-expansive: d(p, q) ⊆ d(f p, f q)
        let widens = |p: usize, q: usize, fp: usize, fq: usize| dist[p][q].basis().iter().all(|w| dist[fp][fq].contains(w));
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|p| {
                if p == self.x {
                    vec![self.x]
                } else if p == self.y {
                    vec![self.y]
                } else {
                    (0..n)
                        .filter(|&c| {
                            widens(self.x, p, self.x, c)
                                && widens(p, self.x, c, self.x)
                                && widens(self.y, p, self.y, c)
                                && widens(p, self.y, c, self.y)
                        })
                        .collect()
                }
            })
            .collect();

        fn search(
            p: usize,
            map: &mut Vec<usize>,
            candidates: &[Vec<usize>],
            widens: &dyn Fn(usize, usize, usize, usize) -> bool,
        ) -> bool {
            let n = candidates.len();
            if p == n {
                return map.iter().enumerate().any(|(i, &f)| i != f);
            }
            for &c in &candidates[p] {
                let ok = (0..p).all(|r| widens(p, r, c, map[r]) && widens(r, p, map[r], c)) && widens(p, p, c, c);
                if !ok {
                    continue;
                }
                map.push(c);
                if search(p + 1, map, candidates, widens) {
                    return true;
                }
                map.pop();
            }
            false
        }

        let mut map = Vec::with_capacity(n);
        !search(0, &mut map, &candidates, &widens)
    }
}

/// Glues `left` and `right` by identifying the second base point of `left`
/// with the first base point of `right`. Distances across the junction are
/// products of the two legs through the junction.
pub fn concat_pointed(left: &PointedSpace, right: &PointedSpace) -> Result<PointedSpace> {
    if left.space.alphabet != right.space.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let n1 = left.len();
    let junction = left.y;
    let mut right_index = vec![0; right.len()];
    let mut labels: Vec<String> = left.space.labels.iter().map(|l| format!("1.{l}")).collect();
    let mut next = n1;
    for (q, label) in right.space.labels.iter().enumerate() {
        if q == right.x {
            right_index[q] = junction;
        } else {
            right_index[q] = next;
            next += 1;
            labels.push(format!("2.{label}"));
        }
    }
    let n = next;
    let placeholder = FinalSegment::full(left.space.alphabet.clone());
    let mut dist = vec![vec![placeholder; n]; n];
    for (row, src) in dist.iter_mut().zip(&left.space.dist) {
        row[..n1].clone_from_slice(src);
    }
    for p in 0..right.len() {
        for q in 0..right.len() {
            dist[right_index[p]][right_index[q]] = right.space.dist[p][q].clone();
        }
    }
    for p in 0..n1 {
        for q in (0..right.len()).filter(|&q| q != right.x) {
            let (i, j) = (p, right_index[q]);
            dist[i][j] = left.space.dist[p][junction].concat(&right.space.dist[right.x][q])?;
            dist[j][i] = right.space.dist[q][right.x].concat(&left.space.dist[junction][p])?;
        }
    }
    Ok(PointedSpace {
        space: FiniteMetricSpace {
            alphabet: left.space.alphabet.clone(),
            labels,
            dist,
        },
        x: left.x,
        y: right_index[right.y],
    })
}

/// Compares `S_{F1·F2}` with the glued space `S_{F1}·S_{F2}` up to an
/// isometry fixing the base points.
pub fn verify_sum_theorem(f1: &FinalSegment, f2: &FinalSegment) -> Result<bool> {
    let product = f1.concat(f2)?;
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::EmptySegment);
    }
    let whole = build_envelope(&product)?.to_pointed();
    let glued = concat_pointed(&build_envelope(f1)?.to_pointed(), &build_envelope(f2)?.to_pointed())?;
    Ok(whole.isometry_to(&glued).is_some())
}

/// Splits `F` into concatenation factors at the states of `M_F` that
/// separate `x` from `y`, checking that the factors multiply back to `F` and
/// that each factor is irreducible in the same sense.
pub fn decompose(target: &FinalSegment) -> Result<Vec<FinalSegment>> {
    let env = build_envelope(target)?;
    if target.is_full() {
        return Ok(Vec::new());
    }
    let factors = env.factors()?;
    let mut product = FinalSegment::full(target.alphabet().clone());
    for f in &factors {
        product = product.concat(f)?;
    }
    if &product != target {
        return Err(Error::CheckFailed(format!("factors multiply to {product}, not {target}")));
    }
    if factors.len() > 1 {
        for f in &factors {
            if build_envelope(f)?.factors()?.len() != 1 {
                return Err(Error::CheckFailed(format!("factor {f} is reducible")));
            }
        }
    }
    Ok(factors)
}

impl EnvelopeLattice {
    /// Distances between consecutive separating states along `x → y`.
    fn factors(&self) -> Result<Vec<FinalSegment>> {
        if self.x == self.y {
            return Ok(Vec::new());
        }
        let mut chain: Vec<StateId> = vec![self.x];
        chain.extend(articulation_states(&self.system, self.x, self.y)?);
        chain.push(self.y);
        chain.windows(2).map(|w| self.dist(w[0], w[1])).collect()
    }
}
