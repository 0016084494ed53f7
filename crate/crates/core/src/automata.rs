//! Transition systems and automata over an involutive ordered alphabet.
//!
//! Nondeterministic systems use dense state indices with per-letter
//! adjacency lists. Deterministic automata appear in two places: the
//! minimal automaton of a final segment (states are left residuals) and as
//! the complement side of inclusion checks.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::segments::FinalSegment;
use crate::words::{Alphabet, Letter, Word};

/// A pair of states explored together by the product construction.
type Pair = (usize, usize);

pub type StateId = usize;

/// A labeled transition relation `T ⊆ Q × A × Q` on states `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    alphabet: Arc<Alphabet>,
    // out[p][a] = sorted targets q with (p, a, q) ∈ T
    out: Vec<Vec<Vec<StateId>>>,
}

impl TransitionSystem {
    pub fn new(alphabet: Arc<Alphabet>, states: usize) -> Self {
        let width = alphabet.len();
        TransitionSystem {
            alphabet,
            out: vec![vec![Vec::new(); width]; states],
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.out.len()
    }

    pub fn add_state(&mut self) -> StateId {
        self.out.push(vec![Vec::new(); self.alphabet.len()]);
        self.out.len() - 1
    }

    fn check_state(&self, state: StateId) -> Result<()> {
        if state < self.out.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state,
                count: self.out.len(),
            })
        }
    }

    /// Inserts `(p, a, q)`; returns whether it was new.
    pub fn add_transition(&mut self, p: StateId, a: Letter, q: StateId) -> Result<bool> {
        self.check_state(p)?;
        self.check_state(q)?;
        if a.index() >= self.alphabet.len() {
            return Err(Error::UnknownLetter(format!("#{}", a.0)));
        }
        let targets = &mut self.out[p][a.index()];
        match targets.binary_search(&q) {
            Ok(_) => Ok(false),
            Err(pos) => {
                targets.insert(pos, q);
                Ok(true)
            }
        }
    }

    pub fn has_transition(&self, p: StateId, a: Letter, q: StateId) -> bool {
        self.out
            .get(p)
            .and_then(|row| row.get(a.index()))
            .is_some_and(|t| t.binary_search(&q).is_ok())
    }

    pub fn successors(&self, p: StateId, a: Letter) -> &[StateId] {
        &self.out[p][a.index()]
    }

    /// All transitions in `(p, a, q)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.out.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, ts)| ts.iter().map(move |&q| (p, Letter(a as u16), q)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.out.iter().flatten().map(Vec::len).sum()
    }

    /// Closes `T` under loops on every state for every letter, involution
    /// reversal `(p,a,q) -> (q,ā,p)`, and letter up-closure `(p,a,q) -> (p,b,q)`
    /// for `b >= a`.
    pub fn saturate(&self) -> TransitionSystem {
        let mut sat = self.clone();
        let alpha = self.alphabet.clone();
        let base: Vec<_> = self.transitions().collect();
        for (p, a, q) in base {
            for b in alpha.letters().filter(|&b| alpha.leq(a, b)) {
                sat.insert_unchecked(p, b, q);
                sat.insert_unchecked(q, alpha.bar(b), p);
            }
        }
        for p in 0..sat.state_count() {
            for a in alpha.letters() {
                sat.insert_unchecked(p, a, p);
            }
        }
        sat
    }

    fn insert_unchecked(&mut self, p: StateId, a: Letter, q: StateId) {
        let targets = &mut self.out[p][a.index()];
        if let Err(pos) = targets.binary_search(&q) {
            targets.insert(pos, q);
        }
    }

    /// Whether loops, involution reversal and letter up-closure all hold.
    pub fn is_reflexive_involutive(&self) -> bool {
        let alpha = &self.alphabet;
        for p in 0..self.state_count() {
            if alpha.letters().any(|a| !self.has_transition(p, a, p)) {
                return false;
            }
        }
        self.transitions().all(|(p, a, q)| {
            self.has_transition(q, alpha.bar(a), p)
                && alpha
                    .letters()
                    .filter(|&b| alpha.leq(a, b))
                    .all(|b| self.has_transition(p, b, q))
        })
    }

    /// The subsystem induced on `states`; state `states[i]` becomes `i`.
    pub fn induced(&self, states: &[StateId]) -> Result<TransitionSystem> {
        let mut index = HashMap::new();
        for (i, &s) in states.iter().enumerate() {
            self.check_state(s)?;
            index.insert(s, i);
        }
        let mut sub = TransitionSystem::new(self.alphabet.clone(), states.len());
        for (i, &s) in states.iter().enumerate() {
            for a in self.alphabet.letters() {
                for t in self.successors(s, a) {
                    if let Some(&j) = index.get(t) {
                        sub.insert_unchecked(i, a, j);
                    }
                }
            }
        }
        Ok(sub)
    }

    /// Undirected neighbours, loops dropped.
    fn undirected_neighbours(&self) -> Vec<BTreeSet<StateId>> {
        let mut nb = vec![BTreeSet::new(); self.state_count()];
        for (p, _, q) in self.transitions() {
            if p != q {
                nb[p].insert(q);
                nb[q].insert(p);
            }
        }
        nb
    }
}

/// States `z ∉ {x, y}` whose removal disconnects `x` from `y` in the
/// underlying undirected graph, ordered by distance from `x`.
pub fn articulation_states(ts: &TransitionSystem, x: StateId, y: StateId) -> Result<Vec<StateId>> {
    ts.check_state(x)?;
    ts.check_state(y)?;
    let nb = ts.undirected_neighbours();
    let distances = |blocked: Option<StateId>| -> Vec<Option<usize>> {
        let mut dist = vec![None; nb.len()];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(p) = queue.pop_front() {
            let d = dist[p].unwrap();
            for &q in &nb[p] {
                if Some(q) != blocked && dist[q].is_none() {
                    dist[q] = Some(d + 1);
                    queue.push_back(q);
                }
            }
        }
        dist
    };
    let base = distances(None);
    if x == y || base[y].is_none() {
        return Ok(Vec::new());
    }
    let mut cuts: Vec<(usize, StateId)> = (0..nb.len())
        .filter(|&z| z != x && z != y && base[z].is_some())
        .filter(|&z| distances(Some(z))[y].is_none())
        .map(|z| (base[z].unwrap(), z))
        .collect();
    cuts.sort();
    Ok(cuts.into_iter().map(|(_, z)| z).collect())
}

/// A transition system with initial and final state sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    system: TransitionSystem,
    initial: Vec<StateId>,
    accepting: Vec<StateId>,
}

/// Outcome of comparing an automaton's language with a final segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageComparison {
    Equal,
    /// Accepted by the automaton but outside the segment.
    OnlyInAutomaton(Word),
    /// In the segment but rejected by the automaton.
    OnlyInSegment(Word),
}

impl LanguageComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, LanguageComparison::Equal)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            LanguageComparison::Equal => None,
            LanguageComparison::OnlyInAutomaton(w) | LanguageComparison::OnlyInSegment(w) => Some(w),
        }
    }
}

impl Automaton {
    pub fn new(system: TransitionSystem, initial: &[StateId], accepting: &[StateId]) -> Result<Self> {
        for &s in initial.iter().chain(accepting) {
            system.check_state(s)?;
        }
        let norm = |v: &[StateId]| -> Vec<StateId> {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Ok(Automaton {
            initial: norm(initial),
            accepting: norm(accepting),
            system,
        })
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn accepting(&self) -> &[StateId] {
        &self.accepting
    }

    pub fn state_count(&self) -> usize {
        self.system.state_count()
    }

    /// Same initial/final sets over the saturated system.
    pub fn saturate(&self) -> Automaton {
        Automaton {
            system: self.system.saturate(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
        }
    }

    /// Nondeterministic state-set simulation.
    pub fn accepts(&self, w: &Word) -> bool {
        let n = self.state_count();
        let mut current = vec![false; n];
        for &s in &self.initial {
            current[s] = true;
        }
        for &a in w.letters() {
            let mut next = vec![false; n];
            for p in (0..n).filter(|&p| current[p]) {
                for &q in self.system.successors(p, a) {
                    next[q] = true;
                }
            }
            current = next;
        }
        self.accepting.iter().any(|&s| current[s])
    }

    /// Shortest (then lexicographically least) word accepted both by `self`
    /// and by `dfa`, found by breadth-first search of the product.
    pub fn shortest_common_word(&self, dfa: &Dfa) -> Option<Word> {
        let width = dfa.state_count();
        let node = |q: StateId, d: usize| q * width + d;
        let is_target = |q: StateId, d: usize| dfa.accepting[d] && self.accepting.binary_search(&q).is_ok();
        let mut parent: HashMap<usize, Option<(usize, Letter)>> = HashMap::new();
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            let id = node(q, dfa.start);
            if parent.insert(id, None).is_none() {
                if is_target(q, dfa.start) {
                    return Some(Word::empty());
                }
                queue.push_back((q, dfa.start));
            }
        }
        let rebuild = |parent: &HashMap<usize, Option<(usize, Letter)>>, mut id: usize| {
            let mut letters = Vec::new();
            while let Some(&Some((prev, a))) = parent.get(&id) {
                letters.push(a);
                id = prev;
            }
            letters.reverse();
            Word::new(letters)
        };
        while let Some((q, d)) = queue.pop_front() {
            let here = node(q, d);
            for a in self.alphabet().letters() {
                let d2 = dfa.step(d, a);
                for &q2 in self.system.successors(q, a) {
                    let id = node(q2, d2);
                    if parent.contains_key(&id) {
                        continue;
                    }
                    parent.insert(id, Some((here, a)));
                    if is_target(q2, d2) {
                        return Some(rebuild(&parent, id));
                    }
                    queue.push_back((q2, d2));
                }
            }
        }
        None
    }

    /// Shortest word accepted by `dfa` and rejected by `self`, by a subset
    /// construction on `self` run in product with `dfa`.
    pub fn shortest_missed_word(&self, dfa: &Dfa) -> Option<Word> {
        let n = self.state_count();
        let is_target = |set: &[bool], d: usize| dfa.accepting[d] && !self.accepting.iter().any(|&s| set[s]);
        let mut start = vec![false; n];
        for &s in &self.initial {
            start[s] = true;
        }
        type Key = (Vec<bool>, usize);
        let mut parent: HashMap<Key, Option<(Key, Letter)>> = HashMap::new();
        if is_target(&start, dfa.start) {
            return Some(Word::empty());
        }
        let first: Key = (start, dfa.start);
        parent.insert(first.clone(), None);
        let mut queue = VecDeque::from([first]);
        while let Some(key) = queue.pop_front() {
            for a in self.alphabet().letters() {
                let mut next = vec![false; n];
                for p in (0..n).filter(|&p| key.0[p]) {
                    for &q in self.system.successors(p, a) {
                        next[q] = true;
                    }
                }
                let d2 = dfa.step(key.1, a);
                let k2: Key = (next, d2);
                if parent.contains_key(&k2) {
                    continue;
                }
                let hit = is_target(&k2.0, d2);
                parent.insert(k2.clone(), Some((key.clone(), a)));
                if hit {
                    let mut letters = Vec::new();
                    let mut cur = k2;
                    while let Some(Some((prev, a))) = parent.get(&cur) {
                        letters.push(*a);
                        cur = prev.clone();
                    }
                    letters.reverse();
                    return Some(Word::new(letters));
                }
                queue.push_back(k2);
            }
        }
        None
    }

    /// Basis of the accepted language, which is up-closed for reflexive
    /// involutive systems.
    ///
    /// Repeatedly finds a shortest accepted word outside the up-set generated
    /// so far and adds it. This terminates because the alphabet is finite,
    /// hence `A*` is well-quasi-ordered and the basis is finite.
    pub fn accepted_basis(&self) -> Result<FinalSegment> {
        if !self.system.is_reflexive_involutive() {
            return Err(Error::NotSaturated);
        }
        let alpha = self.alphabet().clone();
        let mut basis = FinalSegment::empty(alpha.clone());
        loop {
            let outside = minimal_dfa(&basis).dfa.complement();
            match self.shortest_common_word(&outside) {
                None => return Ok(basis),
                Some(w) => basis = basis.union(&FinalSegment::principal(alpha.clone(), w))?,
            }
        }
    }

    /// Decides whether the accepted language equals `segment`, with a witness
    /// word on failure.
    pub fn compare_with_segment(&self, segment: &FinalSegment) -> Result<LanguageComparison> {
        if !Arc::ptr_eq(self.alphabet(), segment.alphabet()) && **self.alphabet() != **segment.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if let Some(b) = segment.basis().iter().find(|b| !self.accepts(b)) {
            return Ok(LanguageComparison::OnlyInSegment(b.clone()));
        }
        let seg_dfa = minimal_dfa(segment).dfa;
        if let Some(w) = self.shortest_common_word(&seg_dfa.complement()) {
            return Ok(LanguageComparison::OnlyInAutomaton(w));
        }
        // Without saturation the language need not be up-closed, so accepting
        // the basis does not imply containing the segment.
        if !self.system.is_reflexive_involutive() {
            if let Some(w) = self.shortest_missed_word(&seg_dfa) {
                return Ok(LanguageComparison::OnlyInSegment(w));
            }
        }
        Ok(LanguageComparison::Equal)
    }

    /// Convenience wrapper over [`Automaton::compare_with_segment`].
    pub fn language_equals_segment(&self, segment: &FinalSegment) -> Result<(bool, Option<Word>)> {
        let cmp = self.compare_with_segment(segment)?;
        Ok((cmp.is_equal(), cmp.witness().cloned()))
    }
}

/// A complete deterministic automaton on states `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Arc<Alphabet>,
    delta: Vec<Vec<usize>>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// `delta[q][a]` is the successor of `q` by letter `a`; must be total.
    pub fn new(alphabet: Arc<Alphabet>, delta: Vec<Vec<usize>>, start: usize, accepting: Vec<bool>) -> Result<Self> {
        let n = delta.len();
        if accepting.len() != n {
            return Err(Error::CheckFailed("accepting vector length differs from state count".into()));
        }
        if start >= n {
            return Err(Error::StateOutOfRange { state: start, count: n });
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::CheckFailed("transition function is not total".into()));
            }
            if let Some(&q) = row.iter().find(|&&q| q >= n) {
                return Err(Error::StateOutOfRange { state: q, count: n });
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.delta[q][a.index()]
    }

    pub fn run_from(&self, q: usize, w: &Word) -> usize {
        w.letters().iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run_from(self.start, w)]
    }

    /// Same transitions, acceptance flipped.
    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|b| !b).collect(),
            ..self.clone()
        }
    }

    /// States reachable from the start, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        seen[self.start] = true;
        let mut order = vec![self.start];
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for &r in &self.delta[q] {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// A shortest word accepted from state `p` but not from state `q`, if any.
    /// `None` means the language of `p` is included in that of `q`.
    pub fn inclusion_counterexample(&self, p: usize, q: usize) -> Option<Word> {
        let n = self.state_count();
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
        let target = |(a, b): (usize, usize)| self.accepting[a] && !self.accepting[b];
        parent.insert((p, q), None);
        if target((p, q)) {
            return Some(Word::empty());
        }
        let mut queue = VecDeque::from([(p, q)]);
        while let Some(pair) = queue.pop_front() {
            for a in self.alphabet.letters() {
                let next = (self.step(pair.0, a), self.step(pair.1, a));
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, Some((pair, a)));
                if target(next) {
                    let mut letters = Vec::new();
                    let mut cur = next;
                    while let Some(Some((prev, a))) = parent.get(&cur) {
                        letters.push(*a);
                        cur = *prev;
                    }
                    letters.reverse();
                    return Some(Word::new(letters));
                }
                queue.push_back(next);
            }
        }
        debug_assert!(parent.len() <= n * n);
        None
    }

    /// Recognizes `↓u = {w : w embeds in u}`. State `i` means the greedy
    /// embedding has consumed `u[..i]`; state `|u| + 1` is the sink.
    pub fn downset(alphabet: Arc<Alphabet>, u: &Word) -> Dfa {
        let n = u.len();
        let sink = n + 1;
        let mut delta = Vec::with_capacity(n + 2);
        for i in 0..=n {
            let row = alphabet
                .letters()
                .map(|c| {
                    (i..n)
                        .find(|&j| alphabet.leq(c, u.letters()[j]))
                        .map_or(sink, |j| j + 1)
                })
                .collect();
            delta.push(row);
        }
        delta.push(vec![sink; alphabet.len()]);
        let mut accepting = vec![true; n + 2];
        accepting[sink] = false;
        Dfa {
            alphabet,
            delta,
            start: 0,
            accepting,
        }
    }

    /// The underlying nondeterministic automaton.
    pub fn to_automaton(&self) -> Automaton {
        let mut ts = TransitionSystem::new(self.alphabet.clone(), self.state_count());
        for (p, row) in self.delta.iter().enumerate() {
            for (a, &q) in row.iter().enumerate() {
                ts.insert_unchecked(p, Letter(a as u16), q);
            }
        }
        let accepting: Vec<_> = (0..self.state_count()).filter(|&q| self.accepting[q]).collect();
        Automaton {
            system: ts,
            initial: vec![self.start],
            accepting,
        }
    }
}

/// The minimal automaton of a final segment, with each state labeled by the
/// left residual it stands for.
#[derive(Clone, Debug)]
pub struct SegmentDfa {
    pub dfa: Dfa,
    pub states: Vec<FinalSegment>,
}

impl SegmentDfa {
    pub fn state_of(&self, segment: &FinalSegment) -> Option<usize> {
        self.states.iter().position(|s| s == segment)
    }
}

/// Closure of `{F}` under left residuals by letters. The start state is `F`
/// and the accepting states are those equal to `A*`. `∅` yields a single
/// rejecting state.
pub fn minimal_dfa(segment: &FinalSegment) -> SegmentDfa {
    let alpha = segment.alphabet().clone();
    let mut states = vec![segment.clone()];
    let mut index: HashMap<FinalSegment, usize> = HashMap::from([(segment.clone(), 0)]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(alpha.len());
        for a in alpha.letters() {
            let next = states[i].left_residual(&Word::letter(a));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    states.push(next.clone());
                    index.insert(next, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = states.iter().map(FinalSegment::is_full).collect();
    SegmentDfa {
        dfa: Dfa {
            alphabet: alpha,
            delta,
            start: 0,
            accepting,
        },
        states,
    }
}

fn state_signature(aut: &Automaton, s: StateId, incoming: &[Vec<usize>]) -> (bool, bool, Vec<usize>, Vec<usize>) {
    let outgoing = aut
        .alphabet()
        .letters()
        .map(|a| aut.system.successors(s, a).len())
        .collect();
    (
        aut.initial.binary_search(&s).is_ok(),
        aut.accepting.binary_search(&s).is_ok(),
        outgoing,
        incoming[s].clone(),
    )
}

fn incoming_counts(aut: &Automaton) -> Vec<Vec<usize>> {
    let mut inc = vec![vec![0; aut.alphabet().len()]; aut.state_count()];
    for (_, a, q) in aut.system.transitions() {
        inc[q][a.index()] += 1;
    }
    inc
}

/// Searches for an isomorphism: a bijection on states mapping transitions,
/// initial and final states onto each other exactly. Returns the image of
/// each state of `a` in `b`.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> Option<Vec<StateId>> {
    if a.alphabet() != b.alphabet()
        || a.state_count() != b.state_count()
        || a.system.transition_count() != b.system.transition_count()
        || a.initial.len() != b.initial.len()
        || a.accepting.len() != b.accepting.len()
    {
        return None;
    }
    let n = a.state_count();
    let (ia, ib) = (incoming_counts(a), incoming_counts(b));
    let sa: Vec<_> = (0..n).map(|s| state_signature(a, s, &ia)).collect();
    let sb: Vec<_> = (0..n).map(|s| state_signature(b, s, &ib)).collect();
    let mut ms: Vec<_> = sa.clone();
    let mut mt: Vec<_> = sb.clone();
    ms.sort();
    mt.sort();
    if ms != mt {
        return None;
    }

    fn extend(
        a: &Automaton,
        b: &Automaton,
        sa: &[(bool, bool, Vec<usize>, Vec<usize>)],
        sb: &[(bool, bool, Vec<usize>, Vec<usize>)],
        map: &mut Vec<Option<StateId>>,
        used: &mut Vec<bool>,
        next: StateId,
    ) -> bool {
        let n = map.len();
        if next == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || sa[next] != sb[cand] {
                continue;
            }
            let consistent = (0..=next).all(|other| {
                let img = if other == next { cand } else { map[other].unwrap() };
                a.alphabet().letters().all(|l| {
                    a.system.has_transition(next, l, other) == b.system.has_transition(cand, l, img)
                        && a.system.has_transition(other, l, next) == b.system.has_transition(img, l, cand)
                })
            });
            if !consistent {
                continue;
            }
            map[next] = Some(cand);
            used[cand] = true;
            if extend(a, b, sa, sb, map, used, next + 1) {
                return true;
            }
            map[next] = None;
            used[cand] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if extend(a, b, &sa, &sb, &mut map, &mut used, 0) {
        Some(map.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::plain("ab").unwrap())
    }

    fn seg(alpha: &Arc<Alphabet>, gens: &[&str]) -> FinalSegment {
        FinalSegment::parse(alpha.clone(), gens).unwrap()
    }

    #[test]
    fn saturate_examples() {
        let a = ab();
        let ts = TransitionSystem::new(a.clone(), 2).saturate();
        assert_eq!(ts.transition_count(), 4);

        let mut one = TransitionSystem::new(a.clone(), 2);
        one.add_transition(0, Letter(0), 1).unwrap();
        let sat = one.saturate();
        assert_eq!(sat.transition_count(), 6);
        assert!(sat.has_transition(1, Letter(0), 0));
        assert!(!sat.has_transition(0, Letter(1), 1));

        let ordered = Arc::new(Alphabet::new(&["a", "b"], &[("a", "b")], &[]).unwrap());
        let mut t = TransitionSystem::new(ordered.clone(), 2);
        t.add_transition(0, Letter(0), 1).unwrap();
        let sat = t.saturate();
        for (p, q) in [(0, 1), (1, 0)] {
            assert!(sat.has_transition(p, Letter(0), q));
            assert!(sat.has_transition(p, Letter(1), q));
        }
        assert_eq!(sat.transition_count(), 8);
        assert_eq!(sat.saturate(), sat);
    }

    #[test]
    fn reflexive_involutive_examples() {
        let a = ab();
        let mut t = TransitionSystem::new(a.clone(), 2);
        t.add_transition(0, Letter(0), 1).unwrap();
        assert!(t.saturate().is_reflexive_involutive());
        assert!(!t.is_reflexive_involutive());
        let mut missing = t.saturate();
        missing.out[1][0].retain(|&q| q != 0);
        assert!(!missing.is_reflexive_involutive());
    }

    #[test]
    fn accepts_and_basis_of_trivial_automata() {
        let a = ab();
        let single = Automaton::new(TransitionSystem::new(a.clone(), 1).saturate(), &[0], &[0]).unwrap();
        assert!(single.accepts(&Word::empty()));
        assert!(single.accepted_basis().unwrap().is_full());

        let loops = Automaton::new(TransitionSystem::new(a.clone(), 2).saturate(), &[0], &[1]).unwrap();
        assert!(loops.accepted_basis().unwrap().is_empty());
        let cmp = loops.compare_with_segment(&seg(&a, &["a"])).unwrap();
        assert_eq!(cmp, LanguageComparison::OnlyInSegment(a.parse_word("a").unwrap()));
        assert!(single.compare_with_segment(&FinalSegment::full(a.clone())).unwrap().is_equal());
    }

    #[test]
    fn accepted_basis_requires_saturation() {
        let a = ab();
        let aut = Automaton::new(TransitionSystem::new(a, 1), &[0], &[0]).unwrap();
        assert_eq!(aut.accepted_basis(), Err(Error::NotSaturated));
    }

    #[test]
    fn minimal_dfa_of_principal_segment() {
        let a = ab();
        let m = minimal_dfa(&seg(&a, &["ab"]));
        assert_eq!(m.states, vec![seg(&a, &["ab"]), seg(&a, &["b"]), FinalSegment::full(a.clone())]);
        assert_eq!(minimal_dfa(&FinalSegment::full(a.clone())).states.len(), 1);
        let e = minimal_dfa(&FinalSegment::empty(a.clone()));
        assert_eq!(e.states.len(), 1);
        assert!(!e.dfa.accepts(&Word::empty()));
    }

    #[test]
    fn unsaturated_language_check_uses_subset_construction() {
        let a = ab();
        // accepts exactly "a"
        let mut ts = TransitionSystem::new(a.clone(), 2);
        ts.add_transition(0, Letter(0), 1).unwrap();
        let aut = Automaton::new(ts, &[0], &[1]).unwrap();
        let cmp = aut.compare_with_segment(&seg(&a, &["a"])).unwrap();
        assert_eq!(cmp, LanguageComparison::OnlyInSegment(a.parse_word("aa").unwrap()));
    }

    #[test]
    fn isomorphism_basics() {
        let a = ab();
        let mut ts = TransitionSystem::new(a.clone(), 3);
        ts.add_transition(0, Letter(0), 1).unwrap();
        ts.add_transition(1, Letter(1), 2).unwrap();
        let aut = Automaton::new(ts.saturate(), &[0], &[2]).unwrap();
        assert_eq!(isomorphic(&aut, &aut), Some(vec![0, 1, 2]));
        let other = Automaton::new(TransitionSystem::new(a.clone(), 2).saturate(), &[0], &[1]).unwrap();
        assert!(isomorphic(&aut, &other).is_none());

        // relabeled copy
        let mut ts2 = TransitionSystem::new(a.clone(), 3);
        ts2.add_transition(2, Letter(0), 0).unwrap();
        ts2.add_transition(0, Letter(1), 1).unwrap();
        let copy = Automaton::new(ts2.saturate(), &[2], &[1]).unwrap();
        assert_eq!(isomorphic(&aut, &copy), Some(vec![2, 0, 1]));
    }

    #[test]
    fn articulation_on_small_graphs() {
        let a = ab();
        let mut path = TransitionSystem::new(a.clone(), 3);
        path.add_transition(0, Letter(0), 1).unwrap();
        path.add_transition(1, Letter(1), 2).unwrap();
        assert_eq!(articulation_states(&path.saturate(), 0, 2).unwrap(), vec![1]);

        let mut square = TransitionSystem::new(a.clone(), 4);
        for (p, q) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            square.add_transition(p, Letter(0), q).unwrap();
        }
        assert!(articulation_states(&square, 0, 3).unwrap().is_empty());

        let mut two = TransitionSystem::new(a, 2);
        two.add_transition(0, Letter(0), 1).unwrap();
        assert!(articulation_states(&two, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn dfa_inclusion_counterexample() {
        let a = ab();
        let m = minimal_dfa(&seg(&a, &["ab"]));
        // L(↑b) ⊄ L(↑ab) as languages of the residual states
        let q_b = m.state_of(&seg(&a, &["b"])).unwrap();
        assert_eq!(m.dfa.inclusion_counterexample(q_b, 0), Some(a.parse_word("b").unwrap()));
        assert_eq!(m.dfa.inclusion_counterexample(0, q_b), None);
    }
}
