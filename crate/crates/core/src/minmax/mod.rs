//! Minmax automata: among reflexive involutive automata accepting `F`, those
//! with the fewest states and, among those, the most transitions.
//!
//! Every minmax automaton is isomorphic to an automaton induced by `M_F` on
//! a subset of the envelope containing `x` and `y`, so an exhaustive search
//! over such subsets, smallest first, finds them all.

mod main_example;

use std::sync::Arc;

use crate::automata::{isomorphic, Automaton, TransitionSystem};
use crate::envelope::build_envelope;
use crate::error::{Error, Result};
use crate::segments::FinalSegment;
use crate::words::{Alphabet, Letter};

/// Default bound on `|S_F|` for the subset search.
pub const DEFAULT_CAP: usize = 20;

/// Minmax automata of a final segment, pairwise non-isomorphic.
#[derive(Clone, Debug)]
pub struct MinmaxResult {
    pub automata: Vec<Automaton>,
    /// For each automaton, the envelope elements it is induced on.
    pub subsets: Vec<Vec<FinalSegment>>,
    pub states: usize,
    pub transitions: usize,
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn connected(ts: &TransitionSystem, from: usize, to: usize) -> bool {
    let mut seen = vec![false; ts.state_count()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(p) = stack.pop() {
        for (_, _, q) in ts.transitions().filter(|&(s, _, _)| s == p) {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen[to]
}

/// Searches induced subautomata of `M_F` by increasing size. Fails with
/// [`Error::CapExceeded`] when `|S_F| > cap`.
pub fn search_minmax(target: &FinalSegment, cap: usize) -> Result<MinmaxResult> {
    let env = build_envelope(target)?;
    if env.len() > cap {
        return Err(Error::CapExceeded {
            what: "envelope size",
            actual: env.len(),
            cap,
        });
    }
    if env.x() == env.y() {
        let aut = env.automaton();
        return Ok(MinmaxResult {
            transitions: aut.system().transition_count(),
            subsets: vec![env.elements().to_vec()],
            automata: vec![aut],
            states: 1,
        });
    }

    // a letter read on a loop could be deleted, so basis letters need real edges
    let mut needed: Vec<Letter> = target.basis().iter().flat_map(|w| w.letters().to_vec()).collect();
    needed.sort();
    needed.dedup();

    let middle: Vec<usize> = (0..env.len()).filter(|&i| i != env.x() && i != env.y()).collect();
    for extra in 0..=middle.len() {
        let mut found: Vec<(Automaton, Vec<usize>)> = Vec::new();
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            let mut chosen: Vec<usize> = combo.iter().map(|&i| middle[i]).collect();
            chosen.push(env.x());
            chosen.push(env.y());
            chosen.sort_unstable();
            let sub = env.system().induced(&chosen)?;
            let x = chosen.iter().position(|&s| s == env.x()).unwrap();
            let y = chosen.iter().position(|&s| s == env.y()).unwrap();
            let labels_ok = needed
                .iter()
                .all(|&a| sub.transitions().any(|(p, b, q)| p != q && b == a));
            if labels_ok && connected(&sub, x, y) {
                let aut = Automaton::new(sub, &[x], &[y])?;
                if aut.compare_with_segment(target)?.is_equal() {
                    found.push((aut, chosen.clone()));
                }
            }
            if !next_combination(&mut combo, middle.len()) {
                break;
            }
        }
        if found.is_empty() {
            continue;
        }
        let best = found.iter().map(|(a, _)| a.system().transition_count()).max().unwrap();
        let mut automata: Vec<Automaton> = Vec::new();
        let mut subsets = Vec::new();
        for (aut, chosen) in found {
            if aut.system().transition_count() != best {
                continue;
            }
            if automata.iter().any(|other| isomorphic(other, &aut).is_some()) {
                continue;
            }
            subsets.push(chosen.iter().map(|&i| env.element(i).clone()).collect());
            automata.push(aut);
        }
        return Ok(MinmaxResult {
            automata,
            subsets,
            states: extra + 2,
            transitions: best,
        });
    }
    Err(Error::CheckFailed(format!("no induced automaton accepts {target}")))
}

/// Saturates `aut`, checks that it accepts exactly `F`, and compares its
/// state and transition counts with [`search_minmax`].
pub fn is_minmax(aut: &Automaton, target: &FinalSegment, cap: usize) -> Result<bool> {
    let sat = aut.saturate();
    if !sat.compare_with_segment(target)?.is_equal() {
        return Ok(false);
    }
    let best = search_minmax(target, cap)?;
    Ok(sat.state_count() == best.states && sat.system().transition_count() == best.transitions)
}

/// Outcome of [`reproduce_main_example`].
#[derive(Clone, Debug)]
pub struct MainExampleReport {
    pub alphabet: Arc<Alphabet>,
    pub language: FinalSegment,
    /// Both automata after adding loops and reversed transitions.
    pub automata: [Automaton; 2],
    pub accepts: [bool; 2],
    pub minmax: [bool; 2],
    pub isomorphic: bool,
    pub search: MinmaxResult,
}

impl MainExampleReport {
    pub fn holds(&self) -> bool {
        self.accepts == [true, true] && self.minmax == [true, true] && !self.isomorphic
    }
}

fn example_automaton(alpha: &Arc<Alphabet>, edges: &[(usize, &str, usize)]) -> Result<Automaton> {
    let mut ts = TransitionSystem::new(alpha.clone(), main_example::STATES);
    for &(p, a, q) in edges {
        ts.add_transition(p, alpha.letter(a)?, q)?;
    }
    Automaton::new(ts, &[main_example::X], &[main_example::Y]).map(|a| a.saturate())
}

/// Builds the two five-state automata over `{a, b, c, a', b', c'}`, checks
/// that both accept `↑{ab, ac, ba, bc, ca, cb}`, that both are minmax, and
/// that they are not isomorphic.
pub fn reproduce_main_example() -> Result<MainExampleReport> {
    let alpha = Arc::new(Alphabet::new(&main_example::LETTERS, &[], &main_example::INVOLUTION)?);
    let language = FinalSegment::parse(alpha.clone(), &main_example::LANGUAGE)?;
    let first = example_automaton(&alpha, &main_example::FIRST)?;
    let second = example_automaton(&alpha, &main_example::SECOND)?;
    let search = search_minmax(&language, DEFAULT_CAP)?;
    let mut accepts = [false; 2];
    let mut minmax = [false; 2];
    for (i, aut) in [&first, &second].into_iter().enumerate() {
        accepts[i] = aut.compare_with_segment(&language)?.is_equal();
        minmax[i] = accepts[i]
            && aut.state_count() == search.states
            && aut.system().transition_count() == search.transitions;
    }
    let iso = isomorphic(&first, &second).is_some();
    Ok(MainExampleReport {
        alphabet: alpha,
        language,
        automata: [first, second],
        accepts,
        minmax,
        isomorphic: iso,
        search,
    })
}
