//! DOT and JSON renderings of automata, envelopes and up-sets.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::automata::{Automaton, Dfa, SegmentDfa};
use crate::chainprod::UpSet;
use crate::envelope::EnvelopeLattice;
use crate::segments::FinalSegment;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Basis words as strings.
pub fn segment_json(segment: &FinalSegment) -> Value {
    json!(segment.basis_strings())
}

/// `{"min_tuples": [...], "dims": [...]}`.
pub fn upset_json(up: &UpSet) -> Value {
    json!({
        "dims": up.product().dims(),
        "min_tuples": up.min_tuples(),
    })
}

fn edge_labels(aut: &Automaton, show_loops: bool) -> BTreeMap<(usize, usize), Vec<String>> {
    let alpha = aut.alphabet();
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (p, a, q) in aut.system().transitions() {
        if p != q || show_loops {
            edges.entry((p, q)).or_default().push(alpha.name(a).to_owned());
        }
    }
    edges
}

/// Transition graph, one edge per state pair with its letters.
pub fn automaton_dot(aut: &Automaton, labels: Option<&[String]>, show_loops: bool) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for s in 0..aut.state_count() {
        let label = labels.map_or_else(|| s.to_string(), |l| l[s].clone());
        let shape = if aut.accepting().contains(&s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {s} [label={}, shape={shape}];", quote(&label));
    }
    for &s in aut.initial() {
        let _ = writeln!(out, "  start{s} [shape=point];\n  start{s} -> {s};");
    }
    for ((p, q), letters) in edge_labels(aut, show_loops) {
        let _ = writeln!(out, "  {p} -> {q} [label={}];", quote(&letters.join(",")));
    }
    out.push_str("}\n");
    out
}

/// `{"states", "transitions": [[p, letter, q], ...], "initial", "final"}`.
pub fn automaton_json(aut: &Automaton, labels: Option<&[String]>) -> Value {
    let alpha = aut.alphabet();
    let states: Vec<Value> = (0..aut.state_count())
        .map(|s| labels.map_or_else(|| json!(s), |l| json!(l[s])))
        .collect();
    let transitions: Vec<Value> = aut
        .system()
        .transitions()
        .map(|(p, a, q)| json!([p, alpha.name(a), q]))
        .collect();
    json!({
        "states": states,
        "transitions": transitions,
        "initial": aut.initial(),
        "final": aut.accepting(),
    })
}

/// Minimal automaton with states labeled by their residuals.
pub fn dfa_dot(min: &SegmentDfa) -> String {
    let labels: Vec<String> = min.states.iter().map(ToString::to_string).collect();
    automaton_dot(&min.dfa.to_automaton(), Some(&labels), true)
}

pub fn dfa_json(min: &SegmentDfa) -> Value {
    let dfa: &Dfa = &min.dfa;
    let alpha = dfa.alphabet();
    let delta: Vec<Value> = (0..dfa.state_count())
        .map(|q| {
            let row: BTreeMap<&str, usize> = alpha.letters().map(|a| (alpha.name(a), dfa.step(q, a))).collect();
            json!(row)
        })
        .collect();
    json!({
        "states": min.states.iter().map(segment_json).collect::<Vec<_>>(),
        "start": dfa.start(),
        "accepting": (0..dfa.state_count()).filter(|&q| dfa.is_accepting(q)).collect::<Vec<_>>(),
        "delta": delta,
    })
}

/// Two graphs: the inclusion lattice (edges from cover to covered) and the
/// transition graph of `T_F`.
pub fn envelope_dot(env: &EnvelopeLattice, show_loops: bool) -> String {
    let labels: Vec<String> = env.elements().iter().map(ToString::to_string).collect();
    let mut out = String::from("digraph lattice {\n  rankdir=TB;\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  {i} [label={}];", quote(l));
    }
    for &(lower, upper) in env.hasse() {
        let _ = writeln!(out, "  {upper} -> {lower} [arrowhead=none];");
    }
    out.push_str("}\n");
    let mut graph = String::from("graph transitions {\n");
    for (i, l) in labels.iter().enumerate() {
        let role = if i == env.x() && i == env.y() {
            " x=y"
        } else if i == env.x() {
            " x"
        } else if i == env.y() {
            " y"
        } else {
            ""
        };
        let _ = writeln!(graph, "  {i} [label={}];", quote(&format!("{l}{role}")));
    }
    // the relation is symmetric up to the involution, so one undirected edge per pair
    let aut = env.automaton();
    for ((p, q), letters) in edge_labels(&aut, show_loops) {
        if p <= q {
            let _ = writeln!(graph, "  {p} -- {q} [label={}];", quote(&letters.join(",")));
        }
    }
    graph.push_str("}\n");
    out + &graph
}

/// Elements, base points, covers, transitions and the distance matrix.
pub fn envelope_json(env: &EnvelopeLattice) -> Value {
    let alpha = env.alphabet();
    let elements: Vec<Value> = env
        .elements()
        .iter()
        .map(|e| json!({"basis": segment_json(e), "display": e.to_string()}))
        .collect();
    let transitions: Vec<Value> = env
        .system()
        .transitions()
        .map(|(p, a, q)| json!([p, alpha.name(a), q]))
        .collect();
    let distances: Vec<Vec<Value>> = env
        .distance_matrix()
        .iter()
        .map(|row| row.iter().map(segment_json).collect())
        .collect();
    json!({
        "target": segment_json(env.target()),
        "elements": elements,
        "x": env.x(),
        "y": env.y(),
        "hasse": env.hasse(),
        "transitions": transitions,
        "distances": distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::build_envelope;
    use crate::words::Alphabet;
    use std::sync::Arc;

    #[test]
    fn envelope_exports_are_consistent() {
        let a = Arc::new(Alphabet::plain("ab").unwrap());
        let env = build_envelope(&FinalSegment::parse(a, &["ab"]).unwrap()).unwrap();
        let dot = envelope_dot(&env, false);
        assert!(dot.starts_with("digraph lattice"));
        assert_eq!(dot.matches(" -> ").count(), env.hasse().len());
        assert_eq!(dot.matches(" -- ").count(), 2);
        let j = envelope_json(&env);
        assert_eq!(j["elements"].as_array().unwrap().len(), 3);
        assert_eq!(j["distances"][env.x()][env.y()], json!(["ab"]));
    }

    #[test]
    fn quoting_escapes() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
