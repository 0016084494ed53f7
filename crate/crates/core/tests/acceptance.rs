//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use higman_core::chainprod::GeneratorCoding;
use higman_core::ferrers::{quadruple_holds, Quadruple};
use higman_core::minmax::reproduce_main_example;
use higman_core::{
    build_envelope, count_upsets, is_ferrers_regular, is_ferrers_segment, is_linearly_orderable, verify_sum_theorem, Dfa,
    FinalSegment, Word,
};
use rand::seq::SliceRandom;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figure_one() -> Outcome {
    let a = ab();
    let env = build_envelope(&seg(&a, &["aa", "bb"])).map_err(|e| e.to_string())?;
    let expected = [
        seg(&a, &[""]),
        seg(&a, &["a", "b"]),
        seg(&a, &["a", "bb"]),
        seg(&a, &["b", "aa"]),
        seg(&a, &["ab", "ba", "aa", "bb"]),
        seg(&a, &["aa", "bb"]),
    ];
    ensure(env.len() == expected.len(), || format!("{} elements", env.len()))?;
    for e in &expected {
        ensure(env.index_of(e).is_some(), || format!("{e} missing"))?;
    }
    // covers drawn in the figure, smaller set first
    let covers = [(5, 4), (4, 2), (4, 3), (2, 1), (3, 1), (1, 0)];
    let mut want: Vec<(usize, usize)> = covers
        .iter()
        .map(|&(i, j)| (env.index_of(&expected[i]).unwrap(), env.index_of(&expected[j]).unwrap()))
        .collect();
    want.sort_unstable();
    let mut got = env.hasse().to_vec();
    got.sort_unstable();
    ensure(got == want, || format!("covers {got:?}, expected {want:?}"))?;
    // the same covers from inclusion of word sets
    let sets: Vec<_> = env.elements().iter().map(|e| language(e, ORACLE_BOUND)).collect();
    let n = sets.len();
    let mut brute = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let sub = |p: usize, q: usize| p != q && sets[p].is_subset(&sets[q]);
            if sub(i, j) && !(0..n).any(|k| sub(i, k) && sub(k, j)) {
                brute.push((i, j));
            }
        }
    }
    brute.sort_unstable();
    ensure(brute == want, || format!("oracle covers {brute:?}"))?;
    Ok("6 elements, 6 covers".into())
}

fn counting() -> Outcome {
    let a = ab();
    let size = build_envelope(&seg(&a, &["aa", "bb"])).map_err(|e| e.to_string())?.len();
    let mut failures = Vec::new();
    if size != 6 {
        failures.push(format!("|S_F| = {size}, expected 6"));
    }
    let cases: [(&[usize], u128); 3] = [(&[3, 3], 84), (&[2, 2, 2], 20), (&[2, 2, 2, 2], 168)];
    let mut report = vec![format!("|S_F| = {size}")];
    for (dims, claimed) in cases {
        let got = count_upsets(dims).map_err(|e| e.to_string())?;
        let oracle = brute_upsets(dims);
        report.push(format!("{dims:?}: {got} (oracle {oracle})"));
        if got != claimed || oracle != claimed {
            failures.push(format!("{dims:?}: computed {got}, oracle {oracle}, expected {claimed}"));
        }
    }
    if failures.is_empty() {
        Ok(report.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn envelope_language() -> Outcome {
    let set = regression_set();
    for f in &set {
        let env = build_envelope(f).map_err(|e| format!("{f}: {e}"))?;
        let (eq, witness) = env.automaton().language_equals_segment(f).map_err(|e| e.to_string())?;
        ensure(eq, || format!("{f}: differs on {witness:?}"))?;
    }
    Ok(format!("{} segments", set.len()))
}

fn sum_theorem() -> Outcome {
    let a = ab();
    let mut r = rng(4);
    for _ in 0..20 {
        let f1 = random_segment(&a, &mut r, 0..=2);
        let f2 = random_segment(&a, &mut r, 0..=2);
        let ok = verify_sum_theorem(&f1, &f2).map_err(|e| e.to_string())?;
        ensure(ok, || format!("S({f1}·{f2}) is not the sum of S({f1}) and S({f2})"))?;
    }
    Ok("20 pairs".into())
}

fn round_trip() -> Outcome {
    let mut checked = 0;
    let mut broken = Vec::new();
    for f in regression_set() {
        let lens: Vec<usize> = f.basis().iter().map(Word::len).collect();
        if f.is_full() || lens.iter().any(|&l| l != lens[0]) {
            continue;
        }
        checked += 1;
        let env = build_envelope(&f).map_err(|e| e.to_string())?;
        let coding = GeneratorCoding::new(&f).map_err(|e| e.to_string())?;
        coding.verify_round_trip(&env).map_err(|e| format!("{f}: {e}"))?;
        if let Some((i, j)) = coding.meet_counterexample(&env).map_err(|e| e.to_string())? {
            broken.push(format!("{f} at {} ∩ {}", env.element(i), env.element(j)));
        }
    }
    if broken.is_empty() {
        Ok(format!("{checked} envelopes"))
    } else {
        Err(format!(
            "Ψ∘φ = id on all {checked} envelopes, but φ does not preserve intersections on {}, first {}",
            broken.len(),
            broken[0]
        ))
    }
}

fn ferrers_equivalence() -> Outcome {
    let set = regression_set();
    let mut chains = 0;
    for f in &set {
        let by_residuals = is_ferrers_segment(f).map_err(|e| e.to_string())?.ferrers;
        let by_envelope = is_linearly_orderable(&build_envelope(f).map_err(|e| e.to_string())?);
        ensure(by_residuals == by_envelope, || format!("{f}: {by_residuals} vs {by_envelope}"))?;
        chains += usize::from(by_envelope);
    }
    Ok(format!("{} segments, {chains} Ferrers", set.len()))
}

fn ferrers_verdicts() -> Outcome {
    let a = ab();
    let ends_b = Dfa::new(a.clone(), vec![vec![0, 1], vec![0, 1]], 0, vec![false, true]).map_err(|e| e.to_string())?;
    ensure(is_ferrers_regular(&ends_b).ferrers, || "A*b rejected".into())?;
    let single = Dfa::new(
        a.clone(),
        vec![vec![1, 3], vec![3, 2], vec![3, 3], vec![3, 3]],
        0,
        vec![false, false, true, false],
    )
    .map_err(|e| e.to_string())?;
    ensure(!is_ferrers_regular(&single).ferrers, || "{ab} accepted".into())?;
    for u in all_words(&a, 4) {
        let f = FinalSegment::principal(a.clone(), u.clone());
        ensure(is_ferrers_segment(&f).map_err(|e| e.to_string())?.ferrers, || format!("{f} rejected"))?;
    }
    let ferrers: Vec<FinalSegment> = regression_set()
        .into_iter()
        .filter(|f| is_ferrers_segment(f).unwrap().ferrers)
        .collect();
    let mut r = rng(7);
    for _ in 0..20 {
        let f1 = ferrers.choose(&mut r).unwrap();
        let f2 = ferrers.choose(&mut r).unwrap();
        let f = f1.concat(f2).map_err(|e| e.to_string())?;
        ensure(is_ferrers_segment(&f).map_err(|e| e.to_string())?.ferrers, || format!("{f1}·{f2} rejected"))?;
    }
    let q = Quadruple {
        x: w(&a, "aab"),
        x2: w(&a, "b"),
        y: w(&a, "a"),
        y2: w(&a, "abb"),
    };
    let uu = |v: &Word| in_a2b2(&a, v);
    ensure(!quadruple_holds(uu, &q.x, &q.x2, &q.y, &q.y2), || "quadruple does not refute".into())?;
    Ok(format!("{} Ferrers factors sampled", ferrers.len()))
}

fn minmax_example() -> Outcome {
    let report = reproduce_main_example().map_err(|e| e.to_string())?;
    ensure(report.holds(), || {
        format!(
            "accepts {:?}, minmax {:?}, isomorphic {}, search {} states / {} transitions",
            report.accepts, report.minmax, report.isomorphic, report.search.states, report.search.transitions
        )
    })?;
    Ok(format!(
        "{} states, {} transitions, {} minmax classes",
        report.search.states,
        report.search.transitions,
        report.search.automata.len()
    ))
}

fn metric_axioms() -> Outcome {
    let set = regression_set();
    for f in &set {
        let env = build_envelope(f).map_err(|e| e.to_string())?;
        let pointed = env.to_pointed();
        if let Some(v) = pointed.space.check_axioms() {
            return Err(format!("{f}: {v:?}"));
        }
        if let Some(c) = pointed.space.check_convexity() {
            return Err(format!("{f}: convexity {c:?}"));
        }
        ensure(pointed.no_proper_isometric_subspace(), || format!("{f}: proper isometric subspace"))?;
        let forms = (0..env.len())
            .map(|p| env.metric_form_pair(p))
            .collect::<higman_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        for (hx, hy) in &forms {
            for (hx2, hy2) in &forms {
                let left = FinalSegment::algebra_distance(hx, hx2).map_err(|e| e.to_string())?;
                let right = FinalSegment::algebra_distance(hy, hy2).map_err(|e| e.to_string())?;
                ensure(left == right, || format!("{f}: duality fails between ({hx},{hy}) and ({hx2},{hy2})"))?;
            }
        }
    }
    Ok(format!("{} envelopes", set.len()))
}

fn oracle_algebra() -> Outcome {
    let a = ab();
    let mut r = rng(10);
    let words = all_words(&a, ORACLE_BOUND);
    for case in 0..200 {
        let f = random_segment(&a, &mut r, 1..=3);
        let g = random_segment(&a, &mut r, 1..=3);
        let u = random_word(&a, &mut r, 0..=2);
        let union = f.union(&g).map_err(|e| e.to_string())?;
        let meet = f.intersect(&g).map_err(|e| e.to_string())?;
        let prod = f.concat(&g).map_err(|e| e.to_string())?;
        let right = f.right_residual(&u);
        let left = f.left_residual(&u);
        let inf = |v: &Word| member(&a, f.basis(), v);
        let ing = |v: &Word| member(&a, g.basis(), v);
        for v in &words {
            let checks = [
                ("union", union.contains(v), inf(v) || ing(v)),
                ("intersect", meet.contains(v), inf(v) && ing(v)),
                ("concat", prod.contains(v), in_concat(inf, ing, v)),
                ("right residual", right.contains(v), inf(&v.concat(&u))),
                ("left residual", left.contains(v), inf(&u.concat(v))),
            ];
            for (op, got, want) in checks {
                ensure(got == want, || {
                    format!("case {case}: {op} of {f}, {g}, {} at {}", a.show_word(&u), a.show_word(v))
                })?;
            }
        }
    }
    Ok("200 cases".into())
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "envelope of ↑{aa,bb}", Duration::from_secs(1), figure_one),
        (2, "counting identities", Duration::from_secs(10), counting),
        (3, "envelope language on the regression set", Duration::from_secs(60), envelope_language),
        (4, "sum theorem on 20 random pairs", Duration::from_secs(60), sum_theorem),
        (5, "Ψ∘φ round trip", Duration::from_secs(60), round_trip),
        (6, "Ferrers iff chain", Duration::from_secs(60), ferrers_equivalence),
        (7, "pinned Ferrers verdicts", Duration::from_secs(60), ferrers_verdicts),
        (8, "two non-isomorphic minmax automata", Duration::from_secs(300), minmax_example),
        (9, "metric axioms, duality, convexity, rigidity", Duration::from_secs(120), metric_axioms),
        (10, "segment algebra against word enumeration", Duration::from_secs(60), oracle_algebra),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{elapsed:.2?} / {limit:?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{elapsed:.2?} / {limit:?}]");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
