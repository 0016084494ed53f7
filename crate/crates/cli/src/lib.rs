//! Subcommands of the `higman` binary. Each command returns the text it
//! prints, so output is identical across runs for the same input.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use higman_core::chainprod::GeneratorCoding;
use higman_core::envelope::EnvelopeLattice;
use higman_core::export;
use higman_core::ferrers::check_ferrers_equivalence;
use higman_core::minmax::DEFAULT_CAP;
use higman_core::schema::{Problem, SpecError};
use higman_core::{build_envelope, count_upsets, decompose, is_ferrers_segment, minimal_dfa, search_minmax, verify_sum_theorem, Error, FinalSegment, ProblemSpec};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "higman", version, about = "Injective envelopes of final segments of the subword order")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the envelope lattice and list its elements.
    Envelope {
        /// Problem file, or `-` for standard input.
        spec: PathBuf,
        /// Write the Hasse diagram and transition graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write elements, covers, transitions and distances as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Keep loop transitions in the DOT output.
        #[arg(long)]
        loops: bool,
    },
    /// Decide whether the final segment is Ferrers.
    Ferrers { spec: PathBuf },
    /// Split the final segment into irreducible concatenation factors.
    Decompose { spec: PathBuf },
    /// Search for minmax automata among induced subautomata of the envelope.
    Minmax {
        spec: PathBuf,
        /// Largest envelope the search will attempt.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the minimal deterministic automaton.
    Mindfa {
        spec: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Count the up-sets of a product of chains with the given sizes.
    Count {
        #[arg(required = true)]
        dims: Vec<usize>,
    },
    /// Run every consistency check on the envelope.
    Verify { spec: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    /// Carries the full report, which goes to standard output.
    #[error("verification failed")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            Error::CheckFailed(msg) => CliError::Verification(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Envelope { spec, dot, json, loops } => cmd_envelope(&load(spec)?, dot.as_deref(), json.as_deref(), *loops),
        Command::Ferrers { spec } => cmd_ferrers(&load(spec)?),
        Command::Decompose { spec } => cmd_decompose(&load(spec)?),
        Command::Minmax { spec, cap, dot, json } => cmd_minmax(&load(spec)?, *cap, dot.as_deref(), json.as_deref()),
        Command::Mindfa { spec, dot, json } => cmd_mindfa(&load(spec)?, dot.as_deref(), json.as_deref()),
        Command::Count { dims } => cmd_count(dims),
        Command::Verify { spec } => cmd_verify(&load(spec)?),
    }
}

/// Reads and validates a problem file; `-` reads standard input.
pub fn load(path: &Path) -> Result<Problem, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    Ok(ProblemSpec::from_json(&text)?.build()?)
}

fn write_file(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, contents).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

pub fn cmd_envelope(problem: &Problem, dot: Option<&Path>, json: Option<&Path>, loops: bool) -> Result<String, CliError> {
    let env = build_envelope(&problem.target)?;
    let mut out = plural(env.len(), "element") + "\n";
    for (i, e) in env.elements().iter().enumerate() {
        let role = match (i == env.x(), i == env.y()) {
            (true, true) => " (x, y)",
            (true, false) => " (x)",
            (false, true) => " (y)",
            _ => "",
        };
        let _ = writeln!(out, "{i} {e}{role}");
    }
    write_file(dot, &export::envelope_dot(&env, loops))?;
    write_file(json, &pretty(&export::envelope_json(&env)))?;
    Ok(out)
}

pub fn cmd_ferrers(problem: &Problem) -> Result<String, CliError> {
    let verdict = is_ferrers_segment(&problem.target)?;
    let witness = verdict.witness.map(|(p, q)| [p.to_string(), q.to_string()]);
    Ok(json!({"ferrers": verdict.ferrers, "witness": witness}).to_string() + "\n")
}

pub fn cmd_decompose(problem: &Problem) -> Result<String, CliError> {
    let factors: Vec<String> = decompose(&problem.target)?.iter().map(ToString::to_string).collect();
    Ok(json!(factors).to_string() + "\n")
}

pub fn cmd_minmax(problem: &Problem, cap: usize, dot: Option<&Path>, json: Option<&Path>) -> Result<String, CliError> {
    let found = search_minmax(&problem.target, cap)?;
    let mut out = format!(
        "{}, {}, {} up to isomorphism\n",
        plural(found.states, "state"),
        plural(found.transitions, "transition"),
        plural(found.automata.len(), "automaton")
    );
    let mut dots = String::new();
    let mut docs = Vec::new();
    for (i, (aut, subset)) in found.automata.iter().zip(&found.subsets).enumerate() {
        let labels: Vec<String> = subset.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "automaton {i}: {}", labels.join(" "));
        dots.push_str(&export::automaton_dot(aut, Some(&labels), false));
        docs.push(export::automaton_json(aut, Some(&labels)));
    }
    write_file(dot, &dots)?;
    write_file(json, &pretty(&json!({"states": found.states, "transitions": found.transitions, "automata": docs})))?;
    Ok(out)
}

pub fn cmd_mindfa(problem: &Problem, dot: Option<&Path>, json: Option<&Path>) -> Result<String, CliError> {
    let min = minimal_dfa(&problem.target);
    let alpha = &problem.alphabet;
    let mut out = plural(min.states.len(), "state") + "\n";
    for (q, state) in min.states.iter().enumerate() {
        let steps: Vec<String> = alpha.letters().map(|a| format!("{}→{}", alpha.name(a), min.dfa.step(q, a))).collect();
        let mut marks = Vec::new();
        if q == min.dfa.start() {
            marks.push("start");
        }
        if min.dfa.is_accepting(q) {
            marks.push("accepting");
        }
        let marks = if marks.is_empty() { String::new() } else { format!(" ({})", marks.join(", ")) };
        let _ = writeln!(out, "{q} {state}{marks}: {}", steps.join(" "));
    }
    write_file(dot, &export::dfa_dot(&min))?;
    write_file(json, &pretty(&export::dfa_json(&min)))?;
    Ok(out)
}

pub fn cmd_count(dims: &[usize]) -> Result<String, CliError> {
    Ok(format!("{}\n", count_upsets(dims)?))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

type CheckFn<'a> = Box<dyn Fn() -> Result<Option<String>, Error> + 'a>;

fn duality(env: &EnvelopeLattice) -> Result<Option<String>, Error> {
    let forms = (0..env.len()).map(|p| env.metric_form_pair(p)).collect::<Result<Vec<_>, _>>()?;
    for (i, (hx, hy)) in forms.iter().enumerate() {
        for (j, (gx, gy)) in forms.iter().enumerate() {
            if FinalSegment::algebra_distance(hx, gx)? != FinalSegment::algebra_distance(hy, gy)? {
                return Err(Error::CheckFailed(format!(
                    "metric forms of {} and {} disagree",
                    env.element(i),
                    env.element(j)
                )));
            }
        }
    }
    Ok(None)
}

/// Runs the checks in a fixed order and stops at the first failure.
pub fn cmd_verify(problem: &Problem) -> Result<String, CliError> {
    let target = &problem.target;
    let env = build_envelope(target)?;
    let pointed = env.to_pointed();
    let fail = |msg: String| Err(Error::CheckFailed(msg));
    let mut checks: Vec<(&'static str, CheckFn)> = vec![
        (
            "envelope language",
            Box::new(|| match env.automaton().language_equals_segment(target)? {
                (true, _) => Ok(None),
                (false, w) => fail(format!("automaton and {target} differ on {}", w.map(|w| problem.alphabet.show_word(&w)).unwrap_or_default())),
            }),
        ),
        (
            "distance axioms",
            Box::new(|| match pointed.space.check_axioms() {
                None => Ok(None),
                Some(v) => fail(format!("{v:?}")),
            }),
        ),
        ("duality", Box::new(|| duality(&env))),
        (
            "convexity",
            Box::new(|| match pointed.space.check_convexity() {
                None => Ok(None),
                Some(c) => fail(format!("no point splits {} between {} and {}", problem.alphabet.show_word(&c.word), env.element(c.p), env.element(c.q))),
            }),
        ),
        (
            "no proper isometric subspace",
            Box::new(|| {
                if pointed.no_proper_isometric_subspace() {
                    Ok(None)
                } else {
                    fail("a non-identity non-expansive map fixes both base points".into())
                }
            }),
        ),
        (
            "minimal automaton morphism",
            Box::new(|| env.min_dfa_morphism().map(|_| None)),
        ),
        (
            "round trip",
            Box::new(|| {
                if target.is_full() {
                    return Ok(Some("skipped for A*".into()));
                }
                let coding = GeneratorCoding::new(target)?;
                coding.verify_round_trip(&env)?;
                Ok(None)
            }),
        ),
        (
            "Ferrers equivalence",
            Box::new(|| check_ferrers_equivalence(target).map(|f| Some(format!("ferrers = {f}")))),
        ),
    ];
    for (i, (left, right)) in problem.factorizations.iter().enumerate() {
        let name: &'static str = if i == 0 { "sum theorem" } else { "sum theorem (further factorization)" };
        checks.push((
            name,
            Box::new(move || {
                let product = left.concat(right)?;
                if &product != target {
                    return fail(format!("{left}·{right} = {product}, not {target}"));
                }
                if verify_sum_theorem(left, right)? {
                    Ok(Some(format!("{left}·{right}")))
                } else {
                    fail(format!("envelope of {target} is not the sum for {left}·{right}"))
                }
            }),
        ));
    }

    let mut report = Vec::new();
    let mut ok = true;
    for (name, check) in &checks {
        match check() {
            Ok(detail) => report.push(Check { name, status: "pass", detail }),
            Err(Error::CheckFailed(msg)) => {
                report.push(Check { name, status: "fail", detail: Some(msg) });
                ok = false;
                break;
            }
            Err(e @ Error::CapExceeded { .. }) => return Err(e.into()),
            Err(e) => {
                report.push(Check { name, status: "fail", detail: Some(e.to_string()) });
                ok = false;
                break;
            }
        }
    }
    let text = pretty(&json!({"ok": ok, "elements": env.len(), "checks": report}));
    if ok {
        Ok(text)
    } else {
        Err(CliError::Verification(text))
    }
}
