//! The JSON problem format.
//!
//! ```json
//! {
//!   "spec_version": 1,
//!   "letters": ["a", "b"],
//!   "order": [["a", "b"]],
//!   "involution": {"a": "a"},
//!   "generators": ["aa", "bb"],
//!   "factorizations": [{"left": ["a"], "right": ["b"]}]
//! }
//! ```
//!
//! Only `generators` is required. `letters` defaults to the letters used
//! anywhere in the document, sorted; `order` lists pairs `a <= b` and is
//! closed reflexively and transitively; `involution` defaults to the identity
//! and is completed symmetrically. Words are strings of one-character
//! letters, with longer letter names written in brackets, e.g. `"a[b']"`.
//! The empty string is the empty word, so `"generators": [""]` is `A*`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::segments::FinalSegment;
use crate::words::Alphabet;

pub const SPEC_VERSION: u64 = 1;

/// An input error located by a JSON pointer into the document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pointer}: {message}")]
pub struct SpecError {
    pub pointer: String,
    pub message: String,
}

fn err(pointer: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub spec_version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub involution: BTreeMap<String, String>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factorizations: Vec<Factorization>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub alphabet: Arc<Alphabet>,
    pub target: FinalSegment,
    pub factorizations: Vec<(FinalSegment, FinalSegment)>,
}

fn string_at(v: &Value, pointer: &str) -> Result<String, SpecError> {
    v.as_str().map(str::to_owned).ok_or_else(|| err(pointer, "expected a string"))
}

fn strings_at(v: &Value, pointer: &str) -> Result<Vec<String>, SpecError> {
    let arr = v.as_array().ok_or_else(|| err(pointer, "expected an array of strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, s)| string_at(s, &format!("{pointer}/{i}")))
        .collect()
}

/// Splits a word string into letter names, honouring the bracket syntax.
fn letter_names(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut chars = word.chars();
    while let Some(c) = chars.next() {
        if c == '[' {
            out.push(chars.by_ref().take_while(|&d| d != ']').collect());
        } else {
            out.push(c.to_string());
        }
    }
    out
}

impl ProblemSpec {
    /// Parses a JSON document, reporting structural errors by pointer.
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| err("", format!("invalid JSON: {e}")))?;
        Self::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Self, SpecError> {
        let obj = doc.as_object().ok_or_else(|| err("", "expected an object"))?;
        for key in obj.keys() {
            if !["spec_version", "letters", "order", "involution", "generators", "factorizations"].contains(&key.as_str()) {
                return Err(err(format!("/{}", escape(key)), "unknown field"));
            }
        }
        let spec_version = match obj.get("spec_version") {
            None => SPEC_VERSION,
            Some(v) => v.as_u64().ok_or_else(|| err("/spec_version", "expected an integer"))?,
        };
        if spec_version != SPEC_VERSION {
            return Err(err("/spec_version", format!("unsupported version {spec_version}, expected {SPEC_VERSION}")));
        }
        let letters = obj.get("letters").map(|v| strings_at(v, "/letters")).transpose()?;
        let mut order = Vec::new();
        if let Some(v) = obj.get("order") {
            let arr = v.as_array().ok_or_else(|| err("/order", "expected an array of pairs"))?;
            for (i, pair) in arr.iter().enumerate() {
                let p = format!("/order/{i}");
                let items = strings_at(pair, &p)?;
                if items.len() != 2 {
                    return Err(err(p, "expected a pair [lower, upper]"));
                }
                order.push((items[0].clone(), items[1].clone()));
            }
        }
        let mut involution = BTreeMap::new();
        if let Some(v) = obj.get("involution") {
            let map = v.as_object().ok_or_else(|| err("/involution", "expected an object"))?;
            for (k, val) in map {
                involution.insert(k.clone(), string_at(val, &format!("/involution/{}", escape(k)))?);
            }
        }
        let generators = strings_at(
            obj.get("generators").ok_or_else(|| err("/generators", "missing required field"))?,
            "/generators",
        )?;
        let mut factorizations = Vec::new();
        if let Some(v) = obj.get("factorizations") {
            let arr = v.as_array().ok_or_else(|| err("/factorizations", "expected an array"))?;
            for (i, item) in arr.iter().enumerate() {
                let p = format!("/factorizations/{i}");
                let o = item.as_object().ok_or_else(|| err(&p, "expected an object with left and right"))?;
                let side = |name: &str| -> Result<Vec<String>, SpecError> {
                    let q = format!("{p}/{name}");
                    strings_at(o.get(name).ok_or_else(|| err(&q, "missing required field"))?, &q)
                };
                factorizations.push(Factorization {
                    left: side("left")?,
                    right: side("right")?,
                });
            }
        }
        Ok(ProblemSpec {
            spec_version,
            letters,
            order,
            involution,
            generators,
            factorizations,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Letters declared, or else every letter mentioned anywhere, sorted.
    pub fn effective_letters(&self) -> Vec<String> {
        if let Some(l) = &self.letters {
            return l.clone();
        }
        let mut set = BTreeSet::new();
        let words = self
            .generators
            .iter()
            .chain(self.factorizations.iter().flat_map(|f| f.left.iter().chain(&f.right)));
        for w in words {
            set.extend(letter_names(w));
        }
        for (a, b) in &self.order {
            set.insert(a.clone());
            set.insert(b.clone());
        }
        for (a, b) in &self.involution {
            set.insert(a.clone());
            set.insert(b.clone());
        }
        set.into_iter().collect()
    }

    /// Validates against the alphabet and parses every word.
    pub fn build(&self) -> Result<Problem, SpecError> {
        let letters = self.effective_letters();
        let names: Vec<&str> = letters.iter().map(String::as_str).collect();
        let known: BTreeSet<&str> = names.iter().copied().collect();
        for (i, (a, b)) in self.order.iter().enumerate() {
            for (j, l) in [a, b].into_iter().enumerate() {
                if !known.contains(l.as_str()) {
                    return Err(err(format!("/order/{i}/{j}"), format!("unknown letter `{l}`")));
                }
            }
        }
        for (a, b) in &self.involution {
            let p = format!("/involution/{}", escape(a));
            if !known.contains(a.as_str()) {
                return Err(err(p, format!("unknown letter `{a}`")));
            }
            if !known.contains(b.as_str()) {
                return Err(err(p, format!("unknown letter `{b}`")));
            }
        }
        let order: Vec<(&str, &str)> = self.order.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let inv: Vec<(&str, &str)> = self.involution.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let alphabet = Alphabet::new(&names, &order, &inv).map_err(|e| {
            let pointer = match e {
                crate::Error::DuplicateLetter(_) => "/letters",
                crate::Error::OrderNotAntisymmetric(..) => "/order",
                _ => "/involution",
            };
            err(pointer, e.to_string())
        })?;
        let alphabet = Arc::new(alphabet);
        let parse_all = |words: &[String], pointer: &str| -> Result<FinalSegment, SpecError> {
            let parsed = words
                .iter()
                .enumerate()
                .map(|(i, w)| alphabet.parse_word(w).map_err(|e| err(format!("{pointer}/{i}"), e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FinalSegment::new(alphabet.clone(), parsed))
        };
        let target = parse_all(&self.generators, "/generators")?;
        let factorizations = self
            .factorizations
            .iter()
            .enumerate()
            .map(|(i, f)| {
                Ok((
                    parse_all(&f.left, &format!("/factorizations/{i}/left"))?,
                    parse_all(&f.right, &format!("/factorizations/{i}/right"))?,
                ))
            })
            .collect::<Result<Vec<_>, SpecError>>()?;
        Ok(Problem {
            alphabet,
            target,
            factorizations,
        })
    }
}
