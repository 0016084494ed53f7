//! Final segments of the free ordered monoid `A*` under the Higman subword
//! ordering, and the injective envelopes of two-point metric spaces valued
//! in them.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: alphabets with a letter order and involution, words, embedding.
//! - [`segments`]: final segments as antichain bases, with their algebra.
//! - [`automata`]: transition systems, automata, minimal automata.
//! - [`envelope`]: the envelope lattice `S_F`, its distances and sums.
//! - [`chainprod`]: up-sets of chain products and the coding of `S_F` into them.
//! - [`ferrers`]: Ferrers tests for final segments and regular languages.
//! - [`minmax`]: exhaustive search for minmax automata.
//! - [`schema`] and [`export`]: the JSON problem format and DOT/JSON output.

pub mod automata;
pub mod chainprod;
pub mod envelope;
pub mod error;
pub mod export;
pub mod ferrers;
pub mod minmax;
pub mod schema;
pub mod segments;
pub mod words;

pub use automata::{articulation_states, isomorphic, minimal_dfa, Automaton, Dfa, LanguageComparison, SegmentDfa, StateId, TransitionSystem};
pub use chainprod::{count_upsets, ChainProduct, GeneratorCoding, UpSet};
pub use envelope::{build_envelope, concat_pointed, decompose, residual_closure, verify_sum_theorem, EnvelopeLattice, FiniteMetricSpace, PointedSpace};
pub use error::{Error, Result};
pub use ferrers::{is_ferrers_regular, is_ferrers_segment, is_linearly_orderable, quadruple_sample_test};
pub use minmax::{is_minmax, search_minmax, MinmaxResult};
pub use schema::ProblemSpec;
pub use segments::FinalSegment;
pub use words::{Alphabet, Letter, Word};
