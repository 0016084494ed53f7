//! Inputs shared by the benchmarks.

use std::sync::Arc;

use higman_core::{Alphabet, FinalSegment};

/// `↑{a^n, b^n}` over `{a, b}`.
pub fn two_powers(n: usize) -> FinalSegment {
    let alpha = Arc::new(Alphabet::plain("ab").expect("valid alphabet"));
    FinalSegment::parse(alpha, &[&"a".repeat(n), &"b".repeat(n)]).expect("valid generators")
}

/// `↑{a^n}` over `{a, b}`, whose envelope is a chain.
pub fn power(n: usize) -> FinalSegment {
    let alpha = Arc::new(Alphabet::plain("ab").expect("valid alphabet"));
    FinalSegment::parse(alpha, &[&"a".repeat(n)]).expect("valid generators")
}
