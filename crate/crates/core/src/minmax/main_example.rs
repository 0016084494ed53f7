//! Edge lists of the two five-state automata accepting
//! `↑{ab, ac, ba, bc, ca, cb}` over `{a, b, c, a', b', c'}`, before loops and
//! reversed transitions are added.
//!
//! States: `x = 0`, top `1`, middle `2`, bottom `3`, `y = 4`.

pub const LETTERS: [&str; 6] = ["a", "b", "c", "a'", "b'", "c'"];

pub const INVOLUTION: [(&str, &str); 3] = [("a", "a'"), ("b", "b'"), ("c", "c'")];

pub const LANGUAGE: [&str; 6] = ["ab", "ac", "ba", "bc", "ca", "cb"];

pub const STATES: usize = 5;
pub const X: usize = 0;
pub const Y: usize = 4;

/// One letter into each intermediate state, two letters out of it.
pub const FIRST: [(usize, &str, usize); 9] = [
    (0, "a", 1),
    (1, "b", 4),
    (1, "c", 4),
    (0, "b", 2),
    (2, "a", 4),
    (2, "c", 4),
    (0, "c", 3),
    (3, "a", 4),
    (3, "b", 4),
];

/// Two letters into each intermediate state, one letter out of it.
pub const SECOND: [(usize, &str, usize); 9] = [
    (0, "b", 1),
    (0, "c", 1),
    (1, "a", 4),
    (0, "a", 2),
    (0, "c", 2),
    (2, "b", 4),
    (0, "a", 3),
    (0, "b", 3),
    (3, "c", 4),
];
