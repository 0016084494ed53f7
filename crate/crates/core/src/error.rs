use thiserror::Error;

/// Errors produced by the algebra, automata and envelope constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{0}` is declared more than once")]
    DuplicateLetter(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("letter order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    OrderNotAntisymmetric(String, String),

    #[error("involution is not an involution at letter `{0}`")]
    NotAnInvolution(String),

    #[error("involution does not preserve the order: `{0}` <= `{1}` but not bar(`{0}`) <= bar(`{1}`)")]
    InvolutionNotMonotone(String, String),

    #[error("malformed word `{word}`: {reason}")]
    MalformedWord { word: String, reason: String },

    #[error("operands are defined over different alphabets")]
    AlphabetMismatch,

    #[error("the empty final segment is not allowed here")]
    EmptySegment,

    #[error("transition system is not reflexive and involutive")]
    NotSaturated,

    #[error("state {state} out of range (system has {count} states)")]
    StateOutOfRange { state: usize, count: usize },

    #[error("final segment {0} is not an element of the envelope")]
    NotAnElement(String),

    #[error("size cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("invalid chain product: {0}")]
    InvalidProduct(String),

    #[error("word {0} belongs to the final segment")]
    WordInSegment(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
