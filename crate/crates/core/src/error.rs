use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol {symbol:?} in bitstring {input:?}")]
    InvalidBit { input: String, symbol: char },

    #[error("table has no entries")]
    EmptyTable,

    #[error("{side} column is not a prefix code: {shorter} is a prefix of {longer}")]
    NotPrefixCode { side: &'static str, shorter: String, longer: String },

    #[error("{side} column is not a maximal prefix code: nothing covers {missing}")]
    NotMaximal { side: &'static str, missing: String },

    #[error("not a bijection: {side} codeword {entry} occurs more than once")]
    NotBijection { side: &'static str, entry: String },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("invalid generator name {name:?}: {reason}")]
    InvalidGeneratorName { name: String, reason: &'static str },

    #[error("invalid generating set: {0}")]
    InvalidGeneratingSet(String),

    #[error("z must be a non-empty bitstring")]
    InvalidZ,

    #[error("word is not in the word problem")]
    NotInWp,

    #[error("step {step} ({generator}) is undefined on {point}")]
    UndefinedStep { step: usize, generator: String, point: String },

    #[error("rotation index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("ε-chain exceeded budget of {budget} steps")]
    EpsilonDivergence { budget: usize },

    #[error("nondeterminism: transitions {first} and {second} both apply")]
    NondeterminismDetected { first: usize, second: usize },

    #[error("unknown input symbol {0:?}")]
    UnknownSymbol(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
