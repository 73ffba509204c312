use thiserror::Error;

use crate::automaton::{State, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(Symbol),

    #[error("unknown symbol name `{0}`")]
    UnknownSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported acceptance: {0}")]
    UnsupportedAcceptance(String),

    #[error("unsupported HOA feature: {0}")]
    UnsupportedFeature(String),

    #[error("too many atomic propositions: {count} exceeds the cap of {cap}")]
    TooManyAps { count: usize, cap: usize },

    #[error("missing --BODY--")]
    MissingBody,

    #[error("ba format is state-based; the automaton has accepting transitions")]
    BaStateBased,

    #[error("ba format cannot express an automaton without initial states that has transitions")]
    BaNoInitial,

    #[error("automaton is not semi-deterministic: state {state} in the accepting part has {successors} successors on symbol {symbol}")]
    NotSemiDeterministic {
        state: State,
        symbol: Symbol,
        successors: usize,
    },

    #[error("automaton is not inherently weak: component containing state {0} is accepting but not inherently weak")]
    NotInherentlyWeak(State),

    #[error(
        "automaton is not weak: states {0} and {1} share a component but disagree on acceptance"
    )]
    NotWeak(State, State),

    #[error("weak-to-co-Büchi conversion requires a state-based automaton")]
    NotStateBased,

    #[error("dimension mismatch: expected {expected} states, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("exploration budget of {0} macrostate expansions exhausted")]
    BudgetExceeded(u64),

    #[error("no specialized construction applies (rank-based backend not implemented)")]
    UnsupportedClass,

    #[error("{0} is unsupported in this implementation")]
    Unsupported(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid automaton: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
