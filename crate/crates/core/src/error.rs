use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error(
        "symbol name {0:?} is not allowed (must be non-empty, without whitespace, ',' or '#')"
    )]
    InvalidSymbol(String),
    #[error("symbol {0:?} declared twice")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("state {state} out of range for an automaton with {count} states")]
    StateOutOfRange { state: usize, count: usize },
    #[error("symbol index {index} out of range for an alphabet of {count} symbols")]
    SymbolOutOfRange { index: usize, count: usize },
    #[error("transition from state {state} on {symbol:?} defined twice")]
    DuplicateTransition { state: usize, symbol: String },
    #[error(
        "state label {0:?} is not allowed (must be non-empty, without whitespace, brackets or '#')"
    )]
    InvalidLabel(String),
    #[error("state label {0:?} used twice")]
    DuplicateLabel(String),
    #[error("expected {expected} state labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("symbol set built for {got} symbols used with an alphabet of {expected}")]
    ForeignSymbolSet { expected: usize, got: usize },
    #[error("alphabets differ on symbol {0:?}")]
    AlphabetMismatch(String),
    #[error("{0} requires a permutation automaton")]
    NotPermutation(&'static str),
    #[error("automaton is not initially connected: state {0} is unreachable")]
    NotInitiallyConnected(usize),
    #[error("unobservable {unobservable:?} and observable {observable:?} do not commute at state {state}")]
    SplitDoesNotCommute {
        unobservable: String,
        observable: String,
        state: usize,
    },
    #[error(
        "language is not commutative: {0:?} and {1:?} do not commute in its minimal automaton"
    )]
    LanguageNotCommutative(String, String),
    #[error("witness parameters need 0 < 2m + 1 < n, got n = {n}, m = {m}")]
    InvalidWitnessParams { n: usize, m: usize },
    #[error("invalid bound parameters n = {n}, m = {m}: {reason}")]
    InvalidBoundParams {
        n: usize,
        m: usize,
        reason: &'static str,
    },
    #[error("2^{0} does not fit into 128 bits")]
    BoundOverflow(usize),
    #[error("unknown builtin automaton {0:?}")]
    UnknownBuiltin(String),
    #[error("letter {0:?} of the word is not in the subalphabet")]
    LetterOutsideSubalphabet(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
