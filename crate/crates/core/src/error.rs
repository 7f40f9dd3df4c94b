use thiserror::Error;

/// A single invariant violation found while validating a machine.
///
/// Violations are data, not errors: validation returns all of them at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A (state, input symbol) pair has no transition entry.
    MissingTransition { state: String, input: String },
    /// A (state, input symbol) pair has no emission entry.
    MissingEmission { state: String, input: String },
    /// A transition targets a state that is not in the state list.
    UnknownTargetState { state: String, input: String, target: String },
    /// An emission produces a symbol outside the output alphabet.
    UnknownOutputSymbol { state: String, input: String, output: String },
    /// A transition or emission row refers to a state not in the state list.
    UnknownState { state: String },
    /// A transition or emission entry is keyed by a symbol outside the input
    /// alphabet.
    UnknownInputSymbol { state: String, input: String },
    /// The rest state is not a member of the state list.
    RestStateUnknown { rest_state: String },
    /// The rest state moves under the default input symbol.
    RestStateNotFixed { rest_state: String, target: String },
    /// A state label occurs more than once.
    DuplicateState { state: String },
    /// The declared default output disagrees with emission(o, rest).
    DefaultOutputMismatch { declared: String, derived: String },
    /// An alphabet is empty, has duplicates, or its default is missing.
    BadAlphabet { which: String, detail: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingTransition { state, input } => {
                write!(f, "missing transition for state {state:?} on input {input:?}")
            }
            Violation::MissingEmission { state, input } => {
                write!(f, "missing emission for state {state:?} on input {input:?}")
            }
            Violation::UnknownTargetState { state, input, target } => write!(
                f,
                "transition from state {state:?} on input {input:?} targets unknown state {target:?}"
            ),
            Violation::UnknownOutputSymbol { state, input, output } => write!(
                f,
                "emission from state {state:?} on input {input:?} produces unknown symbol {output:?}"
            ),
            Violation::UnknownState { state } => {
                write!(f, "transition/emission row for unknown state {state:?}")
            }
            Violation::UnknownInputSymbol { state, input } => {
                write!(f, "entry for state {state:?} keyed by unknown input symbol {input:?}")
            }
            Violation::RestStateUnknown { rest_state } => {
                write!(f, "rest state {rest_state:?} is not in the state list")
            }
            Violation::RestStateNotFixed { rest_state, target } => write!(
                f,
                "rest state {rest_state:?} moves to {target:?} under the default input"
            ),
            Violation::DuplicateState { state } => {
                write!(f, "duplicate state label {state:?}")
            }
            Violation::DefaultOutputMismatch { declared, derived } => write!(
                f,
                "declared default output {declared:?} differs from emission(o, rest) = {derived:?}"
            ),
            Violation::BadAlphabet { which, detail } => {
                write!(f, "bad {which} alphabet: {detail}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid machine: {}", format_violations(.0))]
    InvalidMachine(Vec<Violation>),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("insufficient Markov parameters: {0}")]
    InsufficientMarkov(String),
    #[error(
        "Hankel rank not saturated (rank {rank} at ({r}, {c}) but {rank_next} at ({}, {})); \
         supply more Markov parameters",
        r + 1, c + 1
    )]
    OrderUndetermined { r: usize, c: usize, rank: usize, rank_next: usize },
    #[error("machines are not equivalent; counterexample word {0:?}")]
    NotEquivalent(Vec<String>),
    #[error("no quotient state is equivalent to state {0:?} in the controllable subset")]
    UnmatchedState(String),
    #[error("invalid evaluation window: from {0} > to {1}")]
    InvalidWindow(i64, i64),
    #[error("parse error: {0}")]
    Parse(String),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
