use thiserror::Error;

use crate::word::Word;

/// Errors reported by the decision procedures and constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),

    #[error("operation expects {expected} automaton, got {found}")]
    WrongCondition { expected: &'static str, found: String },

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("no deterministic monitor available for {0} automata; supply one")]
    MissingMonitor(String),

    #[error("monitor disagrees with the automaton on {counterexample}")]
    MonitorMismatch { counterexample: String, word: Word },

    #[error("monitor is not deterministic")]
    NonDeterministicMonitor,

    #[error("objective needs {needed} channels, budget is {budget}")]
    ChannelBudget { needed: usize, budget: usize },

    #[error("token count must be at least 1")]
    ZeroTokens,

    #[error("explorability of the input has not been verified (supply a witness token count)")]
    UnverifiedExplorability,

    #[error("witness k = {0} does not make the automaton explorable")]
    WitnessRejected(usize),

    #[error("target state {0} is not a sink")]
    NonSinkTarget(usize),

    #[error("maximal rank {0} is odd")]
    OddMaxRank(u32),

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("channel {channel} is not a Büchi channel")]
    NonBuchiChannel { channel: usize },

    #[error("configuration space of {0} configurations is too large")]
    ConfigSpaceTooLarge(usize),

    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
