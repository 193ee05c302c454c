//! Degrees of non-determinism for automata on finite and infinite words:
//! k-explorability, history-determinism through token games, and
//! ω-explorability of safety and coBüchi automata, together with the automaton
//! constructions and reductions used to study them.
//!
//! Automata are explicit and transition-based with max-parity ranks. Every game is
//! an explicit [`game::Arena`] with a boolean combination of parity objectives,
//! compiled through a Zielonka tree and solved with Zielonka's recursive algorithm.

pub mod automaton;
pub mod constructions;
pub mod determinize;
pub mod error;
pub mod explore;
pub mod format;
pub mod generators;
pub mod game;
pub mod graph;
pub mod limits;
pub mod membership;
pub mod par;
pub mod hd;
pub mod omega;
pub mod word;

pub use automaton::{canonical_parity, complete, validate, Automaton, Condition, Edge, Ranks};
pub use determinize::{resolve_monitor, Monitor, Provenance};
pub use error::{Error, Result};
pub use membership::{
    equivalent_on_lassos, equivalent_on_words, member, member_finite, member_lasso,
    EquivalenceVerdict,
};
pub use word::{LassoWord, Word};
