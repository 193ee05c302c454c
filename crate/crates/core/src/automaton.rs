//! Non-deterministic automata on finite and infinite words with transition ranks.

use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Rank vector carried by a transition; single-channel automata use one entry.
pub type Ranks = SmallVec<[u32; 4]>;

/// Acceptance condition tag. Ranks live on transitions and follow the max-parity
/// convention; for safety and reachability rank 0 marks membership in the accepting
/// transition set and rank 1 marks the complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Finite,
    Safety,
    Reachability,
    Buchi,
    CoBuchi,
    Parity { lo: u32, hi: u32 },
}

impl Condition {
    pub fn is_finite(self) -> bool {
        matches!(self, Condition::Finite)
    }

    /// Inclusive range of ranks allowed by the tag.
    pub fn rank_range(self) -> (u32, u32) {
        match self {
            Condition::Finite => (0, 0),
            Condition::Safety | Condition::Reachability | Condition::CoBuchi => (0, 1),
            Condition::Buchi => (1, 2),
            Condition::Parity { lo, hi } => (lo, hi),
        }
    }

    /// Rank put on transitions of an added rejecting sink.
    pub fn rejecting_rank(self) -> u32 {
        match self {
            Condition::Finite => 0,
            Condition::Safety | Condition::Reachability | Condition::CoBuchi | Condition::Buchi => 1,
            Condition::Parity { lo, hi } => {
                if hi % 2 == 1 {
                    hi
                } else if hi > lo {
                    hi - 1
                } else {
                    hi + 1
                }
            }
        }
    }

    /// Parity view for tags that are plain parity conditions.
    pub fn as_parity(self) -> Option<(u32, u32)> {
        match self {
            Condition::Buchi => Some((1, 2)),
            Condition::CoBuchi => Some((0, 1)),
            Condition::Parity { lo, hi } => Some((lo, hi)),
            _ => None,
        }
    }

    pub fn is_cobuchi_like(self) -> bool {
        matches!(
            self,
            Condition::CoBuchi | Condition::Safety | Condition::Parity { lo: 0, hi: 1 }
        )
    }

    pub fn keyword(self) -> String {
        match self {
            Condition::Finite => "finite".into(),
            Condition::Safety => "safety".into(),
            Condition::Reachability => "reachability".into(),
            Condition::Buchi => "buchi".into(),
            Condition::CoBuchi => "cobuchi".into(),
            Condition::Parity { lo, hi } => format!("parity {lo} {hi}"),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.keyword())
    }
}

/// Outgoing transition: destination and rank vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub dst: usize,
    pub ranks: Ranks,
}

impl Edge {
    pub fn rank(&self) -> u32 {
        self.ranks[0]
    }
}

/// A transition `src --letter--> dst` with its ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition<'a> {
    pub src: usize,
    pub letter: usize,
    pub dst: usize,
    pub ranks: &'a Ranks,
}

/// Explicit automaton. States are `0..num_states()`, letters are indices into
/// `alphabet()`. Multi-channel automata (union products) accept when some channel's
/// projection accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub name: String,
    alphabet: Vec<String>,
    initial: usize,
    condition: Condition,
    channels: usize,
    delta: Vec<Vec<Vec<Edge>>>,
    accepting: Vec<bool>,
}

impl Automaton {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: usize,
        initial: usize,
        condition: Condition,
    ) -> Self {
        let letters = alphabet.len();
        Automaton {
            name: name.into(),
            alphabet,
            initial,
            condition,
            channels: 1,
            delta: vec![vec![Vec::new(); letters]; states],
            accepting: vec![false; states],
        }
    }

    /// Empty automaton with `channels` rank channels.
    pub fn with_channels(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: usize,
        initial: usize,
        condition: Condition,
        channels: usize,
    ) -> Self {
        assert!(channels >= 1);
        let mut a = Automaton::new(name, alphabet, states, initial, condition);
        a.channels = channels;
        a
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial = q;
    }

    pub fn condition(&self) -> Condition {
        self.condition
    }

    pub fn set_condition(&mut self, c: Condition) {
        self.condition = c;
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn add_state(&mut self) -> usize {
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.accepting.push(false);
        self.delta.len() - 1
    }

    pub fn add_transition(&mut self, src: usize, letter: usize, dst: usize, rank: u32) {
        self.add_transition_ranks(src, letter, dst, smallvec![rank; self.channels]);
    }

    /// Panics if `src` or `letter` is out of range or the rank vector has the wrong width.
    pub fn add_transition_ranks(&mut self, src: usize, letter: usize, dst: usize, ranks: Ranks) {
        assert_eq!(ranks.len(), self.channels, "rank vector width");
        let edges = &mut self.delta[src][letter];
        let edge = Edge { dst, ranks };
        if let Err(pos) = edges.binary_search(&edge) {
            edges.insert(pos, edge);
        }
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[Edge] {
        &self.delta[q][letter]
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition<'_>> + '_ {
        self.delta.iter().enumerate().flat_map(|(src, row)| {
            row.iter().enumerate().flat_map(move |(letter, edges)| {
                edges.iter().map(move |e| Transition {
                    src,
                    letter,
                    dst: e.dst,
                    ranks: &e.ranks,
                })
            })
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn set_accepting(&mut self, q: usize, yes: bool) {
        self.accepting[q] = yes;
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().flatten().all(|e| !e.is_empty())
    }

    /// True iff every (state, letter) has exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|e| e.len() == 1)
    }

    /// Unique successor of a deterministic automaton.
    pub fn step(&self, q: usize, letter: usize) -> &Edge {
        &self.delta[q][letter][0]
    }

    /// Set of successors of `states` on `letter`, sorted.
    pub fn post(&self, states: &[usize], letter: usize) -> Vec<usize> {
        let mut out: Vec<usize> = states
            .iter()
            .flat_map(|&q| self.delta[q][letter].iter().map(|e| e.dst))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Single-channel automaton that reads channel `c` of every rank vector.
    pub fn project_channel(&self, c: usize) -> Automaton {
        assert!(c < self.channels);
        let mut out = Automaton::new(
            self.name.clone(),
            self.alphabet.clone(),
            self.num_states(),
            self.initial,
            self.condition,
        );
        out.accepting = self.accepting.clone();
        for t in self.transitions() {
            out.add_transition(t.src, t.letter, t.dst, t.ranks[c]);
        }
        out
    }

    /// Restriction to the states reachable from the initial state, renumbered in BFS order.
    pub fn trim(&self) -> Automaton {
        let n = self.num_states();
        let mut index = vec![usize::MAX; n];
        let mut order = vec![self.initial];
        index[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for edges in &self.delta[q] {
                for e in edges {
                    if e.dst < n && index[e.dst] == usize::MAX {
                        index[e.dst] = order.len();
                        order.push(e.dst);
                    }
                }
            }
        }
        let mut out = Automaton::with_channels(
            self.name.clone(),
            self.alphabet.clone(),
            order.len(),
            0,
            self.condition,
            self.channels,
        );
        for (new, &old) in order.iter().enumerate() {
            out.accepting[new] = self.accepting[old];
            for (letter, edges) in self.delta[old].iter().enumerate() {
                for e in edges {
                    out.add_transition_ranks(new, letter, index[e.dst], e.ranks.clone());
                }
            }
        }
        out
    }

    /// Adds letters; existing states move to a rejecting sink on them.
    pub fn extend_alphabet(&self, extra: &[&str]) -> Automaton {
        let mut alphabet = self.alphabet.clone();
        for l in extra {
            if !alphabet.iter().any(|x| x == l) {
                alphabet.push(l.to_string());
            }
        }
        let mut out = Automaton::with_channels(
            self.name.clone(),
            alphabet,
            self.num_states(),
            self.initial,
            self.condition,
            self.channels,
        );
        out.accepting = self.accepting.clone();
        for t in self.transitions() {
            out.add_transition_ranks(t.src, t.letter, t.dst, t.ranks.clone());
        }
        complete(&out)
    }
}

/// Lists violated invariants; empty iff the automaton is well formed.
pub fn validate(a: &Automaton) -> Vec<String> {
    let mut out = Vec::new();
    let n = a.num_states();
    if a.initial >= n {
        out.push(format!("initial state {} out of range (states: {n})", a.initial));
    }
    let (lo, hi) = a.condition.rank_range();
    for t in a.transitions() {
        if t.dst >= n {
            out.push(format!(
                "transition ({}, {}, {}) leaves the state set",
                t.src, a.alphabet[t.letter], t.dst
            ));
        }
        if a.condition.is_finite() {
            continue;
        }
        for (c, &r) in t.ranks.iter().enumerate() {
            if r < lo || r > hi {
                out.push(format!(
                    "rank {r} on ({}, {}, {}) channel {c} outside [{lo},{hi}] for {}",
                    t.src, a.alphabet[t.letter], t.dst, a.condition
                ));
            }
        }
    }
    for q in 0..n {
        for (letter, edges) in a.delta[q].iter().enumerate() {
            if edges.is_empty() {
                out.push(format!("incomplete at ({q}, {})", a.alphabet[letter]));
            }
        }
    }
    if !a.condition.is_finite() && a.accepting.iter().any(|&x| x) {
        out.push("accepting states are only meaningful in finite mode".into());
    }
    out
}

/// Adds a rejecting sink for every missing (state, letter) pair. Returns a clone
/// when the automaton is already complete.
pub fn complete(a: &Automaton) -> Automaton {
    if a.is_complete() {
        return a.clone();
    }
    let mut out = a.clone();
    let rank = a.condition.rejecting_rank();
    if let Condition::Parity { lo, hi } = a.condition {
        if rank > hi {
            out.condition = Condition::Parity { lo, hi: rank };
        }
    }
    let sink = out.add_state();
    for q in 0..out.num_states() {
        for letter in 0..out.num_letters() {
            if out.delta[q][letter].is_empty() {
                out.add_transition(q, letter, sink, rank);
            }
        }
    }
    out
}

/// Re-expresses an infinite-word automaton as a parity automaton with the same
/// language. Büchi and coBüchi are retagged; safety and reachability are encoded
/// through a rejecting or accepting sink.
pub fn canonical_parity(a: &Automaton) -> Result<Automaton> {
    match a.condition {
        Condition::Finite => Err(Error::WrongCondition {
            expected: "an infinite-word",
            found: "finite".into(),
        }),
        Condition::Buchi | Condition::CoBuchi | Condition::Parity { .. } => {
            let (lo, hi) = a.condition.as_parity().unwrap();
            let mut out = a.clone();
            out.condition = Condition::Parity { lo, hi };
            Ok(out)
        }
        Condition::Safety | Condition::Reachability => {
            if a.channels != 1 {
                return Err(Error::Invalid(
                    "safety/reachability encoding needs a single channel".into(),
                ));
            }
            let src = complete(a);
            let safety = a.condition == Condition::Safety;
            let mut out = Automaton::new(
                src.name.clone(),
                src.alphabet.clone(),
                src.num_states(),
                src.initial,
                if safety {
                    Condition::Parity { lo: 0, hi: 1 }
                } else {
                    Condition::Parity { lo: 1, hi: 2 }
                },
            );
            let sink = out.add_state();
            for letter in 0..out.num_letters() {
                out.add_transition(sink, letter, sink, if safety { 1 } else { 2 });
            }
            for t in src.transitions() {
                let in_f = t.ranks[0] == 0;
                match (safety, in_f) {
                    (true, true) => out.add_transition(t.src, t.letter, t.dst, 0),
                    (true, false) => out.add_transition(t.src, t.letter, sink, 1),
                    (false, true) => out.add_transition(t.src, t.letter, sink, 2),
                    (false, false) => out.add_transition(t.src, t.letter, t.dst, 1),
                }
            }
            Ok(out)
        }
    }
}
