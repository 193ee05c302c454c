//! ω-explorability: reachability automata always are; safety and coBüchi automata
//! are decided by the elimination game; Büchi and parity inputs are reduced to an
//! equally ω-explorable Büchi automaton and left open.
//!
//! In the elimination game Eliminator picks letters while Protector moves a
//! challenger token inside the reachable set. Taking a rank-1 transition is an
//! elimination, after which Protector relocates the challenger anywhere in the
//! reachable set. Eliminator wins if eliminations recur while the monitor only
//! finitely often hits a breakpoint.

use std::collections::HashMap;

use crate::automaton::{canonical_parity, Automaton, Condition};
use crate::determinize::breakpoint_construction;
use crate::error::{Error, Result};
use crate::game::{solve_parity, Arena, Player, SolveResult};

pub const ELIMINATOR: Player = Player::Zero;
pub const PROTECTOR: Player = Player::One;

/// Color of an Eliminator move whose monitor transition is a breakpoint.
pub const BREAKPOINT_COLOR: u32 = 3;
pub const ELIMINATION_COLOR: u32 = 2;
pub const QUIET_COLOR: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EliminationLabel {
    /// Eliminator to pick a letter at `(B, q, p)`.
    Main { set: Vec<usize>, challenger: usize, monitor: usize },
    /// Protector to move the challenger after `letter`.
    Move { set: Vec<usize>, challenger: usize, monitor: usize, letter: usize },
    /// Protector to place the challenger anywhere in `set` after an elimination.
    Relocate { set: Vec<usize>, monitor: usize },
}

#[derive(Debug, Clone)]
pub struct EliminationGame {
    /// Single channel, colors 1..=3.
    pub arena: Arena,
    pub labels: Vec<EliminationLabel>,
    /// The coBüchi automaton the challenger moves in.
    pub automaton: Automaton,
    pub monitor: Automaton,
}

impl EliminationGame {
    pub fn solve(&self) -> SolveResult {
        solve_parity(&self.arena)
    }

    pub fn protector_wins(&self) -> bool {
        self.solve().wins(PROTECTOR, self.arena.initial)
    }
}

fn cobuchi_form(a: &Automaton) -> Result<Automaton> {
    if a.channels() != 1 {
        return Err(Error::Invalid("elimination game needs a single channel".into()));
    }
    match a.condition() {
        Condition::Safety | Condition::CoBuchi | Condition::Parity { lo: 0, hi: 1 } | Condition::Parity { lo: 0, hi: 0 } => {
            let c = canonical_parity(a)?;
            Ok(crate::automaton::complete(&c))
        }
        other => Err(Error::WrongCondition {
            expected: "a safety or coBüchi",
            found: other.keyword(),
        }),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Main(Vec<usize>, usize, usize),
    Relocate(Vec<usize>, usize),
}

/// Builds the reachable part of the elimination game of a safety or coBüchi automaton.
pub fn build_elimination_game(a: &Automaton) -> Result<EliminationGame> {
    let aut = cobuchi_form(a)?;
    let monitor = breakpoint_construction(&aut)?.automaton;
    let mut arena = Arena::new(format!("elim_{}", a.name), vec![(QUIET_COLOR, BREAKPOINT_COLOR)]);
    let mut labels = Vec::new();
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut queue: Vec<(Key, usize)> = Vec::new();
    let mut intern = |k: Key, arena: &mut Arena, labels: &mut Vec<EliminationLabel>, queue: &mut Vec<(Key, usize)>| -> usize {
        if let Some(&v) = index.get(&k) {
            return v;
        }
        let (owner, label) = match &k {
            Key::Main(b, q, p) => (
                ELIMINATOR,
                EliminationLabel::Main {
                    set: b.clone(),
                    challenger: *q,
                    monitor: *p,
                },
            ),
            Key::Relocate(b, p) => (
                PROTECTOR,
                EliminationLabel::Relocate {
                    set: b.clone(),
                    monitor: *p,
                },
            ),
        };
        let v = arena.add_position(owner);
        labels.push(label);
        index.insert(k.clone(), v);
        queue.push((k, v));
        v
    };
    let q0 = aut.initial();
    intern(Key::Main(vec![q0], q0, monitor.initial()), &mut arena, &mut labels, &mut queue);
    let mut head = 0;
    while head < queue.len() {
        let (key, v) = queue[head].clone();
        head += 1;
        match key {
            Key::Relocate(b, p) => {
                for &q in &b {
                    let w = intern(Key::Main(b.clone(), q, p), &mut arena, &mut labels, &mut queue);
                    arena.add_edge1(v, w, QUIET_COLOR);
                }
            }
            Key::Main(b, q, p) => {
                for l in 0..aut.num_letters() {
                    let micro = arena.add_position(PROTECTOR);
                    labels.push(EliminationLabel::Move {
                        set: b.clone(),
                        challenger: q,
                        monitor: p,
                        letter: l,
                    });
                    let me = monitor.step(p, l);
                    let color = if me.rank() == 1 { BREAKPOINT_COLOR } else { QUIET_COLOR };
                    arena.add_edge1(v, micro, color);
                    let b2 = aut.post(&b, l);
                    for e in aut.successors(q, l) {
                        if e.rank() == 1 {
                            let w = intern(Key::Relocate(b2.clone(), me.dst), &mut arena, &mut labels, &mut queue);
                            arena.add_edge1(micro, w, ELIMINATION_COLOR);
                        } else {
                            let w = intern(Key::Main(b2.clone(), e.dst, me.dst), &mut arena, &mut labels, &mut queue);
                            arena.add_edge1(micro, w, QUIET_COLOR);
                        }
                    }
                }
            }
        }
    }
    Ok(EliminationGame {
        arena,
        labels,
        automaton: aut,
        monitor,
    })
}

/// Whether Protector wins the elimination game of a safety or coBüchi automaton.
pub fn is_omega_explorable_cobuchi(a: &Automaton) -> Result<bool> {
    Ok(build_elimination_game(a)?.protector_wins())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaVerdict {
    OmegaExplorable,
    NotOmegaExplorable,
    /// Open case; carries a Büchi automaton with the same ω-explorability status.
    Unknown(Box<Automaton>),
}

pub fn is_omega_explorable(a: &Automaton) -> Result<OmegaVerdict> {
    let verdict = |b: bool| {
        if b {
            OmegaVerdict::OmegaExplorable
        } else {
            OmegaVerdict::NotOmegaExplorable
        }
    };
    match a.condition() {
        Condition::Finite => Err(Error::WrongCondition {
            expected: "an infinite-word",
            found: "finite".into(),
        }),
        Condition::Reachability => Ok(OmegaVerdict::OmegaExplorable),
        Condition::Safety | Condition::CoBuchi | Condition::Parity { lo: 0, hi: 1 } | Condition::Parity { lo: 0, hi: 0 } => {
            Ok(verdict(is_omega_explorable_cobuchi(a)?))
        }
        Condition::Buchi | Condition::Parity { .. } => Ok(OmegaVerdict::Unknown(Box::new(parity_to_buchi_omega(a)?))),
    }
}

/// Büchi automaton with the language and ω-explorability status of a parity
/// automaton: an all-rejecting copy `A'` and, for each even rank `l`, a copy `A_l`
/// where ranks below `l` are rejecting, `l` is Büchi and larger ranks lead to a
/// rejecting sink. Every original transition also jumps from `A'` into each `A_l`.
/// States: `A'` first, then the copies in increasing `l`, then the sink.
pub fn parity_to_buchi_omega(a: &Automaton) -> Result<Automaton> {
    let p = canonical_parity(a)?;
    if p.channels() != 1 {
        return Err(Error::Invalid("parity to Büchi needs a single channel".into()));
    }
    let (lo, hi) = p.condition().rank_range();
    let evens: Vec<u32> = (lo..=hi).filter(|r| r % 2 == 0).collect();
    let n = p.num_states();
    let sink = n * (1 + evens.len());
    let mut b = Automaton::new(format!("{}_buchi", a.name), p.alphabet().to_vec(), sink + 1, p.initial(), Condition::Buchi);
    for l in 0..b.num_letters() {
        b.add_transition(sink, l, sink, 1);
    }
    for t in p.transitions() {
        let r = t.ranks[0];
        b.add_transition(t.src, t.letter, t.dst, 1);
        for (i, &l) in evens.iter().enumerate() {
            let off = n * (1 + i);
            b.add_transition(t.src, t.letter, off + t.dst, 1);
            if r > l {
                b.add_transition(off + t.src, t.letter, sink, 1);
            } else {
                b.add_transition(off + t.src, t.letter, off + t.dst, if r == l { 2 } else { 1 });
            }
        }
    }
    Ok(b)
}
