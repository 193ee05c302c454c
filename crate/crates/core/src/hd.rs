//! Token games `G_k`: Adam plays a letter, Eve moves her token, then Adam moves
//! his k tokens. Eve wins if her run accepts or every one of Adam's runs rejects.
//! On explorable automata Eve wins `G_2` exactly when the automaton is
//! history-deterministic.

use crate::automaton::{canonical_parity, Automaton, Ranks};
use crate::error::{Error, Result};
use crate::explore::is_k_explorable;
use crate::game::{self, Arena, Objective, Player};
use crate::limits::limits;

pub const EVE: Player = Player::Zero;
pub const ADAM: Player = Player::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Eve,
    Adam,
}

/// Position `(tokens, phase)` where `tokens[0]` is Eve's token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Letter,
    EveMoves(usize),
    AdamMoves(usize),
}

#[derive(Debug, Clone)]
pub struct TokenGame {
    pub arena: Arena,
    pub objective: Objective,
    pub k: usize,
    /// Number of automaton states `n`; a token tuple is encoded in base `n`.
    pub states: usize,
    pub letters: usize,
}

impl TokenGame {
    /// Position index of `tokens` (Eve first) in `phase`.
    pub fn position(&self, tokens: &[usize], phase: Phase) -> usize {
        let letters = self.letters;
        let code = tokens.iter().fold(0, |acc, &q| acc * self.states + q);
        let offset = match phase {
            Phase::Letter => 0,
            Phase::EveMoves(l) => 1 + l,
            Phase::AdamMoves(l) => 1 + letters + l,
        };
        code * (1 + 2 * letters) + offset
    }
}

fn decode(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    out
}

/// Arena over every tuple in `Q^{k+1}`, each with a letter position and one Eve
/// and one Adam position per letter.
pub fn build_token_game(a: &Automaton, k: usize) -> Result<TokenGame> {
    if k == 0 {
        return Err(Error::ZeroTokens);
    }
    let t = canonical_parity(a)?;
    let (n, sigma, tc) = (t.num_states(), t.num_letters(), t.channels());
    let needed = (k + 1) * tc;
    let budget = limits().channel_budget;
    if needed > budget {
        return Err(Error::ChannelBudget { needed, budget });
    }
    let range = t.condition().rank_range();
    let lo = range.0;
    let mut arena = Arena::new(format!("g{k}_{}", a.name), vec![range; needed]);
    let tuples = n.pow(k as u32 + 1);
    let block = 1 + 2 * sigma;
    for _ in 0..tuples {
        arena.add_position(ADAM);
        for _ in 0..sigma {
            arena.add_position(EVE);
        }
        for _ in 0..sigma {
            arena.add_position(ADAM);
        }
    }
    let neutral: Ranks = std::iter::repeat_n(lo, needed).collect();
    let encode = |toks: &[usize]| toks.iter().fold(0, |acc, &q| acc * n + q);
    for code in 0..tuples {
        let toks = decode(code, n, k + 1);
        let base = code * block;
        for l in 0..sigma {
            arena.add_edge(base, base + 1 + l, neutral.clone());
            for e in t.successors(toks[0], l) {
                let mut next = toks.clone();
                next[0] = e.dst;
                let mut colors = neutral.clone();
                colors[..tc].copy_from_slice(&e.ranks);
                arena.add_edge(base + 1 + l, encode(&next) * block + 1 + sigma + l, colors);
            }
            let mut moves: Vec<(Vec<usize>, Ranks)> = vec![(vec![toks[0]], neutral[..tc].iter().copied().collect())];
            for &q in &toks[1..] {
                let mut next = Vec::new();
                for (d, r) in &moves {
                    for e in t.successors(q, l) {
                        let mut d = d.clone();
                        d.push(e.dst);
                        let mut r = r.clone();
                        r.extend_from_slice(&e.ranks);
                        next.push((d, r));
                    }
                }
                moves = next;
            }
            for (d, r) in moves {
                arena.add_edge(base + 1 + sigma + l, encode(&d) * block, r);
            }
        }
    }
    arena.initial = encode(&vec![t.initial(); k + 1]) * block;
    let eve = Objective::Or((0..tc).map(Objective::Atom).collect());
    let adam_all_reject = Objective::And((tc..needed).map(|c| Objective::not(Objective::Atom(c))).collect());
    Ok(TokenGame {
        arena,
        objective: Objective::Or(vec![eve, adam_all_reject]),
        k,
        states: n,
        letters: sigma,
    })
}

pub fn gk_winner(a: &Automaton, k: usize) -> Result<Winner> {
    let g = build_token_game(a, k)?;
    let r = game::solve(&g.arena, &g.objective);
    Ok(if r.wins(EVE, g.arena.initial) { Winner::Eve } else { Winner::Adam })
}

pub fn g2_winner(a: &Automaton) -> Result<Winner> {
    gk_winner(a, 2)
}

/// Evidence that the input is explorable, required by [`is_hd_assuming_explorable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// A token count, checked with the explorability game before use.
    Witness(usize),
    /// The caller vouches for explorability; nothing is checked.
    Unchecked,
}

/// History-determinism of an explorable automaton through `G_2`. Without
/// evidence of explorability the answer would not be meaningful, so `None` is an
/// error.
pub fn is_hd_assuming_explorable(a: &Automaton, evidence: Option<Evidence>, user_monitor: Option<&Automaton>) -> Result<bool> {
    match evidence {
        None => return Err(Error::UnverifiedExplorability),
        Some(Evidence::Witness(k)) => {
            if !is_k_explorable(a, k, user_monitor)? {
                return Err(Error::WitnessRejected(k));
            }
        }
        Some(Evidence::Unchecked) => {}
    }
    Ok(g2_winner(a)? == Winner::Eve)
}

/// History-determinism as 1-explorability.
pub fn is_hd_exact(a: &Automaton, user_monitor: Option<&Automaton>) -> Result<bool> {
    is_k_explorable(a, 1, user_monitor)
}
