//! The k-explorability game: Spoiler picks letters, Determiniser moves k tokens,
//! and Determiniser must keep a token on an accepting run whenever the word played
//! is in the language.
//!
//! Finite-word inputs give a safety game on token multisets, solved by an
//! attractor. Infinite-word inputs keep tokens as tuples (a token's run is tracked
//! through its slot) and carry the monitor's and every token's ranks as separate
//! color channels.

pub mod pcp;

use std::collections::{BTreeSet, HashMap};

use smallvec::SmallVec;

use crate::automaton::{canonical_parity, complete, Automaton, Condition, Ranks};
use crate::determinize::{resolve_monitor, Monitor};
use crate::error::{Error, Result};
use crate::game::{self, Arena, Objective, Player, SolveResult, Strategy};
use crate::limits::limits;

/// Spoiler owns letter choices, Determiniser owns token moves.
pub const SPOILER: Player = Player::One;
pub const DETERMINISER: Player = Player::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenMode {
    /// Sorted token lists; tokens are interchangeable.
    Multiset,
    /// Token `i` always sits in slot `i`.
    Tuple,
}

/// What a position of the game stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    /// Spoiler to pick a letter.
    Letter { tokens: Vec<usize>, monitor: usize },
    /// Determiniser to move the tokens after `letter`.
    Move { tokens: Vec<usize>, monitor: usize, letter: usize },
}

#[derive(Debug, Clone)]
pub struct ExplorationGame {
    pub arena: Arena,
    pub objective: Objective,
    pub labels: Vec<Label>,
    pub k: usize,
    /// Losing positions of the safety reformulation (finite words only).
    pub bad: Option<Vec<bool>>,
}

impl ExplorationGame {
    pub fn solve(&self) -> SolveResult {
        match &self.bad {
            Some(bad) => game::solve_safety(&self.arena, bad),
            None => game::solve(&self.arena, &self.objective),
        }
    }

    /// Whether Determiniser wins from the initial position.
    pub fn determiniser_wins(&self) -> bool {
        self.solve().wins(DETERMINISER, self.arena.initial)
    }
}

fn normalize(mut tokens: Vec<usize>, mode: TokenMode) -> Vec<usize> {
    if mode == TokenMode::Multiset {
        tokens.sort_unstable();
    }
    tokens
}

/// Every way of moving the tokens on `letter`, with the concatenated token ranks.
fn token_moves(a: &Automaton, tokens: &[usize], letter: usize) -> Vec<(Vec<usize>, Ranks)> {
    let mut out: Vec<(Vec<usize>, Ranks)> = vec![(Vec::new(), SmallVec::new())];
    for &q in tokens {
        let succ = a.successors(q, letter);
        let mut next = Vec::with_capacity(out.len() * succ.len());
        for (dsts, ranks) in &out {
            for e in succ {
                let mut d = dsts.clone();
                d.push(e.dst);
                let mut r = ranks.clone();
                r.extend_from_slice(&e.ranks);
                next.push((d, r));
            }
        }
        out = next;
    }
    out
}

/// Builder shared by the explorability and population games: BFS over Spoiler
/// positions `(tokens, monitor)` with one Determiniser micro-position per letter.
pub(crate) struct SafetyGameSpec<'a> {
    pub name: String,
    pub tokens: &'a Automaton,
    pub k: usize,
    pub mode: TokenMode,
    /// Deterministic automaton advanced alongside the tokens, if any.
    pub monitor: Option<&'a Automaton>,
    pub bad: &'a dyn Fn(&[usize], usize) -> bool,
}

pub(crate) fn build_safety_game(spec: SafetyGameSpec) -> ExplorationGame {
    let a = spec.tokens;
    let mut arena = Arena::new(spec.name, vec![(0, 1)]);
    let mut labels = Vec::new();
    let mut bad = Vec::new();
    let mut index: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let m0 = spec.monitor.map_or(0, |m| m.initial());
    let start = (normalize(vec![a.initial(); spec.k], spec.mode), m0);
    let mut queue = vec![start.clone()];
    index.insert(start, 0);
    arena.add_position(SPOILER);
    labels.push(Label::Letter {
        tokens: queue[0].0.clone(),
        monitor: m0,
    });
    bad.push(false);
    let mut head = 0;
    while head < queue.len() {
        let (tokens, m) = queue[head].clone();
        let v = index[&(tokens.clone(), m)];
        head += 1;
        if (spec.bad)(&tokens, m) {
            bad[v] = true;
            arena.add_edge1(v, v, 1);
            continue;
        }
        for letter in 0..a.num_letters() {
            let micro = arena.add_position(DETERMINISER);
            labels.push(Label::Move {
                tokens: tokens.clone(),
                monitor: m,
                letter,
            });
            bad.push(false);
            arena.add_edge1(v, micro, 0);
            let m2 = spec.monitor.map_or(0, |mon| mon.step(m, letter).dst);
            let outcomes: BTreeSet<Vec<usize>> = token_moves(a, &tokens, letter)
                .into_iter()
                .map(|(d, _)| normalize(d, spec.mode))
                .collect();
            for d in outcomes {
                let key = (d, m2);
                let w = match index.get(&key) {
                    Some(&w) => w,
                    None => {
                        let w = arena.add_position(SPOILER);
                        labels.push(Label::Letter {
                            tokens: key.0.clone(),
                            monitor: m2,
                        });
                        bad.push(false);
                        index.insert(key.clone(), w);
                        queue.push(key);
                        w
                    }
                };
                arena.add_edge1(micro, w, 0);
            }
        }
    }
    ExplorationGame {
        arena,
        objective: Objective::Atom(0),
        labels,
        k: spec.k,
        bad: Some(bad),
    }
}

/// Parity view of a monitor's automaton.
fn monitor_parity(m: &Monitor) -> Result<Automaton> {
    match m.automaton.condition() {
        Condition::Safety | Condition::Reachability => canonical_parity(&m.automaton),
        _ => Ok(complete(&m.automaton)),
    }
}

fn build_infinite(a: &Automaton, monitor: &Monitor, k: usize) -> Result<ExplorationGame> {
    let tokens = canonical_parity(a)?.trim();
    let mon = monitor_parity(monitor)?;
    let (mc, tc) = (mon.channels(), tokens.channels());
    let needed = mc + k * tc;
    let budget = limits().channel_budget;
    if needed > budget {
        return Err(Error::ChannelBudget { needed, budget });
    }
    let mut channels = vec![mon.condition().rank_range(); mc];
    channels.extend(std::iter::repeat_n(tokens.condition().rank_range(), k * tc));
    let neutral: Ranks = channels.iter().map(|&(lo, _)| lo).collect();
    let mut arena = Arena::new(format!("explore{k}_{}", a.name), channels);
    let mut labels = Vec::new();
    let mut index: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let start = (vec![tokens.initial(); k], mon.initial());
    arena.add_position(SPOILER);
    labels.push(Label::Letter {
        tokens: start.0.clone(),
        monitor: start.1,
    });
    index.insert(start.clone(), 0);
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let (toks, m) = queue[head].clone();
        let v = index[&(toks.clone(), m)];
        head += 1;
        for letter in 0..tokens.num_letters() {
            let micro = arena.add_position(DETERMINISER);
            labels.push(Label::Move {
                tokens: toks.clone(),
                monitor: m,
                letter,
            });
            arena.add_edge(v, micro, neutral.clone());
            let me = mon.step(m, letter);
            let mut seen = BTreeSet::new();
            for (d, ranks) in token_moves(&tokens, &toks, letter) {
                let mut colors: Ranks = me.ranks.clone();
                colors.extend_from_slice(&ranks);
                if !seen.insert((d.clone(), colors.clone())) {
                    continue;
                }
                let key = (d, me.dst);
                let w = match index.get(&key) {
                    Some(&w) => w,
                    None => {
                        let w = arena.add_position(SPOILER);
                        labels.push(Label::Letter {
                            tokens: key.0.clone(),
                            monitor: key.1,
                        });
                        index.insert(key.clone(), w);
                        queue.push(key);
                        w
                    }
                };
                arena.add_edge(micro, w, colors);
            }
        }
    }
    let word_in_language = Objective::Or((0..mc).map(Objective::Atom).collect());
    let mut disjuncts = vec![Objective::not(word_in_language)];
    disjuncts.extend((mc..needed).map(Objective::Atom));
    Ok(ExplorationGame {
        arena,
        objective: Objective::Or(disjuncts),
        labels,
        k,
        bad: None,
    })
}

/// The k-explorability game of `a` against `monitor`. `Multiset` is only
/// available for finite-word inputs.
pub fn build_k_explorability_game(a: &Automaton, monitor: &Monitor, k: usize, mode: TokenMode) -> Result<ExplorationGame> {
    if k == 0 {
        return Err(Error::ZeroTokens);
    }
    if !a.condition().is_finite() {
        if mode == TokenMode::Multiset {
            return Err(Error::Invalid(
                "token multisets lose track of individual runs on infinite words".into(),
            ));
        }
        return build_infinite(a, monitor, k);
    }
    let tokens = complete(a);
    let mon = complete(&monitor.automaton);
    let bad = |toks: &[usize], m: usize| mon.is_accepting(m) && !toks.iter().any(|&q| tokens.is_accepting(q));
    Ok(build_safety_game(SafetyGameSpec {
        name: format!("explore{k}_{}", a.name),
        tokens: &tokens,
        k,
        mode,
        monitor: Some(&mon),
        bad: &bad,
    }))
}

pub fn is_k_explorable_with(a: &Automaton, monitor: &Monitor, k: usize, mode: TokenMode) -> Result<bool> {
    Ok(build_k_explorability_game(a, monitor, k, mode)?.determiniser_wins())
}

fn default_mode(a: &Automaton) -> TokenMode {
    if a.condition().is_finite() {
        TokenMode::Multiset
    } else {
        TokenMode::Tuple
    }
}

/// Whether Determiniser wins the k-explorability game of `a`.
pub fn is_k_explorable(a: &Automaton, k: usize, user_monitor: Option<&Automaton>) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroTokens);
    }
    let monitor = resolve_monitor(a, user_monitor)?;
    is_k_explorable_with(a, &monitor, k, default_mode(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplorabilityStatus {
    ExplorableWith(usize),
    /// Inconclusive: Spoiler wins every level up to the bound.
    NotExplorableUpTo(usize),
}

#[derive(Debug, Clone)]
pub struct ExplorabilityVerdict {
    pub status: ExplorabilityStatus,
    /// Verdict at each level tried, in order.
    pub levels: Vec<(usize, bool)>,
    /// Determiniser's strategy at the first winning level.
    pub witness: Option<Strategy>,
}

/// Tries k = 1..=kmax and stops at the first level Determiniser wins.
pub fn explorability_bounded(a: &Automaton, kmax: usize, user_monitor: Option<&Automaton>) -> Result<ExplorabilityVerdict> {
    if kmax == 0 {
        return Err(Error::ZeroTokens);
    }
    let monitor = resolve_monitor(a, user_monitor)?;
    let mut levels = Vec::new();
    for k in 1..=kmax {
        let g = build_k_explorability_game(a, &monitor, k, default_mode(a))?;
        let r = g.solve();
        let won = r.wins(DETERMINISER, g.arena.initial);
        levels.push((k, won));
        if won {
            let [w, _] = r.strategies;
            return Ok(ExplorabilityVerdict {
                status: ExplorabilityStatus::ExplorableWith(k),
                levels,
                witness: Some(w),
            });
        }
    }
    Ok(ExplorabilityVerdict {
        status: ExplorabilityStatus::NotExplorableUpTo(kmax),
        levels,
        witness: None,
    })
}

/// Union of two automata over the same alphabet: disjoint copies and a fresh
/// initial state carrying both initial states' outgoing transitions.
pub fn disjoint_union(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.channels() != b.channels() {
        return Err(Error::Invalid("channel counts differ".into()));
    }
    let (a, b, cond) = if a.condition().is_finite() && b.condition().is_finite() {
        (complete(a), complete(b), Condition::Finite)
    } else if a.condition() == b.condition() && !matches!(a.condition(), Condition::Safety | Condition::Reachability) {
        (a.clone(), b.clone(), a.condition())
    } else if a.condition().is_finite() || b.condition().is_finite() {
        return Err(Error::WrongCondition {
            expected: "matching word types",
            found: format!("{} and {}", a.condition(), b.condition()),
        });
    } else {
        let (a, b) = (canonical_parity(a)?, canonical_parity(b)?);
        let (la, ha) = a.condition().rank_range();
        let (lb, hb) = b.condition().rank_range();
        (a, b, Condition::Parity { lo: la.min(lb), hi: ha.max(hb) })
    };
    let (na, nb) = (a.num_states(), b.num_states());
    let mut u = Automaton::with_channels(
        format!("{}+{}", a.name, b.name),
        a.alphabet().to_vec(),
        na + nb + 1,
        na + nb,
        cond,
        a.channels(),
    );
    for (src, off) in [(&a, 0), (&b, na)] {
        for t in src.transitions() {
            u.add_transition_ranks(t.src + off, t.letter, t.dst + off, t.ranks.clone());
            if t.src == src.initial() {
                u.add_transition_ranks(na + nb, t.letter, t.dst + off, t.ranks.clone());
            }
        }
        for q in src.accepting_states() {
            u.set_accepting(q + off, true);
        }
    }
    let init = na + nb;
    u.set_accepting(init, a.is_accepting(a.initial()) || b.is_accepting(b.initial()));
    Ok(u)
}

/// Upper bound on the positions of the finite-word game with token multisets.
pub fn multiset_position_bound(states: usize, k: usize, monitor_states: usize, letters: usize) -> usize {
    binomial(states + k - 1, k) * monitor_states * (1 + letters)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_ak, gen_bk, gen_c};

    #[test]
    fn ak_needs_k_tokens() {
        let a = gen_ak(2);
        assert!(!is_k_explorable(&a, 1, None).unwrap());
        assert!(is_k_explorable(&a, 2, None).unwrap());
    }

    #[test]
    fn c_is_not_explorable_at_small_k() {
        let v = explorability_bounded(&gen_c(), 3, None).unwrap();
        assert_eq!(v.status, ExplorabilityStatus::NotExplorableUpTo(3));
        assert!(v.levels.iter().all(|&(_, w)| !w));
    }

    #[test]
    fn tuples_and_multisets_agree() {
        for a in [gen_ak(2), gen_bk(1), gen_c()] {
            let m = resolve_monitor(&a, None).unwrap();
            for k in 1..=2 {
                assert_eq!(
                    is_k_explorable_with(&a, &m, k, TokenMode::Multiset).unwrap(),
                    is_k_explorable_with(&a, &m, k, TokenMode::Tuple).unwrap(),
                    "{} k={k}",
                    a.name
                );
            }
        }
    }

    #[test]
    fn position_bound_holds() {
        let b = gen_bk(2);
        let m = resolve_monitor(&b, None).unwrap();
        for k in 1..=4 {
            let g = build_k_explorability_game(&b, &m, k, TokenMode::Multiset).unwrap();
            let bound = multiset_position_bound(b.num_states(), k, m.automaton.num_states(), b.num_letters());
            assert!(g.arena.num_positions() <= bound);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 3), 1);
    }

    #[test]
    fn zero_tokens_rejected() {
        assert_eq!(is_k_explorable(&gen_c(), 0, None), Err(Error::ZeroTokens));
    }
}
