//! Population control: Spoiler wins the k-population game by herding every token
//! into a target state. Explorability of an NFA reduces to it through a
//! subset-tracking product, and the product with the non-explorable NFA `C`
//! reduces it back.

use std::collections::HashMap;

use crate::automaton::{complete, Automaton, Condition};
use crate::error::{Error, Result};
use crate::explore::{build_safety_game, ExplorationGame, SafetyGameSpec, TokenMode};
use crate::generators::gen_c;

pub const TEST_LETTER: &str = "a_test";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcpInstance {
    pub nfa: Automaton,
    pub target: usize,
}

impl PcpInstance {
    pub fn new(nfa: Automaton, target: usize) -> Result<Self> {
        if target >= nfa.num_states() {
            return Err(Error::OutOfRange(format!("target state {target}")));
        }
        Ok(PcpInstance { nfa, target })
    }
}

/// Instance whose population game Determiniser wins exactly when `a` is
/// k-explorable. States are reachable pairs `(p, X)` (a run's state and the
/// reachable set), followed by the target and a rejecting sink.
pub fn pcp_reduce(a: &Automaton) -> Result<PcpInstance> {
    if !a.condition().is_finite() {
        return Err(Error::WrongCondition {
            expected: "a finite-word",
            found: a.condition().keyword(),
        });
    }
    let a = complete(a);
    let sigma = a.num_letters();
    let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut pairs = vec![(a.initial(), vec![a.initial()])];
    ids.insert(pairs[0].clone(), 0);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, x) = pairs[i].clone();
        for l in 0..sigma {
            let x2 = a.post(&x, l);
            for e in a.successors(p, l) {
                let key = (e.dst, x2.clone());
                let n = pairs.len();
                let j = *ids.entry(key.clone()).or_insert_with(|| {
                    pairs.push(key);
                    n
                });
                edges.push((i, l, j));
            }
        }
        i += 1;
    }
    let n = pairs.len();
    let (target, sink) = (n, n + 1);
    let mut alphabet = a.alphabet().to_vec();
    alphabet.push(TEST_LETTER.to_string());
    let mut b = Automaton::new(format!("pcp_{}", a.name), alphabet, n + 2, 0, Condition::Finite);
    for (s, l, d) in edges {
        b.add_transition(s, l, d, 0);
    }
    for (s, (p, x)) in pairs.iter().enumerate() {
        let hit = !a.is_accepting(*p) && x.iter().any(|&q| a.is_accepting(q));
        b.add_transition(s, sigma, if hit { target } else { sink }, 0);
    }
    for l in 0..=sigma {
        b.add_transition(target, l, target, 0);
        b.add_transition(sink, l, sink, 0);
    }
    PcpInstance::new(b, target)
}

/// The k-population game as a safety game for Determiniser: avoid every
/// configuration with all tokens on the target. Missing transitions lead to a
/// fresh non-target sink.
pub fn population_game(p: &PcpInstance, k: usize) -> Result<ExplorationGame> {
    if k == 0 {
        return Err(Error::ZeroTokens);
    }
    let nfa = complete(&p.nfa);
    let target = p.target;
    let bad = |toks: &[usize], _: usize| toks.iter().all(|&q| q == target);
    Ok(build_safety_game(SafetyGameSpec {
        name: format!("population{k}_{}", nfa.name),
        tokens: &nfa,
        k,
        mode: TokenMode::Multiset,
        monitor: None,
        bad: &bad,
    }))
}

/// Whether Determiniser wins the k-population game.
pub fn is_k_population_winnable(p: &PcpInstance, k: usize) -> Result<bool> {
    Ok(population_game(p, k)?.determiniser_wins())
}

/// NFA over pairs of letters `x/y` that is k-explorable iff Determiniser wins the
/// k-population game of `p`: the product of `p.nfa` (accepting off the target)
/// with `C`, accepting when either side accepts.
pub fn pcp_to_explorability(p: &PcpInstance) -> Result<Automaton> {
    let b = complete(&p.nfa);
    let t = p.target;
    if (0..b.num_letters()).any(|l| b.successors(t, l).iter().any(|e| e.dst != t)) {
        return Err(Error::NonSinkTarget(t));
    }
    let c = gen_c();
    let nc = c.num_states();
    let mut alphabet = Vec::new();
    for x in b.alphabet() {
        for y in c.alphabet() {
            alphabet.push(format!("{x}/{y}"));
        }
    }
    let ny = c.num_letters();
    let mut out = Automaton::new(
        format!("{}_x_c", b.name),
        alphabet,
        b.num_states() * nc,
        b.initial() * nc + c.initial(),
        Condition::Finite,
    );
    for q in 0..b.num_states() {
        for qc in 0..nc {
            let s = q * nc + qc;
            out.set_accepting(s, q != t || c.is_accepting(qc));
            for x in 0..b.num_letters() {
                for y in 0..ny {
                    for e in b.successors(q, x) {
                        for f in c.successors(qc, y) {
                            out.add_transition(s, x * ny + y, e.dst * nc + f.dst, 0);
                        }
                    }
                }
            }
        }
    }
    Ok(out.trim())
}
