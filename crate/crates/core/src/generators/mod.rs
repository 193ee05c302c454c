//! Fixture families: the token-counting NFAs `A_k` and `B_k`, the non-explorable
//! NFA `C`, the two safety automata separating explorability notions, and the
//! alternating Turing machine reduction.

pub mod atm;

use crate::automaton::{complete, Automaton, Condition};

fn letters(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `p0 -a-> p_i` for `i = 1..k`, `p_i -a_i-> p_f`, with `p_f` accepting and a
/// rejecting sink added by completion. k-explorable but not (k-1)-explorable.
pub fn gen_ak(k: usize) -> Automaton {
    assert!(k >= 1);
    let mut alphabet = vec!["a".to_string()];
    alphabet.extend((1..=k).map(|i| format!("a{i}")));
    let pf = k + 1;
    let mut a = Automaton::new(format!("a{k}"), alphabet, k + 2, 0, Condition::Finite);
    for i in 1..=k {
        a.add_transition(0, 0, i, 0);
        a.add_transition(i, i, pf, 0);
    }
    a.set_accepting(pf, true);
    complete(&a)
}

/// The four-state NFA over `{a, b}` accepting every word that Spoiler can still
/// beat with any number of tokens.
pub fn gen_c() -> Automaton {
    let mut c = Automaton::new("c", letters(&["a", "b"]), 4, 0, Condition::Finite);
    for l in 0..2 {
        c.add_transition(0, l, 1, 0);
        c.add_transition(0, l, 2, 0);
        c.add_transition(3, l, 3, 0);
    }
    c.add_transition(1, 0, 0, 0);
    c.add_transition(1, 1, 3, 0);
    c.add_transition(2, 1, 0, 0);
    c.add_transition(2, 0, 3, 0);
    for q in 0..3 {
        c.set_accepting(q, true);
    }
    c
}

/// Chain of `k` diamonds `q_{i-1} -Σ-> p_i, r_i`, `p_i -a-> q_i`, `r_i -b-> q_i`
/// with `q_k` accepting: `3k+1` states plus a sink. Needs exactly `2^k` tokens.
pub fn gen_bk(k: usize) -> Automaton {
    assert!(k >= 1);
    let mut b = Automaton::new(format!("b{k}"), letters(&["a", "b"]), 3 * k + 1, 0, Condition::Finite);
    for i in 1..=k {
        let (q, p, r, q2) = (3 * (i - 1), 3 * i - 2, 3 * i - 1, 3 * i);
        for l in 0..2 {
            b.add_transition(q, l, p, 0);
            b.add_transition(q, l, r, 0);
        }
        b.add_transition(p, 0, q2, 0);
        b.add_transition(r, 1, q2, 0);
    }
    b.set_accepting(3 * k, true);
    complete(&b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fig4Side {
    /// ω-explorable but not explorable.
    Left,
    /// Not ω-explorable.
    Right,
}

/// The two three-state safety automata over `{a, b}`; all drawn transitions are
/// safe and completion adds the rejecting sink.
pub fn gen_fig4(side: Fig4Side) -> Automaton {
    let name = match side {
        Fig4Side::Left => "fig4_left",
        Fig4Side::Right => "fig4_right",
    };
    let mut s = Automaton::new(name, letters(&["a", "b"]), 3, 0, Condition::Safety);
    match side {
        Fig4Side::Left => {
            s.add_transition(0, 0, 0, 0);
            s.add_transition(0, 0, 1, 0);
            s.add_transition(1, 1, 2, 0);
            s.add_transition(2, 0, 2, 0);
            s.add_transition(2, 1, 2, 0);
        }
        Fig4Side::Right => {
            s.add_transition(0, 0, 1, 0);
            s.add_transition(0, 0, 2, 0);
            s.add_transition(1, 0, 0, 0);
            s.add_transition(2, 1, 0, 0);
        }
    }
    complete(&s)
}
