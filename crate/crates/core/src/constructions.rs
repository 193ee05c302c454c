//! Automaton transformations: union power, Büchi-union flattening, the `[1,3]`
//! split, the `[0,2]` union-condition automaton and monitor composition.

use std::collections::HashMap;

use crate::automaton::{canonical_parity, Automaton, Condition, Ranks};
use crate::error::{Error, Result};
use crate::limits::limits;

/// Largest number of channels a union power may carry: one objective channel is
/// kept free for the monitor of the explorability game.
pub fn max_power_channels() -> usize {
    limits().channel_budget.saturating_sub(1)
}

/// Reachable part of `Q^k`, moving componentwise. Finite-word output accepts when
/// some component does; infinite-word output concatenates the components' rank
/// vectors and accepts when some channel accepts.
pub fn union_power(a: &Automaton, k: usize) -> Result<Automaton> {
    if k == 0 {
        return Err(Error::ZeroTokens);
    }
    let finite = a.condition().is_finite();
    let src = if finite { a.clone() } else { canonical_parity(a)? };
    let tc = src.channels();
    let channels = if finite { 1 } else { k * tc };
    if !finite && channels > max_power_channels() {
        return Err(Error::ChannelBudget {
            needed: channels,
            budget: max_power_channels(),
        });
    }
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples = vec![vec![src.initial(); k]];
    ids.insert(tuples[0].clone(), 0);
    let mut edges: Vec<(usize, usize, usize, Ranks)> = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let cur = tuples[i].clone();
        for l in 0..src.num_letters() {
            let mut moves: Vec<(Vec<usize>, Ranks)> = vec![(Vec::new(), Ranks::new())];
            for &q in &cur {
                moves = moves
                    .into_iter()
                    .flat_map(|(d, r)| {
                        src.successors(q, l).iter().map(move |e| {
                            let mut d = d.clone();
                            d.push(e.dst);
                            let mut r = r.clone();
                            r.extend_from_slice(&e.ranks);
                            (d, r)
                        })
                    })
                    .collect();
            }
            for (d, r) in moves {
                let n = tuples.len();
                let j = *ids.entry(d.clone()).or_insert_with(|| {
                    tuples.push(d);
                    n
                });
                edges.push((i, l, j, r));
            }
        }
        i += 1;
    }
    let mut out = Automaton::with_channels(
        format!("{}^{k}", a.name),
        src.alphabet().to_vec(),
        tuples.len(),
        0,
        src.condition(),
        channels,
    );
    for (s, l, d, r) in edges {
        if finite {
            out.add_transition(s, l, d, 0);
        } else {
            out.add_transition_ranks(s, l, d, r);
        }
    }
    if finite {
        for (s, t) in tuples.iter().enumerate() {
            out.set_accepting(s, t.iter().any(|&q| src.is_accepting(q)));
        }
    }
    Ok(out)
}

/// Single-channel Büchi automaton where a transition is accepting iff it is
/// accepting on some channel.
pub fn buchi_union_flatten(a: &Automaton) -> Result<Automaton> {
    let buchi = matches!(a.condition(), Condition::Buchi | Condition::Parity { lo: 1, hi: 2 });
    if !buchi {
        return Err(Error::NonBuchiChannel { channel: 0 });
    }
    if let Some(t) = a.transitions().find(|t| t.ranks.iter().any(|&r| r != 1 && r != 2)) {
        let channel = t.ranks.iter().position(|&r| r != 1 && r != 2).unwrap();
        return Err(Error::NonBuchiChannel { channel });
    }
    let mut out = Automaton::new(
        a.name.clone(),
        a.alphabet().to_vec(),
        a.num_states(),
        a.initial(),
        Condition::Buchi,
    );
    for t in a.transitions() {
        let r = if t.ranks.contains(&2) { 2 } else { 1 };
        out.add_transition(t.src, t.letter, t.dst, r);
    }
    Ok(out)
}

/// `[1,3]` parity automaton with the language of a `[1,d]` parity automaton: one
/// copy per even `l ≤ d` where ranks below `l` become 1, `l` becomes 2 and larger
/// ranks become 3. A fresh initial state (index 0) takes the first letter of every
/// copy; copy `i` occupies states `1 + i·n ..`. A rank range starting at 0 is
/// shifted up by 2 first.
pub fn to_13(a: &Automaton) -> Result<Automaton> {
    let p = canonical_parity(a)?;
    if p.channels() != 1 {
        return Err(Error::Invalid("to_13 needs a single channel".into()));
    }
    let (lo, hi) = p.condition().rank_range();
    let shift = if lo == 0 { 2 } else { 0 };
    let d = hi + shift;
    if d % 2 == 1 {
        return Err(Error::OddMaxRank(d));
    }
    let n = p.num_states();
    let copies: Vec<u32> = (1..=d).filter(|l| l % 2 == 0).collect();
    let mut out = Automaton::new(
        format!("{}_13", a.name),
        p.alphabet().to_vec(),
        1 + n * copies.len(),
        0,
        Condition::Parity { lo: 1, hi: 3 },
    );
    let map = |r: u32, l: u32| match (r + shift).cmp(&l) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 2,
        std::cmp::Ordering::Greater => 3,
    };
    for (i, &l) in copies.iter().enumerate() {
        let off = 1 + i * n;
        for t in p.transitions() {
            let r = map(t.ranks[0], l);
            out.add_transition(off + t.src, t.letter, off + t.dst, r);
            if t.src == p.initial() {
                out.add_transition(0, t.letter, off + t.dst, r);
            }
        }
    }
    Ok(out)
}

pub const MAX_CONDITION_WIDTH: usize = 3;

/// Letter of `[0,2]^k` for a rank vector, written as its digits.
pub fn rank_letter(ranks: &[u32]) -> String {
    ranks.iter().map(|r| r.to_string()).collect()
}

/// Deterministic `[0,2]` automaton over `[0,2]^k` accepting exactly the words in
/// which some component is `[0,2]`-accepting. A state is the set of components
/// that have shown a 1 since the last reset, as a bitmask.
pub fn union_condition_automaton_02(k: usize) -> Result<Automaton> {
    if !(1..=MAX_CONDITION_WIDTH).contains(&k) {
        return Err(Error::OutOfRange(format!("condition width {k}")));
    }
    let letters: Vec<Vec<u32>> = (0..3usize.pow(k as u32))
        .map(|mut code| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = (code % 3) as u32;
                code /= 3;
            }
            v
        })
        .collect();
    let alphabet = letters.iter().map(|v| rank_letter(v)).collect();
    let full = (1usize << k) - 1;
    let mut c = Automaton::new(format!("union02_{k}"), alphabet, 1 << k, 0, Condition::Parity { lo: 0, hi: 2 });
    for s in 0..=full {
        for (l, b) in letters.iter().enumerate() {
            let ones = b.iter().enumerate().fold(0, |m, (i, &x)| if x == 1 { m | 1 << i } else { m });
            if b.contains(&2) {
                c.add_transition(s, l, 0, 2);
            } else if s | ones == full {
                c.add_transition(s, l, 0, 1);
            } else {
                c.add_transition(s, l, s | ones, 0);
            }
        }
    }
    Ok(c)
}

/// Product where `c` reads the rank vectors emitted by `b`. The output has `b`'s
/// alphabet and `c`'s condition and ranks; state `(x, y)` is `x·|c| + y`.
pub fn compose_monitor(b: &Automaton, c: &Automaton) -> Result<Automaton> {
    let nc = c.num_states();
    let mut out = Automaton::new(
        format!("{}_{}", b.name, c.name),
        b.alphabet().to_vec(),
        b.num_states() * nc,
        b.initial() * nc + c.initial(),
        c.condition(),
    );
    for t in b.transitions() {
        let g = c.letter_index(&rank_letter(t.ranks)).ok_or(Error::AlphabetMismatch)?;
        for y in 0..nc {
            for e in c.successors(y, g) {
                out.add_transition(t.src * nc + y, t.letter, t.dst * nc + e.dst, e.rank());
            }
        }
    }
    Ok(out)
}
