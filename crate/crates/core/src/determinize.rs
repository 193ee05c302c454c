//! Deterministic monitors for the language of an automaton: subset construction
//! for finite words, breakpoint construction for coBüchi and safety, a subset-based
//! monitor for reachability, and validated user-supplied monitors otherwise.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{canonical_parity, complete, Automaton, Condition, Ranks};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::membership::{equivalent_on_lassos, equivalent_on_words, oracle_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Subset,
    Breakpoint,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Subset => "subset",
            Provenance::Breakpoint => "breakpoint",
            Provenance::UserSupplied => "user",
        })
    }
}

/// A complete deterministic automaton recognizing the language of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monitor {
    pub automaton: Automaton,
    pub provenance: Provenance,
}

impl Monitor {
    /// Text form: the automaton preceded by a `# provenance:` comment.
    pub fn to_text(&self) -> String {
        format!(
            "# provenance: {}\n{}",
            self.provenance,
            crate::format::print_automaton(&self.automaton)
        )
    }
}

/// Interns discovered macro-states and hands out ids in discovery order.
struct Interner<K> {
    ids: HashMap<K, usize>,
    order: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Interner<K> {
    fn new() -> Self {
        Interner {
            ids: HashMap::new(),
            order: Vec::new(),
        }
    }

    fn intern(&mut self, k: K) -> usize {
        if let Some(&id) = self.ids.get(&k) {
            return id;
        }
        let id = self.order.len();
        self.ids.insert(k.clone(), id);
        self.order.push(k);
        id
    }
}

/// Reachable subsets, states canonicalized as sorted id lists. Accepting subsets
/// are those meeting the accepting states.
pub fn subset_construction(a: &Automaton) -> Result<Monitor> {
    if !a.condition().is_finite() {
        return Err(Error::WrongCondition {
            expected: "a finite-word",
            found: a.condition().keyword(),
        });
    }
    let mut seen = Interner::new();
    seen.intern(vec![a.initial()]);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < seen.order.len() {
        let s = seen.order[i].clone();
        for letter in 0..a.num_letters() {
            let t = seen.intern(a.post(&s, letter));
            edges.push((i, letter, t));
        }
        i += 1;
    }
    if a.num_states() < usize::BITS as usize {
        assert!(seen.order.len() <= 1 << a.num_states());
    }
    let mut m = Automaton::new(
        format!("{}_subset", a.name),
        a.alphabet().to_vec(),
        seen.order.len(),
        0,
        Condition::Finite,
    );
    for (id, s) in seen.order.iter().enumerate() {
        m.set_accepting(id, s.iter().any(|&q| a.is_accepting(q)));
    }
    for (src, letter, dst) in edges {
        m.add_transition(src, letter, dst, 0);
    }
    Ok(Monitor {
        automaton: m,
        provenance: Provenance::Subset,
    })
}

/// Pair states `(S, B)` with `B ⊆ S`; `B` follows rank-0 transitions from the
/// last breakpoint and is reset to `S` (with a rank-1 transition) when it dies out.
pub fn breakpoint_construction(a: &Automaton) -> Result<Monitor> {
    let a = match a.condition() {
        Condition::CoBuchi | Condition::Parity { lo: 0, hi: 1 } | Condition::Parity { lo: 0, hi: 0 } => a.clone(),
        Condition::Safety => canonical_parity(a)?,
        other => {
            return Err(Error::WrongCondition {
                expected: "a coBüchi",
                found: other.keyword(),
            })
        }
    };
    if a.channels() != 1 {
        return Err(Error::Invalid("breakpoint construction needs a single channel".into()));
    }
    let mut seen = Interner::new();
    seen.intern((vec![a.initial()], vec![a.initial()]));
    let mut edges = Vec::new();
    let mut i = 0;
    while i < seen.order.len() {
        let (s, b) = seen.order[i].clone();
        for letter in 0..a.num_letters() {
            let s2 = a.post(&s, letter);
            let mut safe: Vec<usize> = b
                .iter()
                .flat_map(|&q| a.successors(q, letter).iter())
                .filter(|e| e.rank() == 0)
                .map(|e| e.dst)
                .collect();
            safe.sort_unstable();
            safe.dedup();
            let (b2, rank) = if safe.is_empty() {
                (s2.clone(), 1)
            } else {
                (safe, 0)
            };
            debug_assert!(b2.iter().all(|q| s2.binary_search(q).is_ok()));
            let t = seen.intern((s2, b2));
            edges.push((i, letter, t, rank));
        }
        i += 1;
    }
    if a.num_states() < 40 {
        assert!(seen.order.len() as u128 <= 3u128.pow(a.num_states() as u32));
    }
    let mut m = Automaton::new(
        format!("{}_breakpoint", a.name),
        a.alphabet().to_vec(),
        seen.order.len(),
        0,
        Condition::CoBuchi,
    );
    for (src, letter, dst, rank) in edges {
        m.add_transition(src, letter, dst, rank);
    }
    let bound = oracle_bound(a.num_letters(), limits().lasso_bound);
    let v = equivalent_on_lassos(&a, &m, bound)?;
    if let Some(w) = v.counterexample {
        return Err(Error::MonitorMismatch {
            counterexample: w.render(a.alphabet()),
            word: w,
        });
    }
    Ok(Monitor {
        automaton: m,
        provenance: Provenance::Breakpoint,
    })
}

/// Deterministic Büchi monitor for a reachability automaton: a subset
/// construction that moves to an accepting sink as soon as some run can take an
/// accepting transition.
pub fn reachability_monitor(a: &Automaton) -> Result<Monitor> {
    if a.condition() != Condition::Reachability || a.channels() != 1 {
        return Err(Error::WrongCondition {
            expected: "a single-channel reachability",
            found: a.condition().keyword(),
        });
    }
    let mut seen = Interner::new();
    // `None` is the accepting sink.
    seen.intern(Some(vec![a.initial()]));
    let mut edges = Vec::new();
    let mut i = 0;
    while i < seen.order.len() {
        let cur = seen.order[i].clone();
        for letter in 0..a.num_letters() {
            let (next, rank) = match &cur {
                None => (None, 2),
                Some(s) => {
                    let hits = s
                        .iter()
                        .any(|&q| a.successors(q, letter).iter().any(|e| e.rank() == 0));
                    if hits {
                        (None, 2)
                    } else {
                        (Some(a.post(s, letter)), 1)
                    }
                }
            };
            let t = seen.intern(next);
            edges.push((i, letter, t, rank));
        }
        i += 1;
    }
    let mut m = Automaton::new(
        format!("{}_reach", a.name),
        a.alphabet().to_vec(),
        seen.order.len(),
        0,
        Condition::Buchi,
    );
    for (src, letter, dst, rank) in edges {
        m.add_transition(src, letter, dst, rank);
    }
    Ok(Monitor {
        automaton: m,
        provenance: Provenance::Subset,
    })
}

/// Synchronous product of deterministic monitors; the result carries one rank
/// channel per factor and accepts when some factor accepts.
fn product_monitor(parts: &[Automaton]) -> Automaton {
    let alphabet = parts[0].alphabet().to_vec();
    let mut seen = Interner::new();
    seen.intern(parts.iter().map(|p| p.initial()).collect::<Vec<_>>());
    let mut edges = Vec::new();
    let mut i = 0;
    while i < seen.order.len() {
        let cur = seen.order[i].clone();
        for letter in 0..alphabet.len() {
            let mut next = Vec::with_capacity(parts.len());
            let mut ranks = Ranks::new();
            for (p, &q) in parts.iter().zip(&cur) {
                let e = p.step(q, letter);
                next.push(e.dst);
                ranks.push(e.rank());
            }
            let t = seen.intern(next);
            edges.push((i, letter, t, ranks));
        }
        i += 1;
    }
    let cond = parts[0].condition();
    let mut m = Automaton::with_channels("product", alphabet, seen.order.len(), 0, cond, parts.len());
    for (src, letter, dst, ranks) in edges {
        m.add_transition_ranks(src, letter, dst, ranks);
    }
    m
}

/// Picks the monitor for `a`: subset for finite words, breakpoint for safety and
/// coBüchi, the reachability monitor for reachability. Büchi and parity inputs need
/// `user`, which must be deterministic and agree with `a` on all lassos up to the
/// configured bound. Multi-channel coBüchi-like inputs get a product of per-channel
/// breakpoint monitors.
pub fn resolve_monitor(a: &Automaton, user: Option<&Automaton>) -> Result<Monitor> {
    if let Some(m) = user {
        return validate_user_monitor(a, m);
    }
    let cond = a.condition();
    match cond {
        Condition::Finite => subset_construction(a),
        Condition::Reachability => reachability_monitor(a),
        Condition::Safety | Condition::CoBuchi | Condition::Parity { lo: 0, hi: 1 } | Condition::Parity { lo: 0, hi: 0 } => {
            if a.channels() == 1 {
                breakpoint_construction(a)
            } else {
                let parts = (0..a.channels())
                    .map(|c| breakpoint_construction(&a.project_channel(c)).map(|m| m.automaton))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Monitor {
                    automaton: product_monitor(&parts),
                    provenance: Provenance::Breakpoint,
                })
            }
        }
        _ => Err(Error::MissingMonitor(cond.keyword())),
    }
}

fn validate_user_monitor(a: &Automaton, m: &Automaton) -> Result<Monitor> {
    if a.alphabet() != m.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !m.is_deterministic() {
        return Err(Error::NonDeterministicMonitor);
    }
    if a.condition().is_finite() != m.condition().is_finite() {
        return Err(Error::WrongCondition {
            expected: if a.condition().is_finite() { "a finite-word" } else { "an infinite-word" },
            found: m.condition().keyword(),
        });
    }
    let bound = limits().lasso_bound;
    let verdict = if a.condition().is_finite() {
        equivalent_on_words(a, m, bound)?
    } else {
        equivalent_on_lassos(a, m, oracle_bound(a.num_letters(), bound))?
    };
    if let Some(w) = verdict.counterexample {
        return Err(Error::MonitorMismatch {
            counterexample: w.render(a.alphabet()),
            word: w,
        });
    }
    let automaton = match m.condition() {
        Condition::Safety => canonical_parity(m)?,
        _ => complete(m),
    };
    Ok(Monitor {
        automaton,
        provenance: Provenance::UserSupplied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::member_finite;
    use crate::word::words_up_to;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn subset_of_deterministic_is_isomorphic() {
        let mut a = Automaton::new("d", ab(), 2, 0, Condition::Finite);
        a.add_transition(0, 0, 1, 0);
        a.add_transition(0, 1, 0, 0);
        a.add_transition(1, 0, 1, 0);
        a.add_transition(1, 1, 0, 0);
        a.set_accepting(1, true);
        let m = subset_construction(&a).unwrap().automaton;
        assert_eq!(m.num_states(), 2);
        assert!(m.is_deterministic());
        for w in words_up_to(2, 5) {
            assert_eq!(member_finite(&a, &w).unwrap(), member_finite(&m, &w).unwrap());
        }
    }

    #[test]
    fn breakpoint_of_eventually_a() {
        // Nondeterministic coBüchi automaton for "eventually only a".
        let mut a = Automaton::new("fg", ab(), 2, 0, Condition::CoBuchi);
        a.add_transition(0, 0, 0, 1);
        a.add_transition(0, 1, 0, 1);
        a.add_transition(0, 0, 1, 0);
        a.add_transition(1, 0, 1, 0);
        a.add_transition(1, 1, 1, 1);
        let m = breakpoint_construction(&a).unwrap();
        assert!(m.automaton.is_deterministic());
        assert!(m.automaton.num_states() <= 9);
        assert!(m.to_text().starts_with("# provenance: breakpoint\n"));
    }

    #[test]
    fn buchi_needs_user_monitor() {
        let mut a = Automaton::new("inf_a", ab(), 1, 0, Condition::Buchi);
        a.add_transition(0, 0, 0, 2);
        a.add_transition(0, 1, 0, 1);
        assert!(matches!(resolve_monitor(&a, None), Err(Error::MissingMonitor(_))));
        let ok = resolve_monitor(&a, Some(&a)).unwrap();
        assert_eq!(ok.provenance, Provenance::UserSupplied);
        let mut bad = Automaton::new("wrong", ab(), 1, 0, Condition::Buchi);
        bad.add_transition(0, 0, 0, 2);
        bad.add_transition(0, 1, 0, 2);
        match resolve_monitor(&a, Some(&bad)) {
            Err(Error::MonitorMismatch { counterexample, .. }) => assert_eq!(counterexample, "(b)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reachability_monitor_accepts_after_hit() {
        let mut a = Automaton::new("reach_b", ab(), 1, 0, Condition::Reachability);
        a.add_transition(0, 0, 0, 1);
        a.add_transition(0, 1, 0, 0);
        let m = resolve_monitor(&a, None).unwrap().automaton;
        assert!(m.accepts_lasso_str("aaab(a)").unwrap());
        assert!(!m.accepts_lasso_str("(a)").unwrap());
    }
}
