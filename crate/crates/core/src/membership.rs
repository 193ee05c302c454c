//! Word membership and the bounded language-equivalence oracle.

use crate::automaton::{canonical_parity, Automaton, Condition};
use crate::error::{Error, Result};
use crate::graph::{reachable, WeightedGraph};
use crate::par;
use crate::word::{lassos_up_to, words_of_length, LassoWord, Word};

fn check_letters(a: &Automaton, letters: impl IntoIterator<Item = usize>) -> Result<()> {
    for l in letters {
        if l >= a.num_letters() {
            return Err(Error::LetterOutOfRange(l));
        }
    }
    Ok(())
}

/// Does some run of the finite-word automaton on `w` end in an accepting state?
pub fn member_finite(a: &Automaton, w: &[usize]) -> Result<bool> {
    if !a.condition().is_finite() {
        return Err(Error::WrongCondition {
            expected: "a finite-word",
            found: a.condition().keyword(),
        });
    }
    check_letters(a, w.iter().copied())?;
    let mut current = vec![a.initial()];
    for &l in w {
        current = a.post(&current, l);
        if current.is_empty() {
            return Ok(false);
        }
    }
    Ok(current.iter().any(|&q| a.is_accepting(q)))
}

/// Infinite-word automaton normalized for lasso evaluation: one single-channel
/// parity automaton per channel, accepting iff any of them accepts.
#[derive(Debug, Clone)]
pub struct LassoChecker {
    parts: Vec<Automaton>,
    letters: usize,
}

impl LassoChecker {
    pub fn new(a: &Automaton) -> Result<Self> {
        if a.condition().is_finite() {
            return Err(Error::WrongCondition {
                expected: "an infinite-word",
                found: "finite".into(),
            });
        }
        let parts = (0..a.channels())
            .map(|c| {
                let proj = if a.channels() == 1 {
                    a.clone()
                } else {
                    a.project_channel(c)
                };
                canonical_parity(&proj)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LassoChecker {
            parts,
            letters: a.num_letters(),
        })
    }

    pub fn accepts(&self, w: &LassoWord) -> Result<bool> {
        for l in w.letters() {
            if l >= self.letters {
                return Err(Error::LetterOutOfRange(l));
            }
        }
        Ok(self.parts.iter().any(|p| parity_accepts_lasso(p, w)))
    }
}

/// Unrolls `w` into `|prefix| + |period|` positions, builds the run graph, and
/// looks for a reachable cycle whose maximal rank is even.
fn parity_accepts_lasso(a: &Automaton, w: &LassoWord) -> bool {
    let (lo, hi) = a.condition().as_parity().expect("parity condition");
    let len = w.len();
    let start = w.prefix.len();
    let n = a.num_states();
    let node = |q: usize, i: usize| q * len + i;
    let mut adj = vec![Vec::new(); n * len];
    let mut edges = Vec::new();
    for q in 0..n {
        for i in 0..len {
            let next = if i + 1 == len { start } else { i + 1 };
            let letter = w.letter_at(i);
            for e in a.successors(q, letter) {
                adj[node(q, i)].push(node(e.dst, next));
                edges.push((node(q, i), node(e.dst, next), e.rank()));
            }
        }
    }
    let live = reachable(&adj, &[node(a.initial(), 0)]);
    let graph = WeightedGraph {
        nodes: n * len,
        edges,
    };
    (lo..=hi)
        .filter(|r| r % 2 == 0)
        .any(|r| graph.cycle_with_max_weight(&live, r))
}

/// Does an accepting run on the lasso exist?
pub fn member_lasso(a: &Automaton, w: &LassoWord) -> Result<bool> {
    LassoChecker::new(a)?.accepts(w)
}

/// Number of lassos the bounded oracle may enumerate before the bound is lowered.
pub const LASSO_BUDGET: usize = 250_000;

/// Largest bound `≤ bound` whose lasso count over `letters` letters fits
/// [`LASSO_BUDGET`] (at least 1).
pub fn oracle_bound(letters: usize, bound: usize) -> usize {
    let mut total = 0usize;
    let mut best = 1;
    for t in 1..=bound {
        let count = letters.saturating_pow(t as u32).saturating_mul(t);
        total = total.saturating_add(count);
        if total > LASSO_BUDGET {
            break;
        }
        best = t;
    }
    best
}

/// Outcome of a bounded equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub counterexample: Option<Word>,
}

impl EquivalenceVerdict {
    fn from_counterexample(cx: Option<Word>) -> Self {
        EquivalenceVerdict {
            equivalent: cx.is_none(),
            counterexample: cx,
        }
    }
}

/// Compares the two automata on every lasso with `|prefix| + |period| ≤ bound` and
/// reports the first disagreement in enumeration order. Exact only up to the bound.
pub fn equivalent_on_lassos(a: &Automaton, b: &Automaton, bound: usize) -> Result<EquivalenceVerdict> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let ca = LassoChecker::new(a)?;
    let cb = LassoChecker::new(b)?;
    let letters = a.num_letters();
    for total in 1..=bound {
        for plen in 0..total {
            let batch: Vec<LassoWord> = words_of_length(letters, total)
                .map(|w| LassoWord {
                    prefix: w[..plen].to_vec(),
                    period: w[plen..].to_vec(),
                })
                .collect();
            let hit = par::find_first(&batch, |w| {
                ca.accepts(w).unwrap_or(false) != cb.accepts(w).unwrap_or(false)
            });
            if let Some(i) = hit {
                return Ok(EquivalenceVerdict::from_counterexample(Some(Word::Lasso(
                    batch[i].clone(),
                ))));
            }
        }
    }
    Ok(EquivalenceVerdict::from_counterexample(None))
}

/// Sequential reference version of [`equivalent_on_lassos`].
pub fn equivalent_on_lassos_seq(a: &Automaton, b: &Automaton, bound: usize) -> Result<EquivalenceVerdict> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let ca = LassoChecker::new(a)?;
    let cb = LassoChecker::new(b)?;
    for w in lassos_up_to(a.num_letters(), bound) {
        if ca.accepts(&w)? != cb.accepts(&w)? {
            return Ok(EquivalenceVerdict::from_counterexample(Some(Word::Lasso(w))));
        }
    }
    Ok(EquivalenceVerdict::from_counterexample(None))
}

/// Finite-word counterpart: compares membership of every word of length `≤ max_len`.
pub fn equivalent_on_words(a: &Automaton, b: &Automaton, max_len: usize) -> Result<EquivalenceVerdict> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    for len in 0..=max_len {
        for w in words_of_length(a.num_letters(), len) {
            if member_finite(a, &w)? != member_finite(b, &w)? {
                return Ok(EquivalenceVerdict::from_counterexample(Some(Word::Finite(w))));
            }
        }
    }
    Ok(EquivalenceVerdict::from_counterexample(None))
}

/// Runs a deterministic single-channel parity automaton on a lasso by direct
/// simulation: iterate period blocks until the (state, period-start) pair repeats,
/// then take the maximal rank on the cycle.
pub fn simulate_deterministic_lasso(a: &Automaton, w: &LassoWord) -> bool {
    assert!(a.is_deterministic());
    let a = canonical_parity(a).expect("infinite-word automaton");
    let mut q = a.initial();
    for &l in &w.prefix {
        q = a.step(q, l).dst;
    }
    let mut seen = vec![usize::MAX; a.num_states()];
    let mut block_max = Vec::new();
    let mut block = 0;
    loop {
        if seen[q] != usize::MAX {
            let from = seen[q];
            let m = block_max[from..].iter().copied().max().unwrap();
            return m % 2 == 0;
        }
        seen[q] = block;
        let mut m = 0;
        for &l in &w.period {
            let e = a.step(q, l);
            m = m.max(e.rank());
            q = e.dst;
        }
        block_max.push(m);
        block += 1;
    }
}

impl Automaton {
    /// Convenience wrapper for [`member_lasso`] taking a `u(v)` string.
    pub fn accepts_lasso_str(&self, text: &str) -> Result<bool> {
        let w = LassoWord::parse(text, self.alphabet())?;
        member_lasso(self, &w)
    }
}

/// Condition-aware membership for either kind of automaton.
pub fn member(a: &Automaton, w: &Word) -> Result<bool> {
    match (w, a.condition()) {
        (Word::Finite(f), Condition::Finite) => member_finite(a, f),
        (Word::Lasso(l), c) if !c.is_finite() => member_lasso(a, l),
        _ => Err(Error::WrongCondition {
            expected: "a word kind matching the automaton",
            found: a.condition().keyword(),
        }),
    }
}
