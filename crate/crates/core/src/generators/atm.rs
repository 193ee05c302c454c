//! Alternating Turing machines over the tape alphabet `{0, 1}` and their reduction
//! to safety automata whose ω-explorability is the complement of acceptance.
//!
//! ```text
//! atm
//! states: 3
//! existential: 0
//! accepting: 2
//! space: 2
//! t 0 0 1 1 R
//! t 1 1 2 0 L
//! ```
//!
//! State 0 is initial. The head starts on cell 1 and the tape holds the input
//! padded with `0` up to `space` cells.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Automaton, Condition};
use crate::error::{Error, Result};
use crate::format::Lines;

/// Largest configuration space [`atm_accepts`] will explore.
pub const MAX_CONFIGS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtmTransition {
    pub src: usize,
    pub read: u8,
    pub dst: usize,
    pub write: u8,
    pub dir: Dir,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atm {
    pub existential: Vec<bool>,
    pub accepting: usize,
    pub space: usize,
    pub transitions: Vec<AtmTransition>,
}

impl Atm {
    pub fn num_states(&self) -> usize {
        self.existential.len()
    }

    /// Violations of the alternation and range invariants.
    pub fn violations(&self) -> Vec<String> {
        let n = self.num_states();
        let mut out = Vec::new();
        if n == 0 {
            out.push("no states".to_string());
            return out;
        }
        if !self.existential[0] {
            out.push("initial state 0 is universal".to_string());
        }
        if self.accepting >= n {
            out.push(format!("accepting state {} out of range", self.accepting));
        }
        if self.space == 0 {
            out.push("space bound must be positive".to_string());
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.src >= n || t.dst >= n {
                out.push(format!("transition {i} leaves the state range"));
            } else if self.existential[t.src] == self.existential[t.dst] {
                out.push(format!("transition {i} does not alternate ({} -> {})", t.src, t.dst));
            }
            if t.read > 1 || t.write > 1 {
                out.push(format!("transition {i} uses a symbol outside {{0,1}}"));
            }
        }
        out
    }
}

pub fn parse_atm(file: &str, text: &str) -> Result<Atm> {
    let mut lines = Lines::new(file, text);
    match lines.next() {
        Some((_, "atm")) => {}
        Some((n, l)) => return Err(lines.error(n, format!("expected `atm`, found `{l}`"))),
        None => return Err(lines.error(1, "expected `atm`, found end of input")),
    }
    let (n, v) = lines.field("states")?;
    let states: usize = lines.number(n, v, "a state count")?;
    let (n, v) = lines.field("existential")?;
    let mut existential = vec![false; states];
    for tok in v.split_whitespace() {
        let q: usize = lines.number(n, tok, "a state id")?;
        if q >= states {
            return Err(lines.error(n, format!("state {q} out of range")));
        }
        existential[q] = true;
    }
    let (n, v) = lines.field("accepting")?;
    let accepting = lines.number(n, v, "a state id")?;
    let (n, v) = lines.field("space")?;
    let space = lines.number(n, v, "a space bound")?;
    let mut transitions = Vec::new();
    while let Some((n, l)) = lines.next() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let ["t", src, read, dst, write, dir] = toks.as_slice() else {
            return Err(lines.error(n, format!("expected `t <q> <read> <q'> <write> <L|R>`, found `{l}`")));
        };
        let dir = match *dir {
            "L" => Dir::L,
            "R" => Dir::R,
            other => return Err(lines.error(n, format!("expected L or R, found `{other}`"))),
        };
        transitions.push(AtmTransition {
            src: lines.number(n, src, "a state id")?,
            read: lines.number(n, read, "a tape symbol")?,
            dst: lines.number(n, dst, "a state id")?,
            write: lines.number(n, write, "a tape symbol")?,
            dir,
        });
    }
    let m = Atm {
        existential,
        accepting,
        space,
        transitions,
    };
    if let Some(v) = m.violations().into_iter().next() {
        return Err(lines.error(lines.line_no(), v));
    }
    Ok(m)
}

pub fn print_atm(m: &Atm) -> String {
    let mut s = String::from("atm\n");
    let ex: Vec<String> = (0..m.num_states())
        .filter(|&q| m.existential[q])
        .map(|q| q.to_string())
        .collect();
    let _ = writeln!(s, "states: {}", m.num_states());
    let _ = writeln!(s, "existential: {}", ex.join(" "));
    let _ = writeln!(s, "accepting: {}", m.accepting);
    let _ = writeln!(s, "space: {}", m.space);
    for t in &m.transitions {
        let d = if t.dir == Dir::L { "L" } else { "R" };
        let _ = writeln!(s, "t {} {} {} {} {d}", t.src, t.read, t.dst, t.write);
    }
    s
}

/// State layout of [`atm_reduce`]'s output.
#[derive(Debug, Clone, Copy)]
pub struct Layout {
    pub states: usize,
    pub space: usize,
    pub transitions: usize,
}

impl Layout {
    pub fn of(m: &Atm) -> Self {
        Layout {
            states: m.num_states(),
            space: m.space,
            transitions: m.transitions.len(),
        }
    }

    pub const START: usize = 0;

    pub fn machine(&self, q: usize) -> usize {
        1 + q
    }

    /// Head position `p` in `1..=space`.
    pub fn pos(&self, p: usize) -> usize {
        1 + self.states + (p - 1)
    }

    pub fn mem(&self, b: u8, p: usize) -> usize {
        1 + self.states + self.space + 2 * (p - 1) + b as usize
    }

    pub fn choice(&self) -> usize {
        1 + self.states + 3 * self.space
    }

    pub fn answer(&self, t: usize) -> usize {
        self.choice() + 1 + t
    }

    pub fn store(&self) -> usize {
        self.choice() + 1 + self.transitions
    }

    pub fn bottom(&self) -> usize {
        self.store() + 1
    }

    pub fn top(&self) -> usize {
        self.store() + 2
    }

    pub fn size(&self) -> usize {
        self.store() + 3
    }
}

fn tape_of(m: &Atm, word: &[u8]) -> Vec<u8> {
    (0..m.space).map(|i| word.get(i).copied().unwrap_or(0)).collect()
}

/// Safety automaton that is ω-explorable iff `m` rejects `word`.
///
/// Letters `restart` and `win` loop on every state. Letters without a rule at some
/// state (`init` away from the start state, move letters at the start state) also
/// loop there.
///
/// Runs reach `store` only after two move letters, so the equivalence needs a
/// machine with at least two transitions whose accepting plays take two steps or
/// more; a machine accepting in one step yields an ω-explorable output.
pub fn atm_reduce(m: &Atm, word: &[u8]) -> Automaton {
    let lay = Layout::of(m);
    let p_max = m.space;
    let nt = m.transitions.len();
    let mut alphabet = Vec::new();
    for t in 0..nt {
        for p in 1..=p_max {
            alphabet.push(format!("a{t}_{p}"));
        }
    }
    for l in ["init", "end", "restart", "win"] {
        alphabet.push(l.to_string());
    }
    for q in 0..m.num_states() {
        alphabet.push(format!("chk{q}"));
    }
    for b in 0..2 {
        for p in 1..=p_max {
            alphabet.push(format!("chk{b}_{p}"));
        }
    }
    let idx: HashMap<String, usize> = alphabet.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let (bot, top, store) = (lay.bottom(), lay.top(), lay.store());
    let mut a = Automaton::new(format!("atm{}", m.num_states()), alphabet, lay.size(), Layout::START, Condition::Safety);
    let add = |a: &mut Automaton, src: usize, l: usize, dst: usize| {
        a.add_transition(src, l, dst, u32::from(dst == bot));
    };
    let config_states = || {
        (0..m.num_states())
            .map(|q| lay.machine(q))
            .chain((1..=p_max).map(|p| lay.pos(p)))
            .chain((1..=p_max).flat_map(|p| [lay.mem(0, p), lay.mem(1, p)]))
    };
    let letters = a.num_letters();
    for l in 0..letters {
        add(&mut a, bot, l, bot);
        add(&mut a, top, l, top);
    }

    for (ti, t) in m.transitions.iter().enumerate() {
        for p in 1..=p_max {
            let l = idx[&format!("a{ti}_{p}")];
            for q in 0..m.num_states() {
                add(&mut a, lay.machine(q), l, if q == t.src { lay.machine(t.dst) } else { top });
            }
            for j in 1..=p_max {
                let dst = if j != p {
                    top
                } else {
                    match t.dir {
                        Dir::L if p > 1 => lay.pos(p - 1),
                        Dir::R if p < p_max => lay.pos(p + 1),
                        _ => top,
                    }
                };
                add(&mut a, lay.pos(j), l, dst);
                for b in 0..2u8 {
                    let dst = if j != p {
                        lay.mem(b, j)
                    } else if b == t.read {
                        lay.mem(t.write, j)
                    } else {
                        top
                    };
                    add(&mut a, lay.mem(b, j), l, dst);
                }
            }
            for t2 in 0..nt {
                add(&mut a, lay.choice(), l, lay.answer(t2));
                add(&mut a, lay.answer(t2), l, if t2 == ti { lay.choice() } else { store });
            }
            add(&mut a, store, l, store);
            add(&mut a, Layout::START, l, Layout::START);
        }
    }

    let init = idx["init"];
    add(&mut a, Layout::START, init, lay.choice());
    add(&mut a, Layout::START, init, lay.machine(0));
    add(&mut a, Layout::START, init, lay.pos(1));
    for (i, &b) in tape_of(m, word).iter().enumerate() {
        add(&mut a, Layout::START, init, lay.mem(b, i + 1));
    }
    for s in config_states().chain([lay.choice(), store]).chain((0..nt).map(|t| lay.answer(t))) {
        add(&mut a, s, init, s);
    }

    let end = idx["end"];
    for q in 0..m.num_states() {
        add(&mut a, lay.machine(q), end, if q == m.accepting { bot } else { top });
    }
    let rest = (1..=p_max)
        .flat_map(|p| [lay.pos(p), lay.mem(0, p), lay.mem(1, p)])
        .chain([Layout::START, lay.choice()])
        .chain((0..nt).map(|t| lay.answer(t)));
    for s in rest {
        add(&mut a, s, end, bot);
    }
    add(&mut a, store, end, Layout::START);

    for l in ["restart", "win"] {
        let l = idx[l];
        for s in 0..lay.size() - 2 {
            add(&mut a, s, l, s);
        }
    }

    let others = |a: &Automaton, l: usize| -> Vec<usize> {
        (0..lay.size() - 2).filter(|&s| a.successors(s, l).is_empty()).collect()
    };
    for q in 0..m.num_states() {
        let l = idx[&format!("chk{q}")];
        for (ti, t) in m.transitions.iter().enumerate() {
            if t.src == q {
                add(&mut a, lay.answer(ti), l, bot);
            }
        }
        add(&mut a, lay.machine(q), l, top);
        for s in others(&a, l) {
            add(&mut a, s, l, Layout::START);
        }
    }
    for b in 0..2u8 {
        for p in 1..=p_max {
            let l = idx[&format!("chk{b}_{p}")];
            for (ti, t) in m.transitions.iter().enumerate() {
                if t.read == b {
                    add(&mut a, lay.answer(ti), l, bot);
                }
            }
            for j in (1..=p_max).filter(|&j| j != p) {
                add(&mut a, lay.pos(j), l, top);
            }
            add(&mut a, lay.mem(b, p), l, top);
            for s in others(&a, l) {
                add(&mut a, s, l, Layout::START);
            }
        }
    }
    a
}

/// Configuration of a machine: state, head in `1..=space`, tape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Config {
    state: usize,
    head: usize,
    tape: Vec<u8>,
}

/// Successors of a configuration; `None` marks a move that leaves the tape.
fn moves(m: &Atm, c: &Config) -> Vec<Option<Config>> {
    m.transitions
        .iter()
        .filter(|t| t.src == c.state && c.tape[c.head - 1] == t.read)
        .map(|t| {
            let head = match t.dir {
                Dir::L => c.head.checked_sub(1).filter(|&h| h >= 1)?,
                Dir::R => Some(c.head + 1).filter(|&h| h <= m.space)?,
            };
            let mut tape = c.tape.clone();
            tape[c.head - 1] = t.write;
            Some(Config {
                state: t.dst,
                head,
                tape,
            })
        })
        .collect()
}

fn config_space(m: &Atm) -> Result<usize> {
    let cells = 1usize
        .checked_shl(m.space as u32)
        .filter(|_| m.space < usize::BITS as usize)
        .and_then(|t| t.checked_mul(m.space))
        .and_then(|t| t.checked_mul(m.num_states()))
        .unwrap_or(usize::MAX);
    if cells > MAX_CONFIGS {
        return Err(Error::ConfigSpaceTooLarge(cells));
    }
    Ok(cells)
}

/// Whether the existential player forces the accepting state on `word`. Every
/// play that does not reach it rejects: moves leaving the tape, plays where the
/// player to move is stuck, and infinite plays.
pub fn atm_accepts(m: &Atm, word: &[u8]) -> Result<bool> {
    config_space(m)?;
    let start = Config {
        state: 0,
        head: 1,
        tape: tape_of(m, word),
    };
    let mut id: HashMap<Config, usize> = HashMap::new();
    let mut configs = vec![start.clone()];
    id.insert(start, 0);
    let mut succ: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < configs.len() {
        let c = configs[i].clone();
        let mut out = Vec::new();
        if c.state != m.accepting {
            for nc in moves(m, &c) {
                out.push(nc.map(|nc| {
                    let n = configs.len();
                    *id.entry(nc.clone()).or_insert_with(|| {
                        configs.push(nc);
                        n
                    })
                }));
            }
        }
        succ.push(out);
        i += 1;
    }
    let n = configs.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, out) in succ.iter().enumerate() {
        for v in out.iter().flatten() {
            pred[*v].push(u);
        }
    }
    let exists = |u: usize| m.existential[configs[u].state];
    let mut win = vec![false; n];
    // Universal positions need every move to win; a move off the tape never does.
    let mut need: Vec<usize> = succ.iter().map(|o| o.len()).collect();
    let mut queue = Vec::new();
    for u in 0..n {
        let accept = configs[u].state == m.accepting;
        if accept {
            win[u] = true;
            queue.push(u);
        }
    }
    while let Some(v) = queue.pop() {
        for &u in &pred[v] {
            if win[u] {
                continue;
            }
            if exists(u) {
                win[u] = true;
                queue.push(u);
            } else {
                need[u] -= succ[u].iter().filter(|&&s| s == Some(v)).count();
                if need[u] == 0 {
                    win[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    Ok(win[0])
}

/// Independent check of [`atm_accepts`]: minimax over the play tree cut at
/// `2 · |configurations|` moves, memoized on (configuration, remaining depth).
pub fn atm_accepts_minimax(m: &Atm, word: &[u8]) -> Result<bool> {
    let depth = 2 * config_space(m)?;
    let start = Config {
        state: 0,
        head: 1,
        tape: tape_of(m, word),
    };
    fn go(m: &Atm, c: &Config, d: usize, memo: &mut HashMap<(Config, usize), bool>) -> bool {
        if c.state == m.accepting {
            return true;
        }
        if d == 0 {
            return false;
        }
        if let Some(&r) = memo.get(&(c.clone(), d)) {
            return r;
        }
        let ms = moves(m, c);
        let mut value = |x: &Option<Config>| x.as_ref().is_some_and(|nc| go(m, nc, d - 1, memo));
        let r = if m.existential[c.state] {
            ms.iter().any(&mut value)
        } else {
            !ms.is_empty() && ms.iter().all(&mut value)
        };
        memo.insert((c.clone(), d), r);
        r
    }
    Ok(go(m, &start, depth, &mut HashMap::new()))
}
