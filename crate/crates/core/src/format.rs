//! Line-oriented text formats.
//!
//! ```text
//! automaton a2
//! alphabet: a a1 a2
//! states: 5
//! initial: 0
//! condition: finite
//! accepting: 3
//! t 0 a 1
//! t 1 a1 3
//! ```
//!
//! Infinite-word automata give a rank after every transition (`t 0 a 1 2`);
//! multi-channel automata declare `channels: k` and write rank vectors as `1,2`.
//! State-based inputs may instead declare `rank <state> <r>` and omit the rank on
//! that state's outgoing transitions. `#` starts a comment.

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::automaton::{Automaton, Condition, Ranks};
use crate::error::{Error, Result};

/// Cursor over significant lines with position-aware errors.
pub(crate) struct Lines<'a> {
    file: &'a str,
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(file: &'a str, text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { file, items, pos: 0 }
    }

    pub(crate) fn error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            line,
            message: message.into(),
        }
    }

    /// Line number of the next line, or of the last line at end of input.
    pub(crate) fn line_no(&self) -> usize {
        self.items
            .get(self.pos)
            .or(self.items.last())
            .map_or(1, |&(n, _)| n)
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    pub(crate) fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    /// Consumes `key: value` and returns `value`.
    pub(crate) fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let line_no = self.line_no();
        match self.next() {
            Some((n, l)) => match l.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
                Some(rest) => Ok((n, rest.trim())),
                None => Err(self.error(n, format!("expected `{key}: ...`, found `{l}`"))),
            },
            None => Err(self.error(line_no, format!("expected `{key}: ...`, found end of input"))),
        }
    }

    /// Consumes `key: value` only if the next line has that key.
    pub(crate) fn optional_field(&mut self, key: &str) -> Option<(usize, &'a str)> {
        let (_, l) = self.peek()?;
        let rest = l.strip_prefix(key)?.strip_prefix(':')?;
        let n = self.next().unwrap().0;
        Some((n, rest.trim()))
    }

    pub(crate) fn number<T: std::str::FromStr>(&self, line: usize, tok: &str, what: &str) -> Result<T> {
        tok.parse()
            .map_err(|_| self.error(line, format!("expected {what}, found `{tok}`")))
    }
}

fn parse_condition(lines: &Lines, line: usize, text: &str) -> Result<Condition> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    Ok(match toks.as_slice() {
        ["finite"] => Condition::Finite,
        ["safety"] => Condition::Safety,
        ["reachability"] => Condition::Reachability,
        ["buchi"] => Condition::Buchi,
        ["cobuchi"] => Condition::CoBuchi,
        ["parity", lo, hi] => {
            let lo = lines.number(line, lo, "a rank")?;
            let hi = lines.number(line, hi, "a rank")?;
            if lo > hi {
                return Err(lines.error(line, format!("empty parity range [{lo},{hi}]")));
            }
            Condition::Parity { lo, hi }
        }
        _ => {
            return Err(lines.error(
                line,
                format!("expected finite|safety|reachability|buchi|cobuchi|parity <lo> <hi>, found `{text}`"),
            ))
        }
    })
}

fn state_id(lines: &Lines, line: usize, tok: &str, states: usize) -> Result<usize> {
    let q: usize = lines.number(line, tok, "a state id")?;
    if q >= states {
        return Err(lines.error(line, format!("state {q} out of range (states: {states})")));
    }
    Ok(q)
}

pub(crate) fn parse_automaton_lines(lines: &mut Lines) -> Result<Automaton> {
    let line_no = lines.line_no();
    let name = match lines.next() {
        Some((_, l)) if l.starts_with("automaton") => l["automaton".len()..].trim().to_string(),
        Some((n, l)) => return Err(lines.error(n, format!("expected `automaton <name>`, found `{l}`"))),
        None => return Err(lines.error(line_no, "expected `automaton <name>`, found end of input")),
    };
    let (n, alpha) = lines.field("alphabet")?;
    let alphabet: Vec<String> = alpha.split_whitespace().map(str::to_string).collect();
    if alphabet.is_empty() {
        return Err(lines.error(n, "alphabet is empty"));
    }
    for (i, l) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(l) {
            return Err(lines.error(n, format!("letter `{l}` listed twice")));
        }
    }
    let (n, s) = lines.field("states")?;
    let states: usize = lines.number(n, s, "a state count")?;
    let (n, s) = lines.field("initial")?;
    let initial = state_id(lines, n, s, states)?;
    let (n, s) = lines.field("condition")?;
    let condition = parse_condition(lines, n, s)?;
    let channels = match lines.optional_field("channels") {
        Some((n, s)) => {
            let c: usize = lines.number(n, s, "a channel count")?;
            if c == 0 {
                return Err(lines.error(n, "channel count must be positive"));
            }
            c
        }
        None => 1,
    };
    let mut a = Automaton::with_channels(name, alphabet, states, initial, condition, channels);
    if let Some((n, s)) = lines.optional_field("accepting") {
        if !condition.is_finite() {
            return Err(lines.error(n, "`accepting:` is only allowed with `condition: finite`"));
        }
        for tok in s.split_whitespace() {
            let q = state_id(lines, n, tok, states)?;
            a.set_accepting(q, true);
        }
    }
    let mut state_rank: Vec<Option<Ranks>> = vec![None; states];
    let mut pending: Vec<(usize, usize, usize, usize)> = Vec::new();
    while let Some((n, l)) = lines.peek() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["t", src, letter, dst, rest @ ..] => {
                lines.next();
                let src = state_id(lines, n, src, states)?;
                let dst = state_id(lines, n, dst, states)?;
                let letter = a
                    .letter_index(letter)
                    .ok_or_else(|| lines.error(n, format!("letter `{letter}` is not in the alphabet")))?;
                match (condition.is_finite(), rest) {
                    (true, []) => a.add_transition(src, letter, dst, 0),
                    (true, _) => return Err(lines.error(n, "finite-mode transitions take no rank")),
                    (false, []) => pending.push((n, src, letter, dst)),
                    (false, [r]) => {
                        let ranks = parse_ranks(lines, n, r, channels)?;
                        a.add_transition_ranks(src, letter, dst, ranks);
                    }
                    _ => return Err(lines.error(n, format!("expected `t <src> <letter> <dst> <rank>`, found `{l}`"))),
                }
            }
            ["rank", q, r] if !condition.is_finite() => {
                lines.next();
                let q = state_id(lines, n, q, states)?;
                state_rank[q] = Some(parse_ranks(lines, n, r, channels)?);
            }
            _ => break,
        }
    }
    for (n, src, letter, dst) in pending {
        let ranks = state_rank[src]
            .clone()
            .ok_or_else(|| lines.error(n, format!("transition without rank and no `rank {src} <r>` line")))?;
        a.add_transition_ranks(src, letter, dst, ranks);
    }
    Ok(a)
}

fn parse_ranks(lines: &Lines, line: usize, tok: &str, channels: usize) -> Result<Ranks> {
    let ranks: Ranks = tok
        .split(',')
        .map(|r| lines.number(line, r, "a rank"))
        .collect::<Result<SmallVec<_>>>()?;
    if ranks.len() != channels {
        return Err(lines.error(
            line,
            format!("rank vector `{tok}` has {} entries, expected {channels}", ranks.len()),
        ));
    }
    Ok(ranks)
}

fn expect_end(lines: &mut Lines) -> Result<()> {
    match lines.next() {
        Some((n, l)) => Err(lines.error(n, format!("unexpected line `{l}`"))),
        None => Ok(()),
    }
}

/// Parses an automaton; `file` is only used in error messages.
pub fn parse_automaton(file: &str, text: &str) -> Result<Automaton> {
    let mut lines = Lines::new(file, text);
    let a = parse_automaton_lines(&mut lines)?;
    expect_end(&mut lines)?;
    Ok(a)
}

/// Prints an automaton so that [`parse_automaton`] gives it back.
pub fn print_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    let name = if a.name.is_empty() { "unnamed" } else { a.name.as_str() };
    let _ = writeln!(out, "automaton {name}");
    let _ = writeln!(out, "alphabet: {}", a.alphabet().join(" "));
    let _ = writeln!(out, "states: {}", a.num_states());
    let _ = writeln!(out, "initial: {}", a.initial());
    let _ = writeln!(out, "condition: {}", a.condition());
    if a.channels() > 1 {
        let _ = writeln!(out, "channels: {}", a.channels());
    }
    if a.condition().is_finite() {
        let acc: Vec<String> = a.accepting_states().iter().map(|q| q.to_string()).collect();
        if !acc.is_empty() {
            let _ = writeln!(out, "accepting: {}", acc.join(" "));
        }
    }
    for t in a.transitions() {
        let letter = &a.alphabet()[t.letter];
        if a.condition().is_finite() {
            let _ = writeln!(out, "t {} {letter} {}", t.src, t.dst);
        } else {
            let ranks: Vec<String> = t.ranks.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(out, "t {} {letter} {} {}", t.src, t.dst, ranks.join(","));
        }
    }
    out
}

/// Parses a population-control instance: an automaton followed by `target: <id>`.
pub fn parse_pcp(file: &str, text: &str) -> Result<(Automaton, usize)> {
    let mut lines = Lines::new(file, text);
    let a = parse_automaton_lines(&mut lines)?;
    let (n, s) = lines.field("target")?;
    let target = state_id(&lines, n, s, a.num_states())?;
    expect_end(&mut lines)?;
    Ok((a, target))
}

pub fn print_pcp(a: &Automaton, target: usize) -> String {
    let mut out = print_automaton(a);
    let _ = writeln!(out, "target: {target}");
    out
}
