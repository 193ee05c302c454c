//! Explicit game arenas with color-tuple edge labels.

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::automaton::Ranks;
use crate::error::Result;
use crate::format::Lines;
use crate::game::objective::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    /// The protagonist: wins plays satisfying the objective.
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    /// The player favored by a max-parity color.
    pub fn of_parity(color: u32) -> Player {
        if color.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArenaEdge {
    pub src: usize,
    pub dst: usize,
    pub colors: Ranks,
}

/// Positions `0..n`, each owned by a player, with colored edges. Every position
/// should have an outgoing edge; [`Arena::violations`] reports dead ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    pub name: String,
    pub initial: usize,
    owners: Vec<Player>,
    channels: Vec<(u32, u32)>,
    edges: Vec<ArenaEdge>,
    out: Vec<Vec<usize>>,
}

impl Arena {
    /// Empty arena whose edges carry one color per entry of `channels` (inclusive ranges).
    pub fn new(name: impl Into<String>, channels: Vec<(u32, u32)>) -> Self {
        assert!(!channels.is_empty(), "an arena needs at least one channel");
        Arena {
            name: name.into(),
            initial: 0,
            owners: Vec::new(),
            channels,
            edges: Vec::new(),
            out: Vec::new(),
        }
    }

    pub fn add_position(&mut self, owner: Player) -> usize {
        self.owners.push(owner);
        self.out.push(Vec::new());
        self.owners.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, colors: Ranks) -> usize {
        assert_eq!(colors.len(), self.channels.len(), "color tuple width");
        let id = self.edges.len();
        self.edges.push(ArenaEdge { src, dst, colors });
        self.out[src].push(id);
        id
    }

    /// Single-channel convenience for [`Arena::add_edge`].
    pub fn add_edge1(&mut self, src: usize, dst: usize, color: u32) -> usize {
        self.add_edge(src, dst, smallvec::smallvec![color])
    }

    pub fn num_positions(&self) -> usize {
        self.owners.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn channels(&self) -> &[(u32, u32)] {
        &self.channels
    }

    pub fn edge(&self, e: usize) -> &ArenaEdge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[ArenaEdge] {
        &self.edges
    }

    /// Ids of the edges leaving `v`, in insertion order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Dead ends, out-of-range colors and a bad initial position.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.initial >= self.num_positions() {
            out.push(format!("initial position {} out of range", self.initial));
        }
        for v in 0..self.num_positions() {
            if self.out[v].is_empty() {
                out.push(format!("position {v} has no outgoing edge"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.dst >= self.num_positions() {
                out.push(format!("edge {i} leads to missing position {}", e.dst));
            }
            for (c, (&x, &(lo, hi))) in e.colors.iter().zip(&self.channels).enumerate() {
                if x < lo || x > hi {
                    out.push(format!("edge {i} color {x} outside channel {c} range [{lo},{hi}]"));
                }
            }
        }
        out
    }

    /// Distinct color tuples occurring on edges, sorted.
    pub fn occurring_tuples(&self) -> Vec<Ranks> {
        let mut ts: Vec<Ranks> = self.edges.iter().map(|e| e.colors.clone()).collect();
        ts.sort();
        ts.dedup();
        ts
    }
}

/// Text form of an arena and its objective:
///
/// ```text
/// arena g
/// positions: 2
/// initial: 0
/// channels: 1..2 1..2
/// owners: 0 1
/// e 0 1 2,1
/// e 1 0 1,2
/// objective: (or p0 p1)
/// ```
pub fn print_arena(arena: &Arena, obj: &Objective) -> String {
    let mut out = String::new();
    let name = if arena.name.is_empty() { "unnamed" } else { &arena.name };
    let _ = writeln!(out, "arena {name}");
    let _ = writeln!(out, "positions: {}", arena.num_positions());
    let _ = writeln!(out, "initial: {}", arena.initial);
    let chans: Vec<String> = arena.channels.iter().map(|(lo, hi)| format!("{lo}..{hi}")).collect();
    let _ = writeln!(out, "channels: {}", chans.join(" "));
    let owners: Vec<&str> = arena
        .owners
        .iter()
        .map(|p| if *p == Player::Zero { "0" } else { "1" })
        .collect();
    let _ = writeln!(out, "owners: {}", owners.join(" "));
    for e in &arena.edges {
        let cs: Vec<String> = e.colors.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "e {} {} {}", e.src, e.dst, cs.join(","));
    }
    let _ = writeln!(out, "objective: {obj}");
    out
}

pub fn parse_arena(file: &str, text: &str) -> Result<(Arena, Objective)> {
    let mut lines = Lines::new(file, text);
    let line_no = lines.line_no();
    let name = match lines.next() {
        Some((_, l)) if l.starts_with("arena") => l["arena".len()..].trim().to_string(),
        Some((n, l)) => return Err(lines.error(n, format!("expected `arena <name>`, found `{l}`"))),
        None => return Err(lines.error(line_no, "expected `arena <name>`, found end of input")),
    };
    let (n, s) = lines.field("positions")?;
    let positions: usize = lines.number(n, s, "a position count")?;
    let (n, s) = lines.field("initial")?;
    let initial: usize = lines.number(n, s, "a position id")?;
    if initial >= positions {
        return Err(lines.error(n, format!("initial position {initial} out of range")));
    }
    let (n, s) = lines.field("channels")?;
    let mut channels = Vec::new();
    for tok in s.split_whitespace() {
        let (lo, hi) = tok
            .split_once("..")
            .ok_or_else(|| lines.error(n, format!("expected `lo..hi`, found `{tok}`")))?;
        let lo: u32 = lines.number(n, lo, "a rank")?;
        let hi: u32 = lines.number(n, hi, "a rank")?;
        if lo > hi {
            return Err(lines.error(n, format!("empty channel range `{tok}`")));
        }
        channels.push((lo, hi));
    }
    if channels.is_empty() {
        return Err(lines.error(n, "expected at least one channel"));
    }
    let mut arena = Arena::new(name, channels);
    arena.initial = initial;
    let (n, s) = lines.field("owners")?;
    let owners: Vec<&str> = s.split_whitespace().collect();
    if owners.len() != positions {
        return Err(lines.error(n, format!("expected {positions} owners, found {}", owners.len())));
    }
    for o in owners {
        let p = match o {
            "0" => Player::Zero,
            "1" => Player::One,
            _ => return Err(lines.error(n, format!("expected owner 0 or 1, found `{o}`"))),
        };
        arena.add_position(p);
    }
    while let Some((n, l)) = lines.peek() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let ["e", src, dst, colors] = toks.as_slice() else { break };
        lines.next();
        let src: usize = lines.number(n, src, "a position id")?;
        let dst: usize = lines.number(n, dst, "a position id")?;
        if src >= positions || dst >= positions {
            return Err(lines.error(n, "edge endpoint out of range"));
        }
        let colors: Ranks = colors
            .split(',')
            .map(|c| lines.number(n, c, "a color"))
            .collect::<Result<SmallVec<_>>>()?;
        if colors.len() != arena.channels.len() {
            return Err(lines.error(n, format!("expected {} colors per edge", arena.channels.len())));
        }
        arena.add_edge(src, dst, colors);
    }
    let (n, s) = lines.field("objective")?;
    let obj = Objective::parse(s).map_err(|m| lines.error(n, m))?;
    if let Some(c) = obj.max_channel() {
        if c >= arena.channels.len() {
            return Err(lines.error(n, format!("objective refers to missing channel {c}")));
        }
    }
    if let Some((n, l)) = lines.next() {
        return Err(lines.error(n, format!("unexpected line `{l}`")));
    }
    let bad = arena.violations();
    if let Some(v) = bad.first() {
        return Err(lines.error(lines.line_no(), v.clone()));
    }
    Ok((arena, obj))
}
