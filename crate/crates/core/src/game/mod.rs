//! Two-player games on explicit arenas with boolean combinations of parity
//! objectives.
//!
//! [`solve`] compiles the objective into a single parity condition through a
//! Zielonka-tree automaton ([`compile_objective`]), solves the product with
//! [`solve_parity`] and projects regions and strategies back. Projected strategies
//! use the condition automaton's states as memory.

pub mod arena;
pub mod objective;
pub mod parity;
pub mod reach;
pub mod zielonka_tree;

pub use arena::{parse_arena, print_arena, Arena, ArenaEdge, Player};
pub use objective::Objective;
pub use parity::{solve_parity, verify_strategy};
pub use reach::{attractor, solve_safety};
pub use zielonka_tree::{compile_objective, Compiled, ConditionAutomaton, ZielonkaTree};

use crate::automaton::Ranks;

/// Finite memory updated by the color tuple of every traversed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Memory {
    pub size: usize,
    pub initial: usize,
    pub condition: ConditionAutomaton,
}

impl Memory {
    pub fn update(&self, state: usize, colors: &Ranks) -> usize {
        let x = self.condition.tuple_index(colors).expect("tuple occurs in the arena");
        self.condition.next[state][x].0
    }
}

/// Edge choices of one player. Without memory `moves[v]` is the edge taken at `v`;
/// with memory it is indexed by `v * memory.size + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub owner: Player,
    pub moves: Vec<Option<usize>>,
    pub memory: Option<Memory>,
}

impl Strategy {
    pub fn positional(owner: Player, positions: usize) -> Self {
        Strategy {
            owner,
            moves: vec![None; positions],
            memory: None,
        }
    }

    pub fn choose(&self, v: usize, memory: usize) -> Option<usize> {
        match &self.memory {
            None => self.moves.get(v).copied().flatten(),
            Some(m) => self.moves.get(v * m.size + memory).copied().flatten(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Winner of every position.
    pub winner: Vec<Player>,
    /// Winning strategies indexed by [`Player::index`], defined on the player's
    /// own positions inside its region.
    pub strategies: [Strategy; 2],
}

impl SolveResult {
    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }

    pub fn region_mask(&self, p: Player) -> Vec<bool> {
        self.winner.iter().map(|&w| w == p).collect()
    }

    pub fn wins(&self, p: Player, v: usize) -> bool {
        self.winner[v] == p
    }
}

/// Solves `arena` for `obj` (won by player 0) from every position.
pub fn solve(arena: &Arena, obj: &Objective) -> SolveResult {
    solve_compiled(arena, &compile_objective(arena, obj))
}

/// Projection step of [`solve`] for an already compiled product.
pub fn solve_compiled(arena: &Arena, compiled: &Compiled) -> SolveResult {
    let inner = solve_parity(&compiled.game);
    let n = arena.num_positions();
    let winner: Vec<Player> = (0..n).map(|v| inner.winner[compiled.entry(v)]).collect();
    let size = compiled.condition.num_states();
    let memory = Memory {
        size,
        initial: compiled.condition.initial,
        condition: compiled.condition.clone(),
    };
    let mut strategies = [Player::Zero, Player::One].map(|p| Strategy {
        owner: p,
        moves: vec![None; n * size],
        memory: Some(memory.clone()),
    });
    for (i, &(v, leaf)) in compiled.positions.iter().enumerate() {
        let owner = arena.owner(v);
        if inner.winner[i] == owner {
            if let Some(e) = inner.strategies[owner.index()].moves[i] {
                strategies[owner.index()].moves[v * size + leaf] = Some(compiled.edge_origin[e]);
            }
        }
    }
    SolveResult { winner, strategies }
}
