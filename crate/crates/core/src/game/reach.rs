//! Attractors and safety games on arenas, ignoring colors.

use crate::game::arena::{Arena, Player};
use crate::game::{SolveResult, Strategy};

/// Positions from which `player` can force a visit to `target`, with the edge
/// used by `player` at each attracted position it owns.
pub fn attractor(arena: &Arena, target: &[bool], player: Player) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = arena.num_positions();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in arena.edges().iter().enumerate() {
        pred[e.dst].push(i);
    }
    let mut inside = target.to_vec();
    let mut moves = vec![None; n];
    let mut count: Vec<usize> = (0..n).map(|v| arena.out_edges(v).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| target[v]).collect();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &e in &pred[v] {
            let u = arena.edge(e).src;
            if inside[u] {
                continue;
            }
            if arena.owner(u) == player {
                inside[u] = true;
                moves[u] = Some(e);
                queue.push(u);
            } else {
                count[u] -= 1;
                if count[u] == 0 {
                    inside[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    (inside, moves)
}

/// Player 0 wants to avoid `bad` forever; player 1 wants to reach it.
pub fn solve_safety(arena: &Arena, bad: &[bool]) -> SolveResult {
    let n = arena.num_positions();
    let (lose, attract) = attractor(arena, bad, Player::One);
    let winner: Vec<Player> = lose
        .iter()
        .map(|&l| if l { Player::One } else { Player::Zero })
        .collect();
    let mut safe = Strategy::positional(Player::Zero, n);
    let mut reach = Strategy::positional(Player::One, n);
    for v in 0..n {
        match (winner[v], arena.owner(v)) {
            (Player::Zero, Player::Zero) => {
                safe.moves[v] = arena
                    .out_edges(v)
                    .iter()
                    .copied()
                    .find(|&e| !lose[arena.edge(e).dst]);
            }
            (Player::One, Player::One) => {
                reach.moves[v] = attract[v].or_else(|| arena.out_edges(v).first().copied());
            }
            _ => {}
        }
    }
    SolveResult {
        winner,
        strategies: [safe, reach],
    }
}
