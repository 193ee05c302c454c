//! Zielonka's recursive algorithm for single-channel max-parity games with colored
//! edges, and independent strategy verification.

use crate::game::arena::{Arena, Player};
use crate::game::{SolveResult, Strategy};
use crate::graph::WeightedGraph;

const NONE: usize = usize::MAX;

/// Vertex-colored view: arena positions keep their owner and get priority 0; every
/// edge becomes an intermediate vertex carrying the edge color.
struct VertexGame {
    positions: usize,
    owner: Vec<Player>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl VertexGame {
    fn new(game: &Arena) -> Self {
        let p = game.num_positions();
        let n = p + game.num_edges();
        let mut owner = game.owners().to_vec();
        owner.resize(n, Player::Zero);
        let mut priority = vec![0; n];
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (i, e) in game.edges().iter().enumerate() {
            let x = p + i;
            priority[x] = e.colors[0];
            succ[e.src].push(x);
            succ[x].push(e.dst);
            pred[x].push(e.src);
            pred[e.dst].push(x);
        }
        VertexGame {
            positions: p,
            owner,
            priority,
            succ,
            pred,
        }
    }

    /// Attractor of `target` for `player` inside `mask`, recording attracting moves
    /// in `strat`. Returns the attractor as a list (targets first).
    fn attractor(&self, mask: &[bool], target: &[usize], player: Player, strat: &mut [usize]) -> Vec<usize> {
        let n = self.owner.len();
        let mut inside = vec![false; n];
        let mut count = vec![NONE; n];
        let mut queue: Vec<usize> = Vec::with_capacity(target.len());
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push(t);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &u in &self.pred[v] {
                if !mask[u] || inside[u] {
                    continue;
                }
                if self.owner[u] == player {
                    inside[u] = true;
                    strat[u] = v;
                    queue.push(u);
                } else {
                    if count[u] == NONE {
                        count[u] = self.succ[u].iter().filter(|&&w| mask[w]).count();
                    }
                    count[u] -= 1;
                    if count[u] == 0 {
                        inside[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
        queue
    }

    /// Solves the subgame `mask` (a union of vertices closed under having some
    /// successor), writing winners into `win` and moves into `strat`.
    fn zielonka(&self, mask: &mut Vec<bool>, win: &mut [Player], strat: &mut [usize]) {
        loop {
            let mut top = None;
            for (v, &m) in mask.iter().enumerate() {
                if m {
                    top = Some(top.map_or(self.priority[v], |t: u32| t.max(self.priority[v])));
                }
            }
            let Some(p) = top else { return };
            let i = Player::of_parity(p);
            let u: Vec<usize> = (0..mask.len())
                .filter(|&v| mask[v] && self.priority[v] == p)
                .collect();
            let a = self.attractor(mask, &u, i, strat);
            let mut sub = mask.clone();
            for &v in &a {
                sub[v] = false;
            }
            self.zielonka(&mut sub.clone(), win, strat);
            let lost: Vec<usize> = (0..mask.len())
                .filter(|&v| sub[v] && win[v] == i.opponent())
                .collect();
            if lost.is_empty() {
                for &v in &u {
                    if self.owner[v] == i {
                        strat[v] = *self.succ[v].iter().find(|&&w| mask[w]).expect("no dead ends");
                    }
                }
                for &v in &a {
                    win[v] = i;
                }
                return;
            }
            let b = self.attractor(mask, &lost, i.opponent(), strat);
            for &v in &b {
                win[v] = i.opponent();
                mask[v] = false;
            }
        }
    }
}

/// Solves a single-channel max-parity game: player 0 wins plays whose largest color
/// seen infinitely often is even. Strategies are positional and pick, where there is
/// a choice, the lowest edge id.
pub fn solve_parity(game: &Arena) -> SolveResult {
    assert_eq!(game.channels().len(), 1, "solve_parity needs a single channel");
    let vg = VertexGame::new(game);
    let n = vg.owner.len();
    let mut mask = vec![true; n];
    let mut win = vec![Player::Zero; n];
    let mut strat = vec![NONE; n];
    vg.zielonka(&mut mask, &mut win, &mut strat);
    let winner: Vec<Player> = win[..vg.positions].to_vec();
    let mut strategies = [
        Strategy::positional(Player::Zero, game.num_positions()),
        Strategy::positional(Player::One, game.num_positions()),
    ];
    for v in 0..vg.positions {
        let owner = game.owner(v);
        if winner[v] == owner {
            let x = strat[v];
            debug_assert!(x >= vg.positions, "position {v} lacks a move");
            strategies[owner.index()].moves[v] = Some(x - vg.positions);
        }
    }
    SolveResult { winner, strategies }
}

/// Checks that `strategy` (edge ids per position) keeps plays from `region` inside
/// it and that every cycle of the restricted graph is won by `owner`.
pub fn verify_strategy(game: &Arena, region: &[bool], moves: &[Option<usize>], owner: Player) -> bool {
    let n = game.num_positions();
    let mut edges = Vec::new();
    for v in 0..n {
        if !region[v] {
            continue;
        }
        if game.owner(v) == owner {
            let Some(e) = moves.get(v).copied().flatten() else { return false };
            let edge = game.edge(e);
            if edge.src != v || !region[edge.dst] {
                return false;
            }
            edges.push((v, edge.dst, edge.colors[0]));
        } else {
            for &e in game.out_edges(v) {
                let edge = game.edge(e);
                if !region[edge.dst] {
                    return false;
                }
                edges.push((v, edge.dst, edge.colors[0]));
            }
        }
    }
    let graph = WeightedGraph { nodes: n, edges };
    let (lo, hi) = game.channels()[0];
    (lo..=hi)
        .filter(|&c| Player::of_parity(c) != owner)
        .all(|c| !graph.cycle_with_max_weight(region, c))
}
