//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use explorable::automaton::{Automaton, Condition};
use explorable::game::{Arena, Player};
use explorable::word::LassoWord;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Random automaton where every (state, letter) pair gets 1 to `max_out` edges
/// with ranks drawn from the condition's range.
pub fn random_automaton(r: &mut ChaCha8Rng, states: usize, sigma: usize, cond: Condition, max_out: usize) -> Automaton {
    let (lo, hi) = cond.rank_range();
    let mut a = Automaton::new("rand", letters(sigma), states, 0, cond);
    for q in 0..states {
        for l in 0..sigma {
            for _ in 0..r.gen_range(1..=max_out) {
                let d = r.gen_range(0..states);
                a.add_transition(q, l, d, r.gen_range(lo..=hi));
            }
        }
        if cond.is_finite() {
            a.set_accepting(q, r.gen_bool(0.5));
        }
    }
    a
}

pub fn random_deterministic(r: &mut ChaCha8Rng, states: usize, sigma: usize, cond: Condition) -> Automaton {
    random_automaton(r, states, sigma, cond, 1)
}

/// Bitset transitive closure by Warshall's algorithm.
struct Closure {
    words: usize,
    rows: Vec<u64>,
}

impl Closure {
    fn new(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (u, v) in edges {
            rows[u * words + v / 64] |= 1 << (v % 64);
        }
        for k in 0..n {
            let row_k: Vec<u64> = rows[k * words..(k + 1) * words].to_vec();
            for i in 0..n {
                if rows[i * words + k / 64] >> (k % 64) & 1 == 1 {
                    for (w, x) in row_k.iter().enumerate() {
                        rows[i * words + w] |= x;
                    }
                }
            }
        }
        Closure { words, rows }
    }

    /// Nonempty path from `u` to `v`.
    fn path(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Lasso acceptance by transitive closures of the unrolled run graph, read
/// directly from the stored condition tag (no normalization).
pub fn oracle_lasso(a: &Automaton, w: &LassoWord) -> bool {
    let len = w.len();
    let start = w.prefix.len();
    let n = a.num_states();
    let node = |q: usize, i: usize| q * len + i;
    let mut edges: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for q in 0..n {
        for i in 0..len {
            let next = if i + 1 == len { start } else { i + 1 };
            for e in a.successors(q, w.letter_at(i)) {
                edges.push((node(q, i), node(e.dst, next), e.ranks.to_vec()));
            }
        }
    }
    let v = n * len;
    let init = node(a.initial(), 0);
    let reach = |c: &Closure, x: usize| x == init || c.path(init, x);
    match a.condition() {
        Condition::Finite => panic!("finite automaton"),
        Condition::Safety => {
            let c = Closure::new(v, edges.iter().filter(|e| e.2[0] == 0).map(|e| (e.0, e.1)));
            (0..v).any(|x| reach(&c, x) && c.path(x, x))
        }
        Condition::Reachability => {
            // partial automata are read as their completion: hitting F is enough
            let c = Closure::new(v, edges.iter().map(|e| (e.0, e.1)));
            edges.iter().any(|(u, _, r)| r[0] == 0 && reach(&c, *u))
        }
        _ => {
            let full = Closure::new(v, edges.iter().map(|e| (e.0, e.1)));
            (0..a.channels()).any(|ch| {
                let ranks: Vec<u32> = edges.iter().map(|e| e.2[ch]).filter(|r| r % 2 == 0).collect();
                ranks.iter().any(|&r| {
                    let low = Closure::new(v, edges.iter().filter(|e| e.2[ch] <= r).map(|e| (e.0, e.1)));
                    edges
                        .iter()
                        .any(|(u, x, rs)| rs[ch] == r && reach(&full, *u) && (x == u || low.path(*x, *u)))
                })
            })
        }
    }
}

/// Finite-word acceptance by enumerating every run.
pub fn oracle_finite(a: &Automaton, w: &[usize]) -> bool {
    fn go(a: &Automaton, q: usize, w: &[usize]) -> bool {
        match w.split_first() {
            None => a.is_accepting(q),
            Some((&l, rest)) => a.successors(q, l).iter().any(|e| go(a, e.dst, rest)),
        }
    }
    go(a, a.initial(), w)
}

/// Random arena with out-degree 1 to 3 and colors in the given channel ranges.
pub fn random_arena(r: &mut ChaCha8Rng, positions: usize, channels: &[(u32, u32)]) -> Arena {
    let mut g = Arena::new("rand", channels.to_vec());
    for _ in 0..positions {
        g.add_position(if r.gen_bool(0.5) { Player::Zero } else { Player::One });
    }
    for v in 0..positions {
        for _ in 0..r.gen_range(1..=3) {
            let d = r.gen_range(0..positions);
            let colors = channels.iter().map(|&(lo, hi)| r.gen_range(lo..=hi)).collect();
            g.add_edge(v, d, colors);
        }
    }
    g
}

/// Vertex-colored game obtained by splitting every edge.
struct Split {
    owner: Vec<Player>,
    colors: Vec<Vec<u32>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

fn split(g: &Arena) -> Split {
    let n = g.num_positions();
    let lows: Vec<u32> = g.channels().iter().map(|c| c.0).collect();
    let mut s = Split {
        owner: g.owners().to_vec(),
        colors: vec![lows; n],
        succ: vec![Vec::new(); n],
        pred: vec![Vec::new(); n],
    };
    for e in g.edges() {
        let m = s.owner.len();
        s.owner.push(Player::Zero);
        s.colors.push(e.colors.to_vec());
        s.succ.push(vec![e.dst]);
        s.pred.push(vec![e.src]);
        s.succ[e.src].push(m);
        s.pred[e.dst].push(m);
    }
    s
}

fn attr(s: &Split, alive: &[bool], target: &[bool], p: Player) -> Vec<bool> {
    let mut inside: Vec<bool> = (0..alive.len()).map(|v| alive[v] && target[v]).collect();
    let mut count: Vec<usize> = (0..alive.len()).map(|v| s.succ[v].iter().filter(|&&w| alive[w]).count()).collect();
    let mut queue: Vec<usize> = (0..alive.len()).filter(|&v| inside[v]).collect();
    while let Some(w) = queue.pop() {
        for &v in &s.pred[w] {
            if !alive[v] || inside[v] {
                continue;
            }
            let join = if s.owner[v] == p {
                true
            } else {
                count[v] -= 1;
                count[v] == 0
            };
            if join {
                inside[v] = true;
                queue.push(v);
            }
        }
    }
    inside
}

fn minus(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}

/// Region of player 0 for "some channel's max color seen infinitely often is
/// even", by the recursive generalized-parity algorithm.
fn gp(s: &Split, alive: &[bool]) -> Vec<bool> {
    let n = alive.len();
    if !alive.iter().any(|&x| x) {
        return vec![false; n];
    }
    let channels = s.colors[0].len();
    let maxes: Vec<u32> = (0..channels)
        .map(|c| (0..n).filter(|&v| alive[v]).map(|v| s.colors[v][c]).max().unwrap())
        .collect();
    if let Some(c) = (0..channels).find(|&c| maxes[c].is_multiple_of(2)) {
        let top: Vec<bool> = (0..n).map(|v| alive[v] && s.colors[v][c] == maxes[c]).collect();
        let a = attr(s, alive, &top, Player::Zero);
        let rest = minus(alive, &a);
        let w0 = gp(s, &rest);
        let w1 = minus(&rest, &w0);
        if !w1.iter().any(|&x| x) {
            return alive.to_vec();
        }
        let b = attr(s, alive, &w1, Player::One);
        return gp(s, &minus(alive, &b));
    }
    for c in 0..channels {
        let top: Vec<bool> = (0..n).map(|v| alive[v] && s.colors[v][c] == maxes[c]).collect();
        let b = attr(s, alive, &top, Player::One);
        let rest = minus(alive, &b);
        let w0 = gp(s, &rest);
        if w0.iter().any(|&x| x) {
            let a = attr(s, alive, &w0, Player::Zero);
            let mut out = gp(s, &minus(alive, &a));
            for v in 0..n {
                out[v] |= a[v];
            }
            return out;
        }
    }
    vec![false; n]
}

/// Winner of every position for the disjunction of the arena's channels (max
/// parity, player 0 wins if some channel is even).
pub fn oracle_generalized_parity(g: &Arena) -> Vec<Player> {
    let s = split(g);
    let alive = vec![true; s.owner.len()];
    let w0 = gp(&s, &alive);
    (0..g.num_positions())
        .map(|v| if w0[v] { Player::Zero } else { Player::One })
        .collect()
}
