//! Zielonka trees of objectives over a finite set of color tuples, the deterministic
//! parity automaton read off the tree, and the product of an arena with it.

use std::collections::HashMap;

use crate::automaton::Ranks;
use crate::game::arena::Arena;
use crate::game::objective::Objective;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZtNode {
    /// Indices into [`ZielonkaTree::tuples`], sorted.
    pub label: Vec<usize>,
    /// Does the objective hold when exactly `label` occurs infinitely often?
    pub winning: bool,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    pub depth: usize,
}

/// Node 0 is the root, labeled with every tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZielonkaTree {
    pub tuples: Vec<Ranks>,
    pub nodes: Vec<ZtNode>,
}

fn holds(obj: &Objective, tuples: &[Ranks], label: &[usize]) -> bool {
    obj.eval_set(label.iter().map(|&i| &tuples[i]))
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Maximal nonempty subsets of `label` whose membership differs from `label`'s.
/// Membership only depends on the per-channel maxima, and for a vector `m` the
/// largest subset with maxima `≤ m` is `{t ∈ label : t ≤ m}`, so it suffices to
/// range over vectors built from the values occurring in `label`.
fn maximal_flips(obj: &Objective, tuples: &[Ranks], label: &[usize], winning: bool) -> Vec<Vec<usize>> {
    let width = tuples[label[0]].len();
    let mut values: Vec<Vec<u32>> = vec![Vec::new(); width];
    for &i in label {
        for (c, &x) in tuples[i].iter().enumerate() {
            values[c].push(x);
        }
    }
    for v in &mut values {
        v.sort_unstable();
        v.dedup();
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut digits = vec![0usize; width];
    loop {
        let m: Vec<u32> = digits.iter().enumerate().map(|(c, &d)| values[c][d]).collect();
        let sub: Vec<usize> = label
            .iter()
            .copied()
            .filter(|&i| tuples[i].iter().zip(&m).all(|(x, y)| x <= y))
            .collect();
        if !sub.is_empty() && sub.len() < label.len() && holds(obj, tuples, &sub) != winning {
            candidates.push(sub);
        }
        let mut c = 0;
        while c < width {
            digits[c] += 1;
            if digits[c] < values[c].len() {
                break;
            }
            digits[c] = 0;
            c += 1;
        }
        if c == width {
            break;
        }
    }
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.len() > s.len() && is_subset(s, t))
        })
        .cloned()
        .collect();
    maximal
}

impl ZielonkaTree {
    /// Builds the tree over `tuples` (deduplicated and sorted first).
    pub fn build(obj: &Objective, mut tuples: Vec<Ranks>) -> ZielonkaTree {
        assert!(!tuples.is_empty(), "Zielonka tree needs at least one tuple");
        tuples.sort();
        tuples.dedup();
        let root: Vec<usize> = (0..tuples.len()).collect();
        let winning = holds(obj, &tuples, &root);
        let mut nodes = vec![ZtNode {
            label: root,
            winning,
            children: Vec::new(),
            parent: None,
            depth: 0,
        }];
        let mut i = 0;
        while i < nodes.len() {
            let flips = maximal_flips(obj, &tuples, &nodes[i].label, nodes[i].winning);
            for label in flips {
                let id = nodes.len();
                nodes.push(ZtNode {
                    label,
                    winning: !nodes[i].winning,
                    children: Vec::new(),
                    parent: Some(i),
                    depth: nodes[i].depth + 1,
                });
                nodes[i].children.push(id);
            }
            i += 1;
        }
        ZielonkaTree { tuples, nodes }
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn tuple_index(&self, t: &Ranks) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    fn leftmost_leaf(&self, mut n: usize) -> usize {
        while let Some(&c) = self.nodes[n].children.first() {
            n = c;
        }
        n
    }

    fn path_to(&self, mut n: usize) -> Vec<usize> {
        let mut path = vec![n];
        while let Some(p) = self.nodes[n].parent {
            path.push(p);
            n = p;
        }
        path.reverse();
        path
    }
}

/// Deterministic parity automaton over tuple indices whose states are the leaves
/// of a Zielonka tree. Reading tuple `x` at leaf `l` finds the deepest node `n` on
/// the path to `l` containing `x`, emits `n`'s priority and moves to the leftmost
/// leaf of the next sibling (cyclically) of the child of `n` towards `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionAutomaton {
    pub tuples: Vec<Ranks>,
    /// `next[leaf][tuple] = (leaf', priority)`.
    pub next: Vec<Vec<(usize, u32)>>,
    pub initial: usize,
    pub max_priority: u32,
}

impl ConditionAutomaton {
    pub fn from_tree(tree: &ZielonkaTree) -> ConditionAutomaton {
        let depth = tree.max_depth() as u32;
        let root_parity = if tree.nodes[0].winning { 0 } else { 1 };
        let base = if depth % 2 == root_parity { depth } else { depth + 1 };
        let priority = |n: usize| base - tree.nodes[n].depth as u32;
        let leaves: Vec<usize> = (0..tree.nodes.len())
            .filter(|&n| tree.nodes[n].children.is_empty())
            .collect();
        let leaf_id: HashMap<usize, usize> = leaves.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut next = Vec::with_capacity(leaves.len());
        for &leaf in &leaves {
            let path = tree.path_to(leaf);
            let row = (0..tree.tuples.len())
                .map(|x| {
                    let i = path
                        .iter()
                        .rposition(|&n| tree.nodes[n].label.binary_search(&x).is_ok())
                        .expect("root contains every tuple");
                    let n = path[i];
                    if n == leaf {
                        return (leaf_id[&leaf], priority(n));
                    }
                    let child = path[i + 1];
                    let sibs = &tree.nodes[n].children;
                    let pos = sibs.iter().position(|&c| c == child).unwrap();
                    let sib = sibs[(pos + 1) % sibs.len()];
                    (leaf_id[&tree.leftmost_leaf(sib)], priority(n))
                })
                .collect();
            next.push(row);
        }
        ConditionAutomaton {
            tuples: tree.tuples.clone(),
            next,
            initial: leaf_id[&tree.leftmost_leaf(0)],
            max_priority: base,
        }
    }

    pub fn build(obj: &Objective, tuples: Vec<Ranks>) -> ConditionAutomaton {
        ConditionAutomaton::from_tree(&ZielonkaTree::build(obj, tuples))
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn tuple_index(&self, t: &Ranks) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    /// Acceptance of `prefix · period^ω` over tuple indices, by direct simulation.
    pub fn accepts(&self, prefix: &[usize], period: &[usize]) -> bool {
        assert!(!period.is_empty());
        let mut s = self.initial;
        for &x in prefix {
            s = self.next[s][x].0;
        }
        let mut seen = vec![usize::MAX; self.num_states()];
        let mut maxima = Vec::new();
        loop {
            if seen[s] != usize::MAX {
                let m = maxima[seen[s]..].iter().copied().max().unwrap();
                return m % 2 == 0;
            }
            seen[s] = maxima.len();
            let mut m = 0;
            for &x in period {
                let (t, p) = self.next[s][x];
                m = m.max(p);
                s = t;
            }
            maxima.push(m);
        }
    }
}

/// Product of an arena with the condition automaton of its objective: a single
/// channel parity game whose position `i` stands for `positions[i] = (v, leaf)`.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub game: Arena,
    pub positions: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
    /// Original arena edge behind each product edge.
    pub edge_origin: Vec<usize>,
    pub condition: ConditionAutomaton,
}

impl Compiled {
    /// Product position of `(v, initial leaf)`.
    pub fn entry(&self, v: usize) -> usize {
        self.index[&(v, self.condition.initial)]
    }
}

/// Builds the product reachable from every `(v, initial leaf)`.
pub fn compile_objective(arena: &Arena, obj: &Objective) -> Compiled {
    let tuples = arena.occurring_tuples();
    let condition = if tuples.is_empty() {
        // No edges at all; any one-tuple automaton will do.
        let zero: Ranks = arena.channels().iter().map(|c| c.0).collect();
        ConditionAutomaton::build(obj, vec![zero])
    } else {
        ConditionAutomaton::build(obj, tuples)
    };
    let edge_tuple: Vec<usize> = arena
        .edges()
        .iter()
        .map(|e| condition.tuple_index(&e.colors).unwrap())
        .collect();
    let mut game = Arena::new(
        format!("{}_parity", arena.name),
        vec![(0, condition.max_priority)],
    );
    let mut positions = Vec::new();
    let mut index = HashMap::new();
    let mut edge_origin = Vec::new();
    for v in 0..arena.num_positions() {
        let key = (v, condition.initial);
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
            e.insert(positions.len());
            positions.push(key);
            game.add_position(arena.owner(v));
        }
    }
    let mut i = 0;
    while i < positions.len() {
        let (v, leaf) = positions[i];
        for &e in arena.out_edges(v) {
            let (leaf2, p) = condition.next[leaf][edge_tuple[e]];
            let key = (arena.edge(e).dst, leaf2);
            let dst = *index.entry(key).or_insert_with(|| {
                positions.push(key);
                game.add_position(arena.owner(key.0))
            });
            game.add_edge1(i, dst, p);
            edge_origin.push(e);
        }
        i += 1;
    }
    game.initial = index[&(arena.initial.min(arena.num_positions().saturating_sub(1)), condition.initial)];
    Compiled {
        game,
        positions,
        index,
        edge_origin,
        condition,
    }
}
