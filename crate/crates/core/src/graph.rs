//! Small graph utilities shared by lasso membership and strategy verification.

/// Strongly connected component id of every node, computed with an iterative Tarjan
/// over `adj`. Nodes with `active[v] == false` get `usize::MAX`.
pub fn scc_ids(adj: &[Vec<usize>], active: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Weighted edge list view used by [`cycle_with_max_weight`].
pub struct WeightedGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl WeightedGraph {
    /// Is there a cycle among `active` nodes that uses only edges of weight `≤ w`
    /// and at least one edge of weight exactly `w`?
    pub fn cycle_with_max_weight(&self, active: &[bool], w: u32) -> bool {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(u, v, x) in &self.edges {
            if x <= w && active[u] && active[v] {
                adj[u].push(v);
            }
        }
        let comp = scc_ids(&adj, active);
        self.edges.iter().any(|&(u, v, x)| {
            x == w && active[u] && active[v] && comp[u] != usize::MAX && comp[u] == comp[v]
        })
    }

    /// Weights that can be the maximum of some cycle among `active` nodes.
    pub fn cycle_maxima(&self, active: &[bool]) -> Vec<u32> {
        let mut ws: Vec<u32> = self.edges.iter().map(|e| e.2).collect();
        ws.sort_unstable();
        ws.dedup();
        ws.into_iter()
            .filter(|&w| self.cycle_with_max_weight(active, w))
            .collect()
    }
}

/// Nodes reachable from `start` along `adj`.
pub fn reachable(adj: &[Vec<usize>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = start.to_vec();
    for &s in start {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}
