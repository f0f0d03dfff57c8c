use std::collections::VecDeque;

use serde::Serialize;

use super::{bits, CommutationGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordalityResult {
    pub chordal: bool,
    /// Perfect elimination ordering (vertex indices), present iff chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elimination_order: Option<Vec<usize>>,
    /// Induced cycle of length at least 4, present iff not chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Vec<usize>>,
}

/// Maximum cardinality search starting from `start`; returns the visiting
/// order. Ties go to the lowest vertex index. The reverse of the visiting
/// order is a perfect elimination ordering iff the graph is chordal.
pub fn maximum_cardinality_search(g: &CommutationGraph, start: usize) -> Vec<usize> {
    let n = g.len();
    let mut weight = vec![0usize; n];
    let mut visited = 0u64;
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = if step == 0 && start < n {
            start
        } else {
            (0..n)
                .filter(|&v| visited >> v & 1 == 0)
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex remains")
        };
        visited |= 1 << v;
        order.push(v);
        for w in bits(g.neighbors(v) & !visited) {
            weight[w] += 1;
        }
    }
    order
}

/// For each vertex, its neighbors that come later in `order` form a clique.
pub fn is_perfect_elimination_order(g: &CommutationGraph, order: &[usize]) -> bool {
    if order.len() != g.len() || super::mask_of(order.iter().copied()) != g.all() {
        return false;
    }
    let mut later = g.all();
    for &v in order {
        later &= !(1 << v);
        if !g.is_clique(g.neighbors(v) & later) {
            return false;
        }
    }
    true
}

/// Finds an induced cycle of length at least 4, or `None` when the graph is
/// chordal. For each vertex `v` and pair of non-adjacent neighbors `u`, `w`,
/// a shortest `u`-`w` path avoiding `v` and all other neighbors of `v` closes
/// a chordless cycle through `v`; every chordless cycle yields such a triple.
pub fn find_induced_cycle(g: &CommutationGraph) -> Option<Vec<usize>> {
    let adj = g.adjacency();
    for v in 0..g.len() {
        let nv = adj[v];
        for u in bits(nv) {
            for w in bits(nv & !adj[u] & !((1u64 << (u + 1)) - 1)) {
                let allowed = g.all() & !(1 << v) & !(nv & !(1 << u) & !(1 << w));
                if let Some(path) = shortest_path(adj, allowed, u, w) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(adj: &[u64], allowed: u64, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut seen = 1u64 << from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in bits(adj[x] & allowed & !seen) {
            seen |= 1 << y;
            prev[y] = x;
            queue.push_back(y);
        }
    }
    None
}

/// Decides chordality via maximum cardinality search plus a perfect
/// elimination check, with a certificate either way.
pub fn is_chordal(g: &CommutationGraph) -> ChordalityResult {
    let mut order = maximum_cardinality_search(g, 0);
    order.reverse();
    if is_perfect_elimination_order(g, &order) {
        ChordalityResult {
            chordal: true,
            elimination_order: Some(order),
            witness_cycle: None,
        }
    } else {
        let cycle = find_induced_cycle(g).expect("MCS failure implies an induced cycle");
        ChordalityResult {
            chordal: false,
            elimination_order: None,
            witness_cycle: Some(cycle),
        }
    }
}

/// Chordality of the subgraph induced by `mask`, on raw adjacency.
pub(crate) fn is_chordal_in(adj: &[u64], mask: u64) -> bool {
    // MCS restricted to `mask`, then PEO check on the reverse order.
    let mut weight = [0u8; 64];
    let mut visited = 0u64;
    let mut order = [0usize; 64];
    let k = mask.count_ones() as usize;
    for slot in order.iter_mut().take(k) {
        let mut best = usize::MAX;
        for v in bits(mask & !visited) {
            if best == usize::MAX || weight[v] > weight[best] {
                best = v;
            }
        }
        visited |= 1 << best;
        *slot = best;
        for w in bits(adj[best] & mask & !visited) {
            weight[w] += 1;
        }
    }
    // Earlier-visited neighbors of each vertex must form a clique.
    let mut earlier = 0u64;
    for &v in order.iter().take(k) {
        let nb = adj[v] & earlier;
        if bits(nb).any(|x| nb & !(1 << x) & !adj[x] != 0) {
            return false;
        }
        earlier |= 1 << v;
    }
    true
}
