use super::{bits, CommutationGraph};
use crate::error::Result;
use crate::limits::Limits;

/// Greedy sequential coloring of `cand`; returns vertices sorted by color
/// together with the (1-based) color of each, used as the clique bound.
fn color_sort(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<u32>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0u32;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

fn expand(adj: &[u64], current: u64, mut cand: u64, best: &mut u64) {
    let (order, colors) = color_sort(adj, cand);
    for i in (0..order.len()).rev() {
        if current.count_ones() + colors[i] <= best.count_ones() {
            return;
        }
        let v = order[i];
        let next = current | 1 << v;
        let next_cand = cand & adj[v];
        if next_cand == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand(adj, next, next_cand, best);
        }
        cand &= !(1 << v);
    }
}

/// Maximum clique inside `mask`: branch and bound with a greedy coloring bound.
pub(crate) fn max_clique_in(adj: &[u64], mask: u64) -> u64 {
    let mut best = 0u64;
    if mask != 0 {
        expand(adj, 0, mask, &mut best);
    }
    best
}

pub(crate) fn complement_adjacency(adj: &[u64], mask: u64) -> Vec<u64> {
    (0..adj.len())
        .map(|v| {
            if mask >> v & 1 == 1 {
                mask & !adj[v] & !(1 << v)
            } else {
                0
            }
        })
        .collect()
}

/// Maximum independent set inside `mask` (a maximum clique of the complement).
pub(crate) fn max_independent_set_in(adj: &[u64], mask: u64) -> u64 {
    max_clique_in(&complement_adjacency(adj, mask), mask)
}

/// Exact independence number with one maximum independent set (vertex indices).
pub fn independence_number(g: &CommutationGraph, limits: &Limits) -> Result<(usize, Vec<usize>)> {
    Limits::check("independence number", g.len(), limits.exact)?;
    let set = max_independent_set_in(g.adjacency(), g.all());
    Ok((set.count_ones() as usize, bits(set).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::mask_of;

    fn alpha(g: &CommutationGraph) -> usize {
        independence_number(g, &Limits::default()).unwrap().0
    }

    #[test]
    fn pentagon_alpha_two() {
        let g = fixtures::pentagon();
        let (value, witness) = independence_number(&g, &Limits::default()).unwrap();
        assert_eq!(value, 2);
        assert!(g.is_independent(mask_of(witness.iter().copied())));
        assert_eq!(witness.len(), 2);
    }

    #[test]
    fn complete_alpha_one() {
        for n in 1..8 {
            assert_eq!(alpha(&fixtures::complete(n)), 1);
        }
        assert_eq!(alpha(&CommutationGraph::new()), 0);
    }

    #[test]
    fn fig1_alpha_four() {
        // Brute force over all 2^10 subsets.
        let g = fixtures::fig1();
        let brute = (0u64..1 << 10)
            .filter(|&m| g.is_independent(m))
            .map(|m| m.count_ones())
            .max()
            .unwrap();
        assert_eq!(brute, 4);
        assert_eq!(alpha(&g), 4);
    }

    #[test]
    fn size_limit() {
        let g = fixtures::pentagon();
        let err = independence_number(&g, &Limits::uniform(4)).unwrap_err();
        assert!(err.is_size_limit());
    }

    #[test]
    fn max_clique_on_two_pentagons_complete() {
        let g = fixtures::two_pentagons_complete();
        assert_eq!(max_clique_in(g.adjacency(), g.all()).count_ones(), 4);
        assert_eq!(alpha(&g), 2);
    }
}
