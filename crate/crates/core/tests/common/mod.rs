//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod dd;

use monogamy_core::graph::CommutationGraph;
use num_rational::BigRational;
use num_traits::Zero;

fn adjacent(g: &CommutationGraph, u: usize, v: usize) -> bool {
    g.adjacent(u, v)
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn is_independent(g: &CommutationGraph, mask: u64) -> bool {
    let vs = members(mask, g.len());
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !adjacent(g, u, v)))
}

pub fn is_clique(g: &CommutationGraph, mask: u64) -> bool {
    let vs = members(mask, g.len());
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| adjacent(g, u, v)))
}

/// Maximum independent set size over all `2^n` subsets.
pub fn alpha(g: &CommutationGraph) -> usize {
    (0..1u64 << g.len())
        .filter(|&m| is_independent(g, m))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Minimum partition into cliques by dynamic programming over subsets.
pub fn clique_cover(g: &CommutationGraph) -> usize {
    let n = g.len();
    let full = (1u64 << n) - 1;
    let cliques: Vec<bool> = (0..=full).map(|m| is_clique(g, m)).collect();
    let mut best = vec![usize::MAX; (full + 1) as usize];
    best[0] = 0;
    for m in 1..=full {
        let low = m & m.wrapping_neg();
        let rest = m & !low;
        // Subsets of `rest`, each joined with the lowest vertex.
        let mut sub = rest;
        loop {
            let part = sub | low;
            if cliques[part as usize] {
                let prev = best[(m & !part) as usize];
                if prev != usize::MAX {
                    best[m as usize] = best[m as usize].min(prev + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Whether the induced subgraph on `mask` is a single cycle.
fn induces_cycle(g: &CommutationGraph, mask: u64) -> bool {
    let vs = members(mask, g.len());
    if vs.len() < 3 {
        return false;
    }
    if !vs
        .iter()
        .all(|&u| vs.iter().filter(|&&v| v != u && adjacent(g, u, v)).count() == 2)
    {
        return false;
    }
    // 2-regular and connected means a single cycle.
    let mut seen = 1u64 << vs[0];
    let mut stack = vec![vs[0]];
    while let Some(u) = stack.pop() {
        for &v in &vs {
            if seen >> v & 1 == 0 && adjacent(g, u, v) {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    seen == mask
}

/// No induced cycle of length at least 4, checked over every vertex subset.
pub fn is_chordal(g: &CommutationGraph) -> bool {
    !(0..1u64 << g.len()).any(|m| m.count_ones() >= 4 && induces_cycle(g, m))
}

pub fn is_induced_cycle(g: &CommutationGraph, cycle: &[usize]) -> bool {
    let mask = cycle.iter().fold(0u64, |m, &v| m | 1 << v);
    mask.count_ones() as usize == cycle.len()
        && cycle.len() >= 4
        && induces_cycle(g, mask)
        && (0..cycle.len()).all(|i| adjacent(g, cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// All maximal cliques, as sorted vertex lists in sorted order.
pub fn maximal_cliques(g: &CommutationGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let full = (1u64 << n) - 1;
    let mut out: Vec<Vec<usize>> = (1..=full)
        .filter(|&m| is_clique(g, m) && (0..n).all(|v| m >> v & 1 == 1 || !is_clique(g, m | 1 << v)))
        .map(|m| members(m, n))
        .collect();
    out.sort();
    out
}

/// Deterministic assignments respecting exclusivity, maximizing a weighted sum.
pub fn classical_max(g: &CommutationGraph, weights: &[BigRational]) -> BigRational {
    let n = g.len();
    let excl: Vec<(usize, usize)> = g.edges().filter(|e| e.2).map(|(u, v, _)| (u, v)).collect();
    (0..1u64 << n)
        .filter(|&a| excl.iter().all(|&(u, v)| a >> u & 1 == 0 || a >> v & 1 == 0))
        .map(|a| {
            (0..n)
                .filter(|&v| a >> v & 1 == 1)
                .map(|v| weights[v].clone())
                .sum::<BigRational>()
        })
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
}
