//! Random commutation graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{bits, CommutationGraph};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Erdős–Rényi graph; each edge present with probability `p` and exclusive
/// with probability `exclusive`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, exclusive: f64, rng: &mut R) -> CommutationGraph {
    let mut g = CommutationGraph::with_vertices(&labels(n)).expect("distinct labels");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let excl = rng.gen_bool(exclusive);
                g.add_edge(u, v, excl).expect("fresh edge");
            }
        }
    }
    g
}

/// Adds the fill-in edges of eliminating vertices in `order`, which makes
/// `order` a perfect elimination ordering. New edges are non-exclusive.
pub fn chordal_completion(g: &CommutationGraph, order: &[usize]) -> CommutationGraph {
    let mut out = g.clone();
    let mut eliminated = 0u64;
    for &v in order {
        let later = out.neighbors(v) & !eliminated;
        let nbrs: Vec<usize> = bits(later).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !out.adjacent(a, b) {
                    out.add_edge(a, b, false).expect("fresh edge");
                }
            }
        }
        eliminated |= 1 << v;
    }
    out
}

/// Chordal completion of a random graph along a random order.
pub fn random_chordal_graph<R: Rng + ?Sized>(n: usize, p: f64, exclusive: f64, rng: &mut R) -> CommutationGraph {
    let g = random_graph(n, p, exclusive, rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    chordal_completion(&g, &order)
}
