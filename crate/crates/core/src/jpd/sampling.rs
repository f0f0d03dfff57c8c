//! Random noncontextual behaviors for tests and scans.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Behavior;
use crate::graph::CommutationGraph;
use crate::rational::{ratio, Rational};

/// Uniformly random 0/1 assignment that never sets both ends of an
/// exclusive edge to 1. Vertices are visited in random order and each is set
/// to 1 with probability 1/2 when no exclusive neighbor already is.
pub fn random_exclusive_assignment<R: Rng + ?Sized>(g: &CommutationGraph, rng: &mut R) -> u64 {
    let excl = g.exclusive_adjacency();
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.shuffle(rng);
    let mut ones = 0u64;
    for v in order {
        if excl[v] & ones == 0 && rng.gen_bool(0.5) {
            ones |= 1 << v;
        }
    }
    ones
}

/// Mixture of `k` random deterministic assignments with integer weights in
/// `1..=10`, normalized. Consistent by construction.
pub fn random_consistent_behavior<R: Rng + ?Sized>(
    g: &CommutationGraph,
    contexts: &[u64],
    k: usize,
    rng: &mut R,
) -> Behavior {
    let k = k.max(1);
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = weights.iter().sum();
    let parts: Vec<(Rational, Behavior)> = weights
        .iter()
        .map(|&w| {
            let a = random_exclusive_assignment(g, rng);
            (ratio(w, total), Behavior::deterministic(g.len(), contexts, a))
        })
        .collect();
    Behavior::mixture(&parts)
}
