use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{bits, is_chordal_in, max_independent_set_in, CommutationGraph};
use crate::error::Result;
use crate::limits::Limits;

/// A vertex partition into chordal induced subgraphs; edges between parts
/// are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordalDecomposition {
    pub parts: Vec<Vec<usize>>,
    /// Independence number of each part's induced subgraph.
    pub alphas: Vec<usize>,
}

impl ChordalDecomposition {
    pub fn total(&self) -> usize {
        self.alphas.iter().sum()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.parts.iter().map(|p| super::mask_of(p.iter().copied())).collect()
    }
}

struct Search<'a> {
    adj: &'a [u64],
    /// mask -> (chordal, alpha)
    info: HashMap<u64, (bool, u32)>,
    failed: HashSet<(u64, u32)>,
}

impl Search<'_> {
    fn info(&mut self, mask: u64) -> (bool, u32) {
        if let Some(&hit) = self.info.get(&mask) {
            return hit;
        }
        let value = (
            is_chordal_in(self.adj, mask),
            max_independent_set_in(self.adj, mask).count_ones(),
        );
        self.info.insert(mask, value);
        value
    }

    /// Partitions `mask` into chordal parts whose alphas sum to `target`.
    /// The part holding the lowest vertex is chosen first, larger subsets
    /// (by bitmask value) before smaller ones. Any partition has alpha-sum
    /// between alpha(mask) and |mask|, which prunes both ends.
    fn solve(&mut self, mask: u64, target: u32) -> Option<Vec<u64>> {
        if mask == 0 {
            return (target == 0).then(Vec::new);
        }
        if target > mask.count_ones() || self.failed.contains(&(mask, target)) {
            return None;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let part = low | sub;
            let (chordal, alpha) = self.info(part);
            if chordal && alpha <= target {
                let remaining = mask & !part;
                let need = target - alpha;
                let feasible = need <= remaining.count_ones() && (remaining == 0 || self.info(remaining).1 <= need);
                if feasible {
                    if let Some(mut parts) = self.solve(remaining, need) {
                        parts.insert(0, part);
                        return Some(parts);
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        self.failed.insert((mask, target));
        None
    }
}

/// Exhaustive search for a partition of the vertices into chordal induced
/// subgraphs whose independence numbers sum to exactly `target`.
pub fn chordal_decomposition_search(
    g: &CommutationGraph,
    target: usize,
    limits: &Limits,
) -> Result<Option<ChordalDecomposition>> {
    Limits::check("chordal decomposition search", g.len(), limits.decomposition)?;
    let mut search = Search {
        adj: g.adjacency(),
        info: HashMap::new(),
        failed: HashSet::new(),
    };
    let Ok(target32) = u32::try_from(target) else {
        return Ok(None);
    };
    Ok(search.solve(g.all(), target32).map(|masks| {
        let alphas = masks.iter().map(|&m| search.info(m).1 as usize).collect();
        ChordalDecomposition {
            parts: masks.iter().map(|&m| bits(m).collect()).collect(),
            alphas,
        }
    }))
}
