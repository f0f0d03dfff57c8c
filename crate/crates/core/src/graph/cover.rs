use serde::Serialize;

use super::independence::{complement_adjacency, max_clique_in};
use super::{bits, mask_of, CommutationGraph};
use crate::error::Result;
use crate::limits::Limits;

/// A partition of the vertex set into cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.cliques.iter().map(|c| mask_of(c.iter().copied())).collect()
    }

    /// Disjoint, covering, and every part a clique.
    pub fn is_valid_for(&self, g: &CommutationGraph) -> bool {
        let mut seen = 0u64;
        for m in self.masks() {
            if m == 0 || m & seen != 0 || !g.is_clique(m) {
                return false;
            }
            seen |= m;
        }
        seen == g.all()
    }

    pub fn labelled(&self, g: &CommutationGraph) -> Vec<Vec<String>> {
        self.cliques
            .iter()
            .map(|c| c.iter().map(|&v| g.label(v).to_string()).collect())
            .collect()
    }
}

struct Colorer<'a> {
    h: &'a [u64],
    mask: u64,
    classes: Vec<u64>,
    best: Vec<u64>,
    lower: usize,
}

impl Colorer<'_> {
    fn pick(&self, colored: u64) -> usize {
        let mut best = (0usize, 0u32, usize::MAX);
        for v in bits(self.mask & !colored) {
            let sat = self.classes.iter().filter(|&&c| c & self.h[v] != 0).count();
            let deg = (self.h[v] & self.mask & !colored).count_ones();
            if best.2 == usize::MAX || (sat, deg) > (best.0, best.1) {
                best = (sat, deg, v);
            }
        }
        best.2
    }

    fn search(&mut self, colored: u64) {
        if self.best.len() == self.lower {
            return;
        }
        if colored == self.mask {
            if self.classes.len() < self.best.len() {
                self.best = self.classes.clone();
            }
            return;
        }
        if self.classes.len() >= self.best.len() {
            return;
        }
        let v = self.pick(colored);
        for c in 0..self.classes.len() {
            if self.classes[c] & self.h[v] == 0 {
                self.classes[c] |= 1 << v;
                self.search(colored | 1 << v);
                self.classes[c] &= !(1 << v);
            }
        }
        if self.classes.len() + 1 < self.best.len() {
            self.classes.push(1 << v);
            self.search(colored | 1 << v);
            self.classes.pop();
        }
    }
}

/// Greedy DSATUR coloring of `h` on `mask`; the initial upper bound.
fn dsatur(h: &[u64], mask: u64) -> Vec<u64> {
    let mut c = Colorer {
        h,
        mask,
        classes: Vec::new(),
        best: Vec::new(),
        lower: 0,
    };
    let mut colored = 0u64;
    while colored != mask {
        let v = c.pick(colored);
        match c.classes.iter().position(|&cl| cl & h[v] == 0) {
            Some(i) => c.classes[i] |= 1 << v,
            None => c.classes.push(1 << v),
        }
        colored |= 1 << v;
    }
    c.classes
}

/// Minimum partition of `mask` into cliques of `adj`, as an exact coloring of
/// the complement. Cliques are ordered by their lowest vertex.
pub(crate) fn min_clique_cover_in(adj: &[u64], mask: u64) -> Vec<u64> {
    if mask == 0 {
        return Vec::new();
    }
    let h = complement_adjacency(adj, mask);
    let lower = max_clique_in(&h, mask).count_ones() as usize;
    let greedy = dsatur(&h, mask);
    let mut c = Colorer {
        h: &h,
        mask,
        classes: Vec::new(),
        best: greedy,
        lower,
    };
    c.search(0);
    let mut cover = c.best;
    cover.sort_by_key(|m| m.trailing_zeros());
    cover
}

/// Exact vertex clique cover number with one optimal cover.
pub fn clique_cover_number(g: &CommutationGraph, limits: &Limits) -> Result<(usize, CliqueCover)> {
    Limits::check("clique cover number", g.len(), limits.exact)?;
    let cover = min_clique_cover_in(g.adjacency(), g.all());
    let cliques: Vec<Vec<usize>> = cover.iter().map(|&m| bits(m).collect()).collect();
    Ok((cliques.len(), CliqueCover { cliques }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn as_label_sets(g: &CommutationGraph, cover: &CliqueCover) -> BTreeSet<BTreeSet<String>> {
        cover.labelled(g).into_iter().map(|c| c.into_iter().collect()).collect()
    }

    fn set(labels: &[&str]) -> BTreeSet<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fig1_cover_is_the_two_triangles_and_two_edges() {
        let g = fixtures::fig1();
        let (value, cover) = clique_cover_number(&g, &Limits::default()).unwrap();
        assert_eq!(value, 4);
        assert!(cover.is_valid_for(&g));
        let expected: BTreeSet<_> = [
            set(&["A1", "A'1", "A'2"]),
            set(&["A4", "A5", "A'5"]),
            set(&["A2", "A3"]),
            set(&["A'3", "A'4"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(as_label_sets(&g, &cover), expected);
    }

    #[test]
    fn pentagon_needs_three() {
        let g = fixtures::pentagon();
        let (value, cover) = clique_cover_number(&g, &Limits::default()).unwrap();
        assert_eq!(value, 3);
        assert!(cover.is_valid_for(&g));
        let mut sizes: Vec<_> = cover.cliques.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn complete_needs_one() {
        for n in 1..7 {
            let (value, _) = clique_cover_number(&fixtures::complete(n), &Limits::default()).unwrap();
            assert_eq!(value, 1);
        }
    }

    #[test]
    fn other_fixtures() {
        let limits = Limits::default();
        assert_eq!(clique_cover_number(&fixtures::fig3b(), &limits).unwrap().0, 4);
        let (v, cover) = clique_cover_number(&fixtures::two_pentagons_complete(), &limits).unwrap();
        assert_eq!(v, 3);
        assert!(cover.is_valid_for(&fixtures::two_pentagons_complete()));
        assert_eq!(
            clique_cover_number(&fixtures::two_pentagons(&[]), &limits).unwrap().0,
            6
        );
        assert_eq!(clique_cover_number(&CommutationGraph::new(), &limits).unwrap().0, 0);
    }

    #[test]
    fn invalid_covers_detected() {
        let g = fixtures::pentagon();
        let overlapping = CliqueCover {
            cliques: vec![vec![0, 1], vec![1, 2], vec![3, 4]],
        };
        assert!(!overlapping.is_valid_for(&g));
        let not_clique = CliqueCover {
            cliques: vec![vec![0, 2], vec![1], vec![3, 4]],
        };
        assert!(!not_clique.is_valid_for(&g));
        let partial = CliqueCover {
            cliques: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(!partial.is_valid_for(&g));
    }
}
