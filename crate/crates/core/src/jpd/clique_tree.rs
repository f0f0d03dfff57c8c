use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, is_chordal, is_perfect_elimination_order, mask_of, CommutationGraph};

/// Junction forest over the maximal cliques of a chordal graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueTree {
    /// Maximal cliques as sorted vertex lists. A node's parent always has a
    /// smaller index, so index order is a topological order.
    pub nodes: Vec<Vec<usize>>,
    /// `(parent, child, separator)`.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

impl CliqueTree {
    pub fn node_masks(&self) -> Vec<u64> {
        self.nodes.iter().map(|c| mask_of(c.iter().copied())).collect()
    }

    pub fn parent_of(&self, node: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.1 == node).map(|e| e.0)
    }

    /// For every pair of nodes in the same tree, their intersection lies in
    /// every node on the path between them; nodes in different trees are
    /// disjoint.
    pub fn has_running_intersection(&self) -> bool {
        let masks = self.node_masks();
        let k = masks.len();
        let mut adj = vec![Vec::new(); k];
        for &(p, c, _) in &self.edges {
            adj[p].push(c);
            adj[c].push(p);
        }
        for s in 0..k {
            // Path from s to every node, tracking the intersection of nodes seen.
            let mut along = vec![None; k];
            along[s] = Some(masks[s]);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if along[y].is_none() {
                        along[y] = Some(along[x].unwrap() & masks[y]);
                        stack.push(y);
                    }
                }
            }
            for t in 0..k {
                let shared = masks[s] & masks[t];
                match along[t] {
                    Some(path) if path & shared != shared => return false,
                    None if shared != 0 => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

/// Clique tree from the certificate ordering of [`is_chordal`].
pub fn clique_tree(g: &CommutationGraph) -> Result<CliqueTree> {
    let res = is_chordal(g);
    match res.elimination_order {
        Some(order) => clique_tree_with_order(g, &order),
        None => Err(Error::NotChordal {
            cycle: res
                .witness_cycle
                .unwrap_or_default()
                .into_iter()
                .map(|v| g.label(v).to_string())
                .collect(),
        }),
    }
}

/// Clique tree from an explicit perfect elimination ordering.
///
/// Vertices are added in reverse elimination order. A new vertex's already
/// added neighbors `M` form a clique; if `M` is itself a current clique the
/// vertex joins it, otherwise `M ∪ {v}` becomes a new node hung below a
/// clique containing `M` (or a new root when `M` is empty).
pub fn clique_tree_with_order(g: &CommutationGraph, order: &[usize]) -> Result<CliqueTree> {
    if !is_perfect_elimination_order(g, order) {
        let res = is_chordal(g);
        if let Some(cycle) = res.witness_cycle {
            return Err(Error::NotChordal {
                cycle: cycle.into_iter().map(|v| g.label(v).to_string()).collect(),
            });
        }
        return Err(Error::InvalidBehavior(format!(
            "{order:?} is not a perfect elimination ordering"
        )));
    }
    let mut cliques: Vec<u64> = Vec::new();
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut added = 0u64;
    for &v in order.iter().rev() {
        let m = g.neighbors(v) & added;
        if m == 0 {
            cliques.push(1 << v);
        } else if let Some(i) = cliques.iter().position(|&c| c == m) {
            cliques[i] |= 1 << v;
        } else {
            let parent = cliques
                .iter()
                .position(|&c| c & m == m)
                .expect("earlier neighbors lie in a current clique");
            cliques.push(m | 1 << v);
            links.push((parent, cliques.len() - 1));
        }
        added |= 1 << v;
    }
    Ok(CliqueTree {
        nodes: cliques.iter().map(|&c| bits(c).collect()).collect(),
        edges: links
            .into_iter()
            .map(|(p, c)| (p, c, bits(cliques[p] & cliques[c]).collect()))
            .collect(),
    })
}
