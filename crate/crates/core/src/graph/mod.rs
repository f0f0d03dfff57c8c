//! Commutation graphs and the exact algorithms run on them.
//!
//! Vertices are measurements, identified by insertion index; vertex sets are
//! `u64` bitmasks (bit `i` is the `i`-th inserted vertex), which caps a graph
//! at [`MAX_VERTICES`] vertices. Every algorithm breaks ties by insertion
//! order so witnesses are reproducible.

mod chordal;
mod cliques;
mod cover;
mod decomposition;
mod independence;

pub use chordal::{
    find_induced_cycle, is_chordal, is_perfect_elimination_order, maximum_cardinality_search, ChordalityResult,
};
pub use cliques::maximal_cliques;
pub use cover::{clique_cover_number, CliqueCover};
pub use decomposition::{chordal_decomposition_search, ChordalDecomposition};
pub use independence::independence_number;

pub(crate) use chordal::is_chordal_in;
pub(crate) use cover::min_clique_cover_in;
pub(crate) use independence::max_independent_set_in;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Iterates the set bits of `mask` in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |m, i| m | (1u64 << i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
    /// Keyed by `(u, v)` with `u < v`; the key set is the edge set.
    exclusive: BTreeMap<(usize, usize), bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeEntry>,
}

#[derive(Serialize, Deserialize)]
struct EdgeEntry {
    u: String,
    v: String,
    #[serde(default = "default_exclusive")]
    exclusive: bool,
}

fn default_exclusive() -> bool {
    true
}

impl Default for CommutationGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl CommutationGraph {
    pub fn new() -> Self {
        CommutationGraph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            exclusive: BTreeMap::new(),
        }
    }

    /// Graph on the given labels with no edges.
    pub fn with_vertices<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut g = Self::new();
        for label in labels {
            g.add_vertex(label.as_ref())?;
        }
        Ok(g)
    }

    /// Convenience builder used by fixtures and tests: `edges` are label pairs,
    /// all with the same exclusivity flag.
    pub fn from_edges<S: AsRef<str>>(labels: &[S], edges: &[(S, S)], exclusive: bool) -> Result<Self> {
        let mut g = Self::with_vertices(labels)?;
        for (u, v) in edges {
            g.add_edge_by_label(u.as_ref(), v.as_ref(), exclusive)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        let location = format!("vertices[{}]", self.labels.len());
        if self.index.contains_key(label) {
            return Err(Error::DuplicateVertex {
                label: label.to_string(),
                location,
            });
        }
        if self.labels.len() >= MAX_VERTICES {
            return Err(Error::SizeLimit {
                operation: "graph construction",
                size: self.labels.len() + 1,
                limit: MAX_VERTICES,
            });
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.adj.push(0);
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, exclusive: bool) -> Result<()> {
        let location = format!("edges[{}]", self.exclusive.len());
        self.insert_edge(u, v, exclusive, location)
    }

    pub fn add_edge_by_label(&mut self, u: &str, v: &str, exclusive: bool) -> Result<()> {
        let location = format!("edges[{}]", self.exclusive.len());
        let a = self.resolve(u, &location)?;
        let b = self.resolve(v, &location)?;
        self.insert_edge(a, b, exclusive, location)
    }

    fn resolve(&self, label: &str, location: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex {
            label: label.to_string(),
            location: location.to_string(),
        })
    }

    fn insert_edge(&mut self, u: usize, v: usize, exclusive: bool, location: String) -> Result<()> {
        let n = self.labels.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::UnknownVertex {
                    label: format!("#{w}"),
                    location,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop {
                label: self.labels[u].clone(),
                location,
            });
        }
        let key = (u.min(v), u.max(v));
        if self.exclusive.contains_key(&key) {
            return Err(Error::DuplicateEdge {
                u: self.labels[u].clone(),
                v: self.labels[v].clone(),
                location,
            });
        }
        self.exclusive.insert(key, exclusive);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let mut g = Self::with_vertices(&file.vertices)?;
        for (i, e) in file.edges.iter().enumerate() {
            let location = format!("edges[{i}]");
            let u = g.resolve(&e.u, &location)?;
            let v = g.resolve(&e.v, &location)?;
            g.insert_edge(u, v, e.exclusive, location)?;
        }
        Ok(g)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .map(|(u, v, exclusive)| EdgeEntry {
                    u: self.labels[u].clone(),
                    v: self.labels[v].clone(),
                    exclusive,
                })
                .collect(),
        };
        serde_json::to_value(file).expect("graph serializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.exclusive.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Bitmask of the named vertices; unknown labels are an error.
    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for (i, l) in labels.iter().enumerate() {
            let v = self.resolve(l.as_ref(), &format!("vertex set[{i}]"))?;
            mask |= 1 << v;
        }
        Ok(mask)
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|v| self.labels[v].clone()).collect()
    }

    pub fn all(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.labels.len()) - 1
        }
    }

    /// Adjacency bitmasks indexed by vertex.
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// `Some(flag)` when `u`-`v` is an edge.
    pub fn is_exclusive(&self, u: usize, v: usize) -> Option<bool> {
        self.exclusive.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edges as `(u, v, exclusive)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.exclusive.iter().map(|(&(u, v), &x)| (u, v, x))
    }

    /// For each vertex, the neighbors joined by an exclusive edge.
    pub fn exclusive_adjacency(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.len()];
        for (u, v, x) in self.edges() {
            if x {
                out[u] |= 1 << v;
                out[v] |= 1 << u;
            }
        }
        out
    }

    pub fn is_clique(&self, mask: u64) -> bool {
        bits(mask).all(|v| mask & !(1 << v) & !self.adj[v] == 0)
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    /// Complement graph on the same labels; every new edge is non-exclusive.
    pub fn complement(&self) -> Self {
        let mut g = Self::with_vertices(&self.labels).expect("labels already unique");
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v, false).expect("fresh edge");
                }
            }
        }
        g
    }

    /// Subgraph induced by the named vertices, keeping insertion order.
    pub fn induced_subgraph<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(self.induced_by_mask(self.mask_of_labels(labels)?))
    }

    pub fn induced_by_mask(&self, mask: u64) -> Self {
        let kept: Vec<usize> = bits(mask & self.all()).collect();
        let mut g = Self::with_vertices(&kept.iter().map(|&v| self.labels[v].as_str()).collect::<Vec<_>>())
            .expect("labels already unique");
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if let Some(x) = self.is_exclusive(u, v) {
                    g.add_edge(i, j, x).expect("fresh edge");
                }
            }
        }
        g
    }

    /// Same vertex set with every edge crossing between two parts removed.
    pub fn without_cross_edges(&self, parts: &[u64]) -> Self {
        let mut g = Self::with_vertices(&self.labels).expect("labels already unique");
        for (u, v, x) in self.edges() {
            if parts.iter().any(|&p| p >> u & 1 == 1 && p >> v & 1 == 1) {
                g.add_edge(u, v, x).expect("fresh edge");
            }
        }
        g
    }
}
