use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::JointDistribution;
use crate::error::{Error, Result};
use crate::graph::{bits, CommutationGraph};
use crate::rational::{self, Rational};

/// Spreads local assignment bits (bit `i` for `vertices[i]`) onto global bits.
pub fn scatter(local: usize, vertices: &[usize]) -> u64 {
    vertices
        .iter()
        .enumerate()
        .filter(|(i, _)| local >> i & 1 == 1)
        .fold(0, |acc, (_, &v)| acc | 1 << v)
}

/// Inverse of [`scatter`]: reads the bits of `vertices` out of a global assignment.
pub fn gather(global: u64, vertices: &[usize]) -> usize {
    vertices
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| acc | (((global >> v) & 1) as usize) << i)
}

/// Outcome distribution of one context; `table[a]` is the probability of
/// the local assignment `a` (bit `i` is the outcome of `vertices[i]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextTable {
    vertices: Vec<usize>,
    table: Vec<Rational>,
}

impl ContextTable {
    /// `vertices` must be sorted and `table` of length `2^len`.
    pub fn new(vertices: Vec<usize>, table: Vec<Rational>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(table.len(), 1 << vertices.len());
        ContextTable { vertices, table }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn mask(&self) -> u64 {
        crate::graph::mask_of(self.vertices.iter().copied())
    }

    /// Marginal on the vertices of `sub` (which must lie inside this
    /// context), indexed by local assignments of `bits(sub)`.
    pub fn marginal(&self, sub: u64) -> Vec<Rational> {
        debug_assert_eq!(sub & !self.mask(), 0);
        let target: Vec<usize> = bits(sub).collect();
        let mut out = vec![Rational::zero(); 1 << target.len()];
        for (a, p) in self.table.iter().enumerate() {
            if !p.is_zero() {
                out[gather(scatter(a, &self.vertices), &target)] += p;
            }
        }
        out
    }

    /// Probability that every vertex in `ones` reads 1 and every other vertex of
    /// `sub` reads 0.
    pub fn event(&self, sub: u64, ones: u64) -> Rational {
        let target: Vec<usize> = bits(sub).collect();
        self.marginal(sub)[gather(ones, &target)].clone()
    }
}

/// Per-context outcome tables over a fixed vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Behavior {
    num_vertices: usize,
    contexts: Vec<ContextTable>,
}

#[derive(Serialize, Deserialize)]
struct BehaviorFile {
    contexts: Vec<ContextEntry>,
}

#[derive(Serialize, Deserialize)]
struct ContextEntry {
    vertices: Vec<String>,
    table: BTreeMap<String, String>,
}

impl Behavior {
    pub fn new(num_vertices: usize, contexts: Vec<ContextTable>) -> Self {
        Behavior { num_vertices, contexts }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn contexts(&self) -> &[ContextTable] {
        &self.contexts
    }

    /// Deterministic behavior: each context table is a point mass on the
    /// restriction of `assignment`.
    pub fn deterministic(num_vertices: usize, contexts: &[u64], assignment: u64) -> Self {
        let tables = contexts
            .iter()
            .map(|&c| {
                let vertices: Vec<usize> = bits(c).collect();
                let mut table = vec![Rational::zero(); 1 << vertices.len()];
                table[gather(assignment, &vertices)] = Rational::one();
                ContextTable::new(vertices, table)
            })
            .collect();
        Behavior::new(num_vertices, tables)
    }

    /// Context marginals of a global distribution.
    pub fn from_joint(contexts: &[u64], jpd: &JointDistribution) -> Self {
        let tables = contexts
            .iter()
            .map(|&c| ContextTable::new(bits(c).collect(), jpd.marginal(c)))
            .collect();
        Behavior::new(jpd.num_vertices(), tables)
    }

    /// Convex combination `Σ w_i b_i`; all behaviors must share contexts.
    pub fn mixture(parts: &[(Rational, Behavior)]) -> Self {
        let (_, first) = &parts[0];
        let mut out = first.clone();
        for (ci, ctx) in out.contexts.iter_mut().enumerate() {
            for (a, slot) in ctx.table.iter_mut().enumerate() {
                *slot = parts.iter().map(|(w, b)| w * &b.contexts[ci].table[a]).sum();
            }
        }
        out
    }

    /// Marginal on `sub` read from the first context containing it.
    pub fn marginal(&self, sub: u64) -> Option<Vec<Rational>> {
        self.contexts
            .iter()
            .find(|c| sub & !c.mask() == 0)
            .map(|c| c.marginal(sub))
    }

    /// `p(v = 1)` from the first context containing `v`.
    pub fn probability_one(&self, v: usize) -> Option<Rational> {
        self.marginal(1 << v).map(|m| m[1].clone())
    }

    /// Re-expresses the behavior on new contexts, each of which must lie
    /// inside an existing one.
    pub fn restrict_to(&self, contexts: &[u64]) -> Result<Behavior> {
        let tables = contexts
            .iter()
            .map(|&c| {
                self.marginal(c)
                    .map(|t| ContextTable::new(bits(c).collect(), t))
                    .ok_or_else(|| {
                        Error::InvalidBehavior(format!(
                            "no context contains vertex set {:?}",
                            bits(c).collect::<Vec<_>>()
                        ))
                    })
            })
            .collect::<Result<_>>()?;
        Ok(Behavior::new(self.num_vertices, tables))
    }

    fn names(g: &CommutationGraph, mask: u64) -> Vec<String> {
        g.labels_of(mask)
    }

    /// Checks every behavior invariant against `g`: contexts are cliques,
    /// tables are normalized and nonnegative, exclusive pairs never both
    /// read 1, and overlapping contexts agree on their shared marginals.
    pub fn validate(&self, g: &CommutationGraph) -> Result<()> {
        if self.num_vertices != g.len() {
            return Err(Error::VertexMismatch(format!(
                "behavior has {} vertices, graph has {}",
                self.num_vertices,
                g.len()
            )));
        }
        let excl = g.exclusive_adjacency();
        for ctx in &self.contexts {
            let m = ctx.mask();
            let names = Self::names(g, m);
            if !g.is_clique(m) {
                return Err(Error::InvalidBehavior(format!(
                    "context {names:?} is not jointly measurable"
                )));
            }
            if ctx.table.iter().any(|p| p.is_negative()) {
                return Err(Error::InvalidBehavior(format!(
                    "negative probability in context {names:?}"
                )));
            }
            let total: Rational = ctx.table.iter().sum();
            if !total.is_one() {
                return Err(Error::InvalidBehavior(format!(
                    "context {names:?} sums to {}",
                    rational::format(&total)
                )));
            }
            for (a, p) in ctx.table.iter().enumerate() {
                let ones = scatter(a, &ctx.vertices);
                if !p.is_zero() && bits(ones).any(|v| excl[v] & ones != 0) {
                    return Err(Error::InvalidBehavior(format!(
                        "context {names:?} gives probability {} to an assignment with two exclusive outcomes",
                        rational::format(p)
                    )));
                }
            }
        }
        for (i, a) in self.contexts.iter().enumerate() {
            for b in &self.contexts[i + 1..] {
                let shared = a.mask() & b.mask();
                if shared != 0 && a.marginal(shared) != b.marginal(shared) {
                    return Err(Error::Inconsistent {
                        first: Self::names(g, a.mask()),
                        second: Self::names(g, b.mask()),
                        shared: Self::names(g, shared),
                    });
                }
            }
        }
        Ok(())
    }

    /// Parses the behavior JSON format; table keys are bit strings in the
    /// listed vertex order, missing keys are zero.
    pub fn from_json(g: &CommutationGraph, text: &str) -> Result<Self> {
        let file: BehaviorFile = serde_json::from_str(text)?;
        let mut contexts = Vec::with_capacity(file.contexts.len());
        for (ci, entry) in file.contexts.iter().enumerate() {
            let location = format!("contexts[{ci}]");
            let mut listed = Vec::with_capacity(entry.vertices.len());
            for label in &entry.vertices {
                let v = g.index_of(label).ok_or_else(|| Error::UnknownVertex {
                    label: label.clone(),
                    location: location.clone(),
                })?;
                if listed.contains(&v) {
                    return Err(Error::DuplicateVertex {
                        label: label.clone(),
                        location: location.clone(),
                    });
                }
                listed.push(v);
            }
            let mut sorted = listed.clone();
            sorted.sort_unstable();
            let mut table = vec![Rational::zero(); 1 << sorted.len()];
            for (key, value) in &entry.table {
                if key.len() != listed.len() || !key.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(Error::Parse(format!(
                        "{location}: table key `{key}` must be a bit string of length {}",
                        listed.len()
                    )));
                }
                let ones = key
                    .bytes()
                    .zip(&listed)
                    .filter(|(b, _)| *b == b'1')
                    .fold(0u64, |acc, (_, &v)| acc | 1 << v);
                table[gather(ones, &sorted)] = rational::parse(value)?;
            }
            contexts.push(ContextTable::new(sorted, table));
        }
        Ok(Behavior::new(g.len(), contexts))
    }

    pub fn to_json_value(&self, g: &CommutationGraph) -> serde_json::Value {
        let file = BehaviorFile {
            contexts: self
                .contexts
                .iter()
                .map(|ctx| ContextEntry {
                    vertices: ctx.vertices.iter().map(|&v| g.label(v).to_string()).collect(),
                    table: ctx
                        .table
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(a, p)| (bit_string(a, ctx.vertices.len()), rational::format(p)))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(file).expect("behavior serializes")
    }
}

/// `"10"` for local assignment 0b01 over two vertices: character `i` is bit `i`.
pub fn bit_string(local: usize, len: usize) -> String {
    (0..len).map(|i| if local >> i & 1 == 1 { '1' } else { '0' }).collect()
}
