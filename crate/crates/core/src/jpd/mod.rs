//! Global joint distributions for chordal commutation graphs.
//!
//! [`construct_jpd`] builds the distribution as a clique-tree factorization,
//! the product of clique marginals divided by the product of separator
//! marginals, with `0/0 = 0`. [`jpd_exists_lp`] is an independent oracle
//! that decides by exact LP whether any global distribution reproduces a
//! behavior, for arbitrary graphs.

mod behavior;
mod clique_tree;
pub mod sampling;

pub use behavior::{bit_string, gather, scatter, Behavior, ContextTable};
pub use clique_tree::{clique_tree, clique_tree_with_order, CliqueTree};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, mask_of, CommutationGraph};
use crate::limits::Limits;
use crate::lp::LinearProgram;
use crate::rational::{self, Rational};

/// Distribution over full 0/1 assignments; bit `v` of a key is the outcome
/// of vertex `v`. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    num_vertices: usize,
    support: BTreeMap<u64, Rational>,
}

impl JointDistribution {
    pub fn new(num_vertices: usize, support: BTreeMap<u64, Rational>) -> Self {
        let support = support.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        JointDistribution { num_vertices, support }
    }

    pub fn point_mass(num_vertices: usize, assignment: u64) -> Self {
        Self::new(num_vertices, BTreeMap::from([(assignment, Rational::one())]))
    }

    pub fn uniform(num_vertices: usize) -> Self {
        let p = Rational::new(1.into(), (1u64 << num_vertices).into());
        Self::new(
            num_vertices,
            (0..1u64 << num_vertices).map(|a| (a, p.clone())).collect(),
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn support(&self) -> &BTreeMap<u64, Rational> {
        &self.support
    }

    pub fn probability(&self, assignment: u64) -> Rational {
        self.support.get(&assignment).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.support.values().sum()
    }

    /// Marginal on `sub`, indexed by local assignments of `bits(sub)`.
    pub fn marginal(&self, sub: u64) -> Vec<Rational> {
        let target: Vec<usize> = bits(sub).collect();
        let mut out = vec![Rational::zero(); 1 << target.len()];
        for (a, p) in &self.support {
            out[gather(*a, &target)] += p;
        }
        out
    }

    /// Support keyed by bit strings in vertex insertion order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .support
            .iter()
            .map(|(a, p)| (bit_string(*a as usize, self.num_vertices), rational::format(p)))
            .collect();
        serde_json::to_value(map).expect("distribution serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Local assignment of the context vertices as a bit string.
    pub assignment: String,
    #[serde(with = "rational::serde_str")]
    pub expected: Rational,
    #[serde(with = "rational::serde_str")]
    pub actual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextCheck {
    pub vertices: Vec<usize>,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginalReport {
    pub contexts: Vec<ContextCheck>,
}

impl MarginalReport {
    pub fn all_passed(&self) -> bool {
        self.contexts.iter().all(|c| c.passed)
    }
}

/// Compares every context table of `b` with the marginal of `jpd`, exactly.
pub fn verify_marginals(jpd: &JointDistribution, b: &Behavior) -> Result<MarginalReport> {
    if jpd.num_vertices() != b.num_vertices() {
        return Err(Error::VertexMismatch(format!(
            "distribution over {} vertices, behavior over {}",
            jpd.num_vertices(),
            b.num_vertices()
        )));
    }
    let contexts = b
        .contexts()
        .iter()
        .map(|ctx| {
            let actual = jpd.marginal(ctx.mask());
            let mismatches: Vec<Mismatch> = ctx
                .table()
                .iter()
                .zip(actual)
                .enumerate()
                .filter(|(_, (e, a))| *e != a)
                .map(|(i, (e, a))| Mismatch {
                    assignment: bit_string(i, ctx.vertices().len()),
                    expected: e.clone(),
                    actual: a,
                })
                .collect();
            ContextCheck {
                vertices: ctx.vertices().to_vec(),
                passed: mismatches.is_empty(),
                mismatches,
            }
        })
        .collect();
    Ok(MarginalReport { contexts })
}

/// Global distribution of a chordal graph from consistent context marginals.
pub fn construct_jpd(g: &CommutationGraph, b: &Behavior) -> Result<JointDistribution> {
    let tree = clique_tree(g)?;
    factorize(g, b, &tree)
}

/// As [`construct_jpd`], with the clique tree built from `order`.
pub fn construct_jpd_with_order(g: &CommutationGraph, b: &Behavior, order: &[usize]) -> Result<JointDistribution> {
    let tree = clique_tree_with_order(g, order)?;
    factorize(g, b, &tree)
}

/// Junction-tree product `Π P(clique) / Π P(separator)`, enumerated over the
/// support only: nodes are visited parents-first and each partial assignment
/// is extended by the entries of the next clique agreeing on its separator.
fn factorize(g: &CommutationGraph, b: &Behavior, tree: &CliqueTree) -> Result<JointDistribution> {
    b.validate(g)?;
    let masks = tree.node_masks();
    let tables = masks
        .iter()
        .map(|&m| {
            b.marginal(m)
                .ok_or_else(|| Error::InvalidBehavior(format!("no context covers the clique {:?}", g.labels_of(m))))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut partial: Vec<(u64, Rational)> = vec![(0, Rational::one())];
    for (k, &node) in masks.iter().enumerate() {
        let verts: Vec<usize> = bits(node).collect();
        let (sep, sep_table) = match tree.parent_of(k) {
            Some(p) => {
                let sep = node & masks[p];
                let parent = ContextTable::new(bits(masks[p]).collect(), tables[p].clone());
                (sep, parent.marginal(sep))
            }
            None => (0, vec![Rational::one()]),
        };
        let sep_verts: Vec<usize> = bits(sep).collect();
        let mut next = Vec::with_capacity(partial.len());
        for (assigned, prob) in &partial {
            let s = gather(*assigned, &sep_verts);
            let denom = &sep_table[s];
            for (a, p) in tables[k].iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let full = scatter(a, &verts);
                if gather(full, &sep_verts) != s {
                    continue;
                }
                if denom.is_zero() {
                    return Err(Error::IllConditioned(format!(
                        "separator {:?} has probability 0 for an assignment clique {:?} gives probability {}",
                        g.labels_of(sep),
                        g.labels_of(node),
                        rational::format(p)
                    )));
                }
                next.push((*assigned | full, prob * p / denom));
            }
        }
        partial = next;
    }
    let mut support = BTreeMap::new();
    for (a, p) in partial {
        *support.entry(a).or_insert_with(Rational::zero) += p;
    }
    Ok(JointDistribution::new(g.len(), support))
}

/// Full assignments whose restriction to every context has positive
/// probability; every other assignment must carry zero weight in any JPD.
fn candidate_assignments(n: usize, b: &Behavior) -> Vec<u64> {
    // Contexts grouped by their highest vertex, checked once fully assigned.
    let mut closing: Vec<Vec<&ContextTable>> = vec![Vec::new(); n];
    for ctx in b.contexts() {
        if let Some(&last) = ctx.vertices().last() {
            closing[last].push(ctx);
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((depth, assigned)) = stack.pop() {
        if depth == n {
            out.push(assigned);
            continue;
        }
        for bit in [1u64, 0] {
            let a = assigned | bit << depth;
            let ok = closing[depth]
                .iter()
                .all(|ctx| !ctx.table()[gather(a, ctx.vertices())].is_zero());
            if ok {
                stack.push((depth + 1, a));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact LP: nonnegative weights on full assignments with every context
/// marginal matching `b`. Returns one feasible distribution if any exists.
pub fn find_jpd_lp(g: &CommutationGraph, b: &Behavior, limits: &Limits) -> Result<Option<JointDistribution>> {
    Limits::check("JPD feasibility LP", g.len(), limits.jpd_lp)?;
    if b.num_vertices() != g.len() {
        return Err(Error::VertexMismatch(format!(
            "behavior over {} vertices, graph has {}",
            b.num_vertices(),
            g.len()
        )));
    }
    let candidates = candidate_assignments(g.len(), b);
    let mut lp = LinearProgram::new(candidates.len());
    lp.add_equality(
        (0..candidates.len()).map(|i| (i, Rational::one())).collect(),
        Rational::one(),
    );
    for ctx in b.contexts() {
        for (a, p) in ctx.table().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let coeffs = candidates
                .iter()
                .enumerate()
                .filter(|(_, &x)| gather(x, ctx.vertices()) == a)
                .map(|(i, _)| (i, Rational::one()))
                .collect();
            lp.add_equality(coeffs, p.clone());
        }
    }
    Ok(lp
        .feasible_point()
        .map(|x| JointDistribution::new(g.len(), candidates.iter().copied().zip(x).collect())))
}

pub fn jpd_exists_lp(g: &CommutationGraph, b: &Behavior, limits: &Limits) -> Result<bool> {
    Ok(find_jpd_lp(g, b, limits)?.is_some())
}

/// Maximal cliques as bitmasks, the contexts used throughout.
pub fn contexts_of(g: &CommutationGraph) -> Vec<u64> {
    crate::graph::maximal_cliques(g)
        .iter()
        .map(|c| mask_of(c.iter().copied()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;
    use rand::SeedableRng;

    fn path_abc() -> CommutationGraph {
        CommutationGraph::from_edges(&["A", "B", "C"], &[("A", "B"), ("B", "C")], false).unwrap()
    }

    #[test]
    fn two_clique_chain_formula() {
        // P(A=1, B=0, C=1) = p(A=1, B=0) p(B=0, C=1) / p(B=0).
        let g = path_abc();
        let text = r#"{"contexts":[
            {"vertices":["A","B"],"table":{"10":"1/6","00":"1/3","01":"1/4","11":"1/4"}},
            {"vertices":["B","C"],"table":{"01":"1/5","00":"3/10","11":"1/8","10":"3/8"}}]}"#;
        let b = Behavior::from_json(&g, text).unwrap();
        b.validate(&g).unwrap();
        let jpd = construct_jpd(&g, &b).unwrap();
        let (p, q, r) = (ratio(1, 6), ratio(1, 5), ratio(1, 2));
        assert_eq!(jpd.probability(0b101), &p * &q / &r);
        assert_eq!(jpd.total(), ratio(1, 1));
        assert!(verify_marginals(&jpd, &b).unwrap().all_passed());
    }

    #[test]
    fn single_context_is_identity() {
        let g = fixtures::complete(3);
        let text = r#"{"contexts":[{"vertices":["v0","v1","v2"],"table":{"000":"1/2","100":"1/4","001":"1/4"}}]}"#;
        let b = Behavior::from_json(&g, text).unwrap();
        let jpd = construct_jpd(&g, &b).unwrap();
        assert_eq!(jpd.support().len(), 3);
        assert_eq!(jpd.probability(0), ratio(1, 2));
        assert_eq!(jpd.probability(0b001), ratio(1, 4));
        assert_eq!(jpd.probability(0b100), ratio(1, 4));
    }

    #[test]
    fn fig1_decomposition_point_mass() {
        // A2 = A4 = A'2 = A'4 = 1 on the 4-clique decomposition of fig1.
        let g = fixtures::fig1();
        let parts: Vec<u64> = [
            &["A1", "A'1", "A'2"][..],
            &["A4", "A5", "A'5"],
            &["A2", "A3"],
            &["A'3", "A'4"],
        ]
        .iter()
        .map(|p| g.mask_of_labels(p).unwrap())
        .collect();
        let split = g.without_cross_edges(&parts);
        let ones = g.mask_of_labels(&["A2", "A4", "A'2", "A'4"]).unwrap();
        let b = Behavior::deterministic(10, &contexts_of(&split), ones);
        let jpd = construct_jpd(&split, &b).unwrap();
        assert_eq!(jpd, JointDistribution::point_mass(10, ones));
        // Direct marginal computation of the KCBS sums.
        let total: Rational = (0..10).map(|v| jpd.marginal(1 << v)[1].clone()).sum();
        assert_eq!(total, ratio(4, 1));
        // The same assignment is a valid behavior on fig1 itself.
        Behavior::deterministic(10, &contexts_of(&g), ones)
            .validate(&g)
            .unwrap();
    }

    #[test]
    fn uniform_vs_deterministic_mismatch_listed() {
        let g = path_abc();
        let b = Behavior::deterministic(3, &contexts_of(&g), 0b001);
        let report = verify_marginals(&JointDistribution::uniform(3), &b).unwrap();
        assert!(!report.all_passed());
        let first = &report.contexts[0];
        assert!(!first.passed);
        assert!(first
            .mismatches
            .iter()
            .any(|m| m.assignment == "10" && m.expected == ratio(1, 1)));
        let wrong_size = verify_marginals(&JointDistribution::uniform(4), &b);
        assert!(matches!(wrong_size, Err(Error::VertexMismatch(_))));
    }

    fn half_pentagon(g: &CommutationGraph) -> Behavior {
        let ctx = contexts_of(g);
        let tables = ctx
            .iter()
            .map(|&c| {
                // Exactly one of the two endpoints reads 1: p(10) = p(01) = 1/2.
                ContextTable::new(
                    bits(c).collect(),
                    vec![ratio(0, 1), ratio(1, 2), ratio(1, 2), ratio(0, 1)],
                )
            })
            .collect();
        Behavior::new(5, tables)
    }

    #[test]
    fn kcbs_half_behavior_has_no_jpd() {
        let g = fixtures::pentagon();
        let b = half_pentagon(&g);
        b.validate(&g).unwrap();
        let sum: Rational = (0..5).map(|v| b.probability_one(v).unwrap()).sum();
        assert_eq!(sum, ratio(5, 2));
        assert!(!jpd_exists_lp(&g, &b, &Limits::default()).unwrap());
        // Any candidate distribution fails some context.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let other = sampling::random_consistent_behavior(&g, &contexts_of(&g), 3, &mut rng);
            let candidate = find_jpd_lp(&g, &other, &Limits::default()).unwrap().unwrap();
            assert!(!verify_marginals(&candidate, &b).unwrap().all_passed());
        }
        assert!(!verify_marginals(&JointDistribution::uniform(5), &b)
            .unwrap()
            .all_passed());
        assert!(matches!(construct_jpd(&g, &b), Err(Error::NotChordal { .. })));
    }

    #[test]
    fn independent_set_point_mass_has_jpd() {
        let g = fixtures::pentagon();
        let ones = g.mask_of_labels(&["A1", "A3"]).unwrap();
        let b = Behavior::deterministic(5, &contexts_of(&g), ones);
        let jpd = find_jpd_lp(&g, &b, &Limits::default()).unwrap().unwrap();
        assert_eq!(jpd, JointDistribution::point_mass(5, ones));
    }

    #[test]
    fn inconsistent_behavior_rejected() {
        let g = path_abc();
        let text = r#"{"contexts":[
            {"vertices":["A","B"],"table":{"01":"1"}},
            {"vertices":["B","C"],"table":{"00":"1"}}]}"#;
        let b = Behavior::from_json(&g, text).unwrap();
        match construct_jpd(&g, &b) {
            Err(Error::Inconsistent { shared, .. }) => assert_eq!(shared, vec!["B".to_string()]),
            other => panic!("{other:?}"),
        }
        assert!(!jpd_exists_lp(&g, &b, &Limits::default()).unwrap());
    }

    #[test]
    fn zero_separator_gives_zero() {
        // B is always 1, so the B = 0 separator entry has probability 0.
        let g = path_abc();
        let text = r#"{"contexts":[
            {"vertices":["A","B"],"table":{"01":"1/2","11":"1/2"}},
            {"vertices":["B","C"],"table":{"10":"1"}}]}"#;
        let b = Behavior::from_json(&g, text).unwrap();
        let jpd = construct_jpd(&g, &b).unwrap();
        assert_eq!(jpd.support().len(), 2);
        assert_eq!(jpd.total(), ratio(1, 1));
        assert!(verify_marginals(&jpd, &b).unwrap().all_passed());
    }

    #[test]
    fn jpd_lp_size_limit() {
        let g = fixtures::fig1();
        let b = Behavior::deterministic(10, &contexts_of(&g), 0);
        assert!(jpd_exists_lp(&g, &b, &Limits::uniform(8)).unwrap_err().is_size_limit());
    }
}
