//! Monogamy certificates from the clique cover number.
//!
//! A set of inequalities with bounds `R_k` covering the graph is monogamous
//! by the decomposition method exactly when the clique cover number equals
//! `Σ R_k`. A smaller clique cover number means even classical models
//! cannot reach the summed bound, so the relation holds trivially.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{self, FIG1_CROSS_EDGES};
use crate::graph::{
    bits, chordal_decomposition_search, clique_cover_number, independence_number, is_chordal, min_clique_cover_in,
    ChordalDecomposition, CliqueCover, CommutationGraph,
};
use crate::limits::Limits;
use crate::nd::{build_nd_lp, classical_max, lp_maximize, LinearObjective};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySpec {
    pub vertices: Vec<usize>,
    pub bound: usize,
}

#[derive(Deserialize)]
struct SpecsFile {
    inequalities: Vec<SpecEntry>,
}

#[derive(Deserialize)]
struct SpecEntry {
    vertices: Vec<String>,
    bound: usize,
}

impl InequalitySpec {
    /// `{"inequalities": [{"vertices": ["A1", ...], "bound": 2}, ...]}`.
    pub fn from_json(g: &CommutationGraph, text: &str) -> Result<Vec<InequalitySpec>> {
        let file: SpecsFile = serde_json::from_str(text)?;
        file.inequalities
            .into_iter()
            .enumerate()
            .map(|(i, entry)| {
                let vertices = entry
                    .vertices
                    .iter()
                    .map(|l| {
                        g.index_of(l).ok_or_else(|| Error::UnknownVertex {
                            label: l.clone(),
                            location: format!("inequalities[{i}]"),
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(InequalitySpec {
                    vertices,
                    bound: entry.bound,
                })
            })
            .collect()
    }

    pub fn to_json_value(&self, g: &CommutationGraph) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
            "bound": self.bound,
        })
    }

    /// One spec per given vertex set with its induced independence number.
    pub fn with_induced_bounds(g: &CommutationGraph, sets: &[Vec<usize>], limits: &Limits) -> Result<Vec<Self>> {
        sets.iter()
            .map(|s| {
                let labels: Vec<&str> = s.iter().map(|&v| g.label(v)).collect();
                let (bound, _) = independence_number(&g.induced_subgraph(&labels)?, limits)?;
                Ok(InequalitySpec {
                    vertices: s.clone(),
                    bound,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    MonogamousGenuine,
    MonogamousTrivial,
    NotMonogamousByMethod,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::MonogamousGenuine => "monogamous-genuine",
            Classification::MonogamousTrivial => "monogamous-trivial",
            Classification::NotMonogamousByMethod => "not-monogamous-by-method",
        }
    }

    pub fn is_monogamous(self) -> bool {
        self != Classification::NotMonogamousByMethod
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonogamyVerdict {
    pub clique_cover_number: usize,
    pub target: usize,
    pub classification: Classification,
    /// Minimum clique cover, attached when monogamous.
    pub certificate: Option<CliqueCover>,
    /// Chordal decomposition reaching the target, when one exists and the
    /// graph is small enough to search.
    pub decomposition: Option<ChordalDecomposition>,
    pub nd_max: Rational,
    pub classical_max: Rational,
}

impl MonogamyVerdict {
    pub fn to_json_value(&self, g: &CommutationGraph) -> serde_json::Value {
        let labelled = |parts: &[Vec<usize>]| -> Vec<Vec<String>> {
            parts
                .iter()
                .map(|p| p.iter().map(|&v| g.label(v).to_string()).collect())
                .collect()
        };
        serde_json::json!({
            "clique_cover_number": self.clique_cover_number,
            "target": self.target,
            "classification": self.classification.as_str(),
            "certificate": self.certificate.as_ref().map(|c| labelled(&c.cliques)),
            "decomposition": self.decomposition.as_ref().map(|d| serde_json::json!({
                "parts": labelled(&d.parts),
                "alphas": d.alphas,
            })),
            "nd_max": rational::format(&self.nd_max),
            "classical_max": rational::format(&self.classical_max),
        })
    }
}

fn check_partition(g: &CommutationGraph, specs: &[InequalitySpec]) -> Result<()> {
    let mut seen = vec![false; g.len()];
    for (i, s) in specs.iter().enumerate() {
        for &v in &s.vertices {
            if v >= g.len() {
                return Err(Error::InvalidSpecs(format!("inequality {i} names vertex index {v}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidSpecs(format!(
                    "vertex `{}` appears in more than one inequality",
                    g.label(v)
                )));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidSpecs(format!(
            "vertex `{}` is not covered by any inequality",
            g.label(v)
        )));
    }
    Ok(())
}

fn check_bounds(g: &CommutationGraph, specs: &[InequalitySpec], limits: &Limits) -> Result<()> {
    for (i, s) in specs.iter().enumerate() {
        let labels: Vec<&str> = s.vertices.iter().map(|&v| g.label(v)).collect();
        let (alpha, _) = independence_number(&g.induced_subgraph(&labels)?, limits)?;
        if alpha != s.bound {
            return Err(Error::InvalidSpecs(format!(
                "inequality {i} has bound {} but its measurements have independence number {alpha}",
                s.bound
            )));
        }
    }
    Ok(())
}

pub fn check_monogamy(g: &CommutationGraph, specs: &[InequalitySpec], limits: &Limits) -> Result<MonogamyVerdict> {
    check_partition(g, specs)?;
    check_bounds(g, specs, limits)?;
    let target: usize = specs.iter().map(|s| s.bound).sum();
    let (chi, cover) = clique_cover_number(g, limits)?;
    let classification = match chi.cmp(&target) {
        std::cmp::Ordering::Equal => Classification::MonogamousGenuine,
        std::cmp::Ordering::Less => Classification::MonogamousTrivial,
        std::cmp::Ordering::Greater => Classification::NotMonogamousByMethod,
    };
    let decomposition = if classification.is_monogamous() && g.len() <= limits.decomposition {
        chordal_decomposition_search(g, target, limits)?
    } else {
        None
    };
    let unit = LinearObjective::unit(g);
    let nd_max = lp_maximize(&build_nd_lp(g, &unit)).value;
    let (classical, _) = classical_max(g, &unit, limits)?;
    Ok(MonogamyVerdict {
        clique_cover_number: chi,
        target,
        classification,
        certificate: classification.is_monogamous().then_some(cover),
        decomposition,
        nd_max,
        classical_max: classical,
    })
}

/// The two pentagons as a pair of KCBS inequalities with bound 2 each.
pub fn two_kcbs_specs() -> Vec<InequalitySpec> {
    vec![
        InequalitySpec {
            vertices: (0..5).collect(),
            bound: 2,
        },
        InequalitySpec {
            vertices: (5..10).collect(),
            bound: 2,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanLevel {
    pub k: usize,
    pub graphs: usize,
    pub min_clique_cover: usize,
    pub max_clique_cover: usize,
    /// Clique cover number -> number of graphs.
    pub distribution: BTreeMap<usize, usize>,
    pub with_cover_four: usize,
    /// Lexicographically smallest cross-edge sets reaching clique cover 4.
    pub witnesses: Vec<Vec<(usize, usize)>>,
    pub contains_fig1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub exclusive: bool,
    pub levels: Vec<ScanLevel>,
}

impl ScanReport {
    /// Smallest k with some graph reaching clique cover 4.
    pub fn minimal_k(&self) -> Option<usize> {
        self.levels.iter().find(|l| l.with_cover_four > 0).map(|l| l.k)
    }
}

pub const MAX_SCAN_K: usize = 5;
const SCAN_WITNESSES: usize = 5;

/// Clique cover number of two pentagons joined by every set of `k` cross
/// edges, for `k = 1..=k_max`. Cross edges `(i, j)` join `A{i+1}` and
/// `A'{j+1}`.
pub fn minimality_scan(k_max: usize, exclusive: bool) -> Result<ScanReport> {
    if k_max > MAX_SCAN_K {
        return Err(Error::InvalidParameters(format!(
            "k = {k_max} exceeds the scan limit of {MAX_SCAN_K}"
        )));
    }
    let candidates: Vec<(usize, usize)> = (0..5).cartesian_product(0..5).collect();
    let mut fig1: Vec<(usize, usize)> = FIG1_CROSS_EDGES.to_vec();
    fig1.sort_unstable();
    let levels = (1..=k_max)
        .map(|k| {
            let sets: Vec<Vec<(usize, usize)>> = candidates.iter().copied().combinations(k).collect();
            let covers: Vec<usize> = sets
                .par_iter()
                .map(|cross| {
                    let g = fixtures::two_pentagons_with(cross, exclusive);
                    min_clique_cover_in(g.adjacency(), g.all()).len()
                })
                .collect();
            let mut distribution = BTreeMap::new();
            for &c in &covers {
                *distribution.entry(c).or_insert(0) += 1;
            }
            let hits: Vec<&Vec<(usize, usize)>> = sets
                .iter()
                .zip(&covers)
                .filter(|(_, &c)| c == 4)
                .map(|(s, _)| s)
                .collect();
            ScanLevel {
                k,
                graphs: sets.len(),
                min_clique_cover: covers.iter().copied().min().unwrap_or(0),
                max_clique_cover: covers.iter().copied().max().unwrap_or(0),
                distribution,
                with_cover_four: hits.len(),
                witnesses: hits.iter().take(SCAN_WITNESSES).map(|s| s.to_vec()).collect(),
                contains_fig1: hits.iter().any(|s| **s == fig1),
            }
        })
        .collect();
    Ok(ScanReport { exclusive, levels })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub target: usize,
    pub clique_cover_number: usize,
    /// `χ̄ ≤ target ≤ |V|`: splitting cliques of a minimum cover reaches every
    /// total in that range, and no partition goes below `χ̄`.
    pub cover_condition: bool,
    pub search_found: bool,
    pub decomposition: Option<ChordalDecomposition>,
    pub agree: bool,
}

/// Runs the exhaustive decomposition search and the clique cover test for
/// the same target and compares them.
pub fn decomposition_equivalence_check(
    g: &CommutationGraph,
    target: usize,
    limits: &Limits,
) -> Result<EquivalenceReport> {
    Limits::check("decomposition search", g.len(), limits.decomposition)?;
    let (chi, _) = clique_cover_number(g, limits)?;
    let found = chordal_decomposition_search(g, target, limits)?;
    let valid = found.as_ref().is_none_or(|d| decomposition_is_valid(g, d, target));
    let cover_condition = chi <= target && target <= g.len();
    Ok(EquivalenceReport {
        target,
        clique_cover_number: chi,
        cover_condition,
        search_found: found.is_some(),
        agree: valid && found.is_some() == cover_condition,
        decomposition: found,
    })
}

/// As [`decomposition_equivalence_check`] with the target `Σ R_k`.
pub fn decomposition_equivalence_for_specs(
    g: &CommutationGraph,
    specs: &[InequalitySpec],
    limits: &Limits,
) -> Result<EquivalenceReport> {
    check_partition(g, specs)?;
    decomposition_equivalence_check(g, specs.iter().map(|s| s.bound).sum(), limits)
}

/// Partition of all vertices into chordal parts whose independence numbers
/// are as recorded and add up to `target`.
pub fn decomposition_is_valid(g: &CommutationGraph, d: &ChordalDecomposition, target: usize) -> bool {
    let masks = d.masks();
    let union = masks.iter().fold(0u64, |u, m| u | m);
    let disjoint = masks.iter().map(|m| m.count_ones()).sum::<u32>() == union.count_ones();
    let parts_ok = masks.iter().zip(&d.alphas).all(|(&m, &a)| {
        let sub = g.induced_by_mask(m);
        is_chordal(&sub).chordal && independence_number(&sub, &Limits::default()).map(|(x, _)| x) == Ok(a)
    });
    disjoint && union == g.all() && parts_ok && d.total() == target && bits(union).count() == g.len()
}
