//! Bell scenarios as commutation graphs and their no-signaling maxima.
//!
//! Outcomes are ±1, stored as bits: bit 0 is +1 and bit 1 is −1, so a
//! correlator is `⟨X Y⟩ = Σ (−1)^(x + y) p(x, y)`.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{bits, mask_of, CommutationGraph};
use crate::jpd::{construct_jpd, contexts_of, scatter, Behavior, ContextTable, JointDistribution};
use crate::limits::Limits;
use crate::nd::{build_nd_lp_terms, classical_max_terms, evaluate_terms, lp_maximize, LpOutcome, MarginalTerm};
use crate::rational::{int, ratio, Rational};

/// Largest scenario the no-signaling LP accepts, in measurements.
pub const MAX_NS_MEASUREMENTS: usize = 12;
pub const MAX_PARTIES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellScenario {
    parties: Vec<String>,
    settings: Vec<Vec<String>>,
}

impl BellScenario {
    /// `settings` measurements per party, labeled `A1, A2, …` after the party.
    pub fn new(parties: &[&str], settings: usize) -> Self {
        Self::with_settings(parties.iter().map(|p| (p.to_string(), settings)).collect())
    }

    /// Per-party setting counts.
    pub fn with_settings(parties: Vec<(String, usize)>) -> Self {
        let settings = parties
            .iter()
            .map(|(p, k)| (1..=*k).map(|i| format!("{p}{i}")).collect())
            .collect();
        BellScenario {
            parties: parties.into_iter().map(|(p, _)| p).collect(),
            settings,
        }
    }

    pub fn parties(&self) -> &[String] {
        &self.parties
    }

    pub fn settings(&self) -> &[Vec<String>] {
        &self.settings
    }

    pub fn num_measurements(&self) -> usize {
        self.settings.iter().map(Vec::len).sum()
    }

    /// Party index of each measurement, in graph vertex order.
    pub fn party_of(&self) -> Vec<usize> {
        self.settings
            .iter()
            .enumerate()
            .flat_map(|(p, s)| std::iter::repeat_n(p, s.len()))
            .collect()
    }

    /// Setting index within its party, in graph vertex order.
    pub fn setting_index(&self) -> Vec<usize> {
        self.settings.iter().flat_map(|s| 0..s.len()).collect()
    }

    /// Complete multipartite graph: measurements of different parties are
    /// compatible, never exclusive.
    pub fn graph(&self) -> CommutationGraph {
        let labels: Vec<&String> = self.settings.iter().flatten().collect();
        let mut g = CommutationGraph::with_vertices(&labels).expect("labels are distinct");
        let party = self.party_of();
        for u in 0..labels.len() {
            for v in u + 1..labels.len() {
                if party[u] != party[v] {
                    g.add_edge(u, v, false).expect("fresh edge");
                }
            }
        }
        g
    }

    fn check_size(&self) -> Result<()> {
        if self.parties.len() > MAX_PARTIES {
            return Err(Error::InvalidScenario(format!(
                "{} parties; at most {MAX_PARTIES} are supported",
                self.parties.len()
            )));
        }
        Limits::check("no-signaling LP", self.num_measurements(), MAX_NS_MEASUREMENTS)
    }
}

/// Weighted sum of correlators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellExpression {
    pub terms: Vec<(Vec<String>, Rational)>,
}

impl BellExpression {
    pub fn new(terms: Vec<(Vec<String>, Rational)>) -> Self {
        BellExpression { terms }
    }

    /// `⟨x1 y1⟩ + ⟨x1 y2⟩ + ⟨x2 y1⟩ − ⟨x2 y2⟩`.
    pub fn chsh(x1: &str, x2: &str, y1: &str, y2: &str) -> Self {
        let pair = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
        Self::new(vec![
            (pair(x1, y1), int(1)),
            (pair(x1, y2), int(1)),
            (pair(x2, y1), int(1)),
            (pair(x2, y2), int(-1)),
        ])
    }

    pub fn sum(exprs: &[BellExpression]) -> Self {
        Self::new(exprs.iter().flat_map(|e| e.terms.iter().cloned()).collect())
    }

    /// Expands every correlator into probability events over 0/1 outcomes.
    pub fn marginal_terms(&self, g: &CommutationGraph) -> Result<Vec<MarginalTerm>> {
        let mut out = Vec::new();
        for (labels, coeff) in &self.terms {
            let mask = g.mask_of_labels(labels)?;
            if mask.count_ones() as usize != labels.len() {
                return Err(Error::InvalidScenario(format!(
                    "correlator {labels:?} repeats a measurement"
                )));
            }
            if !g.is_clique(mask) {
                return Err(Error::InvalidScenario(format!(
                    "correlator {labels:?} mixes incompatible measurements"
                )));
            }
            let verts: Vec<usize> = bits(mask).collect();
            for a in 0..1usize << verts.len() {
                let sign = if a.count_ones() % 2 == 0 { coeff.clone() } else { -coeff };
                out.push(MarginalTerm::new(mask, scatter(a, &verts), sign));
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, g: &CommutationGraph, b: &Behavior) -> Result<Rational> {
        evaluate_terms(&self.marginal_terms(g)?, b)
    }

    pub fn describe(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(labels, c)| format!("{}<{}>", c, labels.join(" ")))
            .collect()
    }
}

/// Maximum of the summed expressions over no-signaling behaviors.
pub fn ns_lp_max(s: &BellScenario, exprs: &[BellExpression]) -> Result<LpOutcome> {
    s.check_size()?;
    let g = s.graph();
    let terms = BellExpression::sum(exprs).marginal_terms(&g)?;
    Ok(lp_maximize(&build_nd_lp_terms(&g, &terms)?))
}

/// Maximum over deterministic local strategies.
pub fn classical_max(s: &BellScenario, exprs: &[BellExpression]) -> Result<Rational> {
    s.check_size()?;
    let g = s.graph();
    let terms = BellExpression::sum(exprs).marginal_terms(&g)?;
    Ok(classical_max_terms(&g, &terms, &Limits::default())?.0)
}

/// Three parties, two settings each.
pub fn three_party_scenario() -> BellScenario {
    BellScenario::new(&["A", "B", "C"], 2)
}

/// `CHSH(A, B) + CHSH(A, C)`. With shared settings Alice measures `A1, A2`
/// against both partners; otherwise `A1, A2` face Bob and `A3, A4` face
/// Charlie.
pub fn two_chsh(shared_settings: bool) -> (BellScenario, Vec<BellExpression>) {
    if shared_settings {
        (
            three_party_scenario(),
            vec![
                BellExpression::chsh("A1", "A2", "B1", "B2"),
                BellExpression::chsh("A1", "A2", "C1", "C2"),
            ],
        )
    } else {
        (
            BellScenario::with_settings(vec![("A".into(), 4), ("B".into(), 2), ("C".into(), 2)]),
            vec![
                BellExpression::chsh("A1", "A2", "B1", "B2"),
                BellExpression::chsh("A3", "A4", "C1", "C2"),
            ],
        )
    }
}

/// The same eight correlators as the shared-settings [`two_chsh`], regrouped
/// into two CHSH expressions whose measurements induce chordal subgraphs.
pub fn rearranged_chsh() -> [BellExpression; 2] {
    [
        BellExpression::chsh("A1", "A2", "B1", "C2"),
        BellExpression::chsh("A1", "A2", "C1", "B2"),
    ]
}

/// Measurements of a rearranged expression.
pub fn expression_vertices(g: &CommutationGraph, e: &BellExpression) -> Result<u64> {
    let mut mask = 0;
    for (labels, _) in &e.terms {
        mask |= g.mask_of_labels(labels)?;
    }
    Ok(mask)
}

/// A behavior restricted to a vertex subset together with the JPD of the
/// induced subgraph.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub graph: CommutationGraph,
    pub behavior: Behavior,
    pub jpd: JointDistribution,
}

/// Restricts `b` to the subgraph induced by `sub` and factorizes it along
/// that subgraph's clique tree. For `{A1, A2, B1, C2}` this is
/// `p(a1, b1, c2) p(a2, b1, c2) / p(b1, c2)`.
pub fn bell_jpd_factorize(g: &CommutationGraph, sub: u64, b: &Behavior) -> Result<Factorization> {
    b.validate(g)?;
    let sub_g = g.induced_by_mask(sub);
    let originals: Vec<usize> = bits(sub).collect();
    let tables = contexts_of(&sub_g)
        .into_iter()
        .map(|c| {
            let global = mask_of(bits(c).map(|i| originals[i]));
            let table = b
                .marginal(global)
                .ok_or_else(|| Error::InvalidBehavior(format!("no context covers {:?}", g.labels_of(global))))?;
            Ok(ContextTable::new(bits(c).collect(), table))
        })
        .collect::<Result<Vec<_>>>()?;
    let behavior = Behavior::new(sub_g.len(), tables);
    let jpd = construct_jpd(&sub_g, &behavior)?;
    Ok(Factorization {
        graph: sub_g,
        behavior,
        jpd,
    })
}

/// PR box between parties `p` and `q`: their outcomes are uniform with
/// parity equal to the product of the low bits of their setting indices.
/// Every other party reads the fixed outcome `others[v]` for measurement `v`.
pub fn pr_box(s: &BellScenario, p: usize, q: usize, others: u64) -> Behavior {
    let g = s.graph();
    let party = s.party_of();
    let setting = s.setting_index();
    let tables = contexts_of(&g)
        .into_iter()
        .map(|c| {
            let verts: Vec<usize> = bits(c).collect();
            let mut table = vec![Rational::zero(); 1 << verts.len()];
            let find = |who: usize| {
                verts
                    .iter()
                    .position(|&v| party[v] == who)
                    .expect("one setting per party")
            };
            let (i, j) = (find(p), find(q));
            let parity = setting[verts[i]] & setting[verts[j]] & 1;
            let mut fixed = 0usize;
            for (k, &v) in verts.iter().enumerate() {
                if k != i && k != j && others >> v & 1 == 1 {
                    fixed |= 1 << k;
                }
            }
            for a in 0..2usize {
                let local = fixed | a << i | (a ^ parity) << j;
                table[local] = ratio(1, 2);
            }
            ContextTable::new(verts, table)
        })
        .collect();
    Behavior::new(g.len(), tables)
}

/// Random mixture of deterministic strategies and PR boxes between random
/// party pairs; always no-signaling.
pub fn random_ns_behavior<R: Rng + ?Sized>(s: &BellScenario, k: usize, rng: &mut R) -> Behavior {
    let g = s.graph();
    let contexts = contexts_of(&g);
    let n = g.len();
    let parties = s.parties().len();
    let k = k.max(1);
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = weights.iter().sum();
    let parts: Vec<(Rational, Behavior)> = weights
        .iter()
        .map(|&w| {
            let assignment = rng.gen_range(0..1u64 << n);
            let part = if parties >= 2 && rng.gen_bool(0.5) {
                let p = rng.gen_range(0..parties);
                let q = (p + rng.gen_range(1..parties)) % parties;
                pr_box(s, p, q, assignment)
            } else {
                Behavior::deterministic(n, &contexts, assignment)
            };
            (ratio(w, total), part)
        })
        .collect();
    Behavior::mixture(&parts)
}

/// `CHSH(A,B) + CHSH(A,C) − Σ rearranged`, which vanishes identically.
pub fn rearrangement_gap(b: &Behavior) -> Result<Rational> {
    let (s, exprs) = two_chsh(true);
    let g = s.graph();
    let original: Rational = exprs.iter().map(|e| e.evaluate(&g, b)).sum::<Result<Rational>>()?;
    let rearranged: Rational = rearranged_chsh()
        .iter()
        .map(|e| e.evaluate(&g, b))
        .sum::<Result<Rational>>()?;
    Ok(original - rearranged)
}
