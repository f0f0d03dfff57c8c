//! No-disturbance polytope: exact LP maxima and classical maxima.
//!
//! A point of the polytope is a [`Behavior`] over the maximal cliques of the
//! graph. The LP variables are its table entries, minus assignments that
//! give 1 to both ends of an exclusive edge. Overlapping contexts must agree
//! on the marginal of their intersection.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{bits, CommutationGraph};
use crate::jpd::{contexts_of, gather, scatter, Behavior, ContextTable};
use crate::limits::Limits;
use crate::lp::{LinearProgram, LpStatus};
use crate::rational::{self, Rational};

/// `Σ w_v · p(v = 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearObjective {
    weights: BTreeMap<usize, Rational>,
}

#[derive(Deserialize)]
struct ObjectiveFile {
    weights: BTreeMap<String, serde_json::Value>,
}

impl LinearObjective {
    pub fn new(weights: BTreeMap<usize, Rational>) -> Self {
        LinearObjective { weights }
    }

    /// Weight 1 on every vertex.
    pub fn unit(g: &CommutationGraph) -> Self {
        Self::new((0..g.len()).map(|v| (v, Rational::one())).collect())
    }

    /// Weight 1 on the vertices of `mask`.
    pub fn indicator(mask: u64) -> Self {
        Self::new(bits(mask).map(|v| (v, Rational::one())).collect())
    }

    /// `{"weights": {"A1": "1", "A2": "1/2"}}`; numbers are accepted as well
    /// as `"p/q"` strings.
    pub fn from_json(g: &CommutationGraph, text: &str) -> Result<Self> {
        let file: ObjectiveFile = serde_json::from_str(text)?;
        let mut weights = BTreeMap::new();
        for (label, value) in file.weights {
            let v = g.index_of(&label).ok_or_else(|| Error::UnknownVertex {
                label: label.clone(),
                location: "weights".into(),
            })?;
            let w = match &value {
                serde_json::Value::String(s) => rational::parse(s)?,
                serde_json::Value::Number(n) => rational::parse(&n.to_string())?,
                other => {
                    return Err(Error::InvalidObjective(format!(
                        "weight of `{label}` must be a rational string, got {other}"
                    )))
                }
            };
            weights.insert(v, w);
        }
        Ok(Self::new(weights))
    }

    pub fn to_json_value(&self, g: &CommutationGraph) -> serde_json::Value {
        let weights: serde_json::Map<String, serde_json::Value> = self
            .weights
            .iter()
            .map(|(&v, w)| (g.label(v).to_string(), rational::format(w).into()))
            .collect();
        serde_json::json!({ "weights": weights })
    }

    pub fn weights(&self) -> &BTreeMap<usize, Rational> {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> Rational {
        self.weights.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> Vec<MarginalTerm> {
        self.weights
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(&v, w)| MarginalTerm::new(1 << v, 1 << v, w.clone()))
            .collect()
    }

    /// Objective value on a behavior.
    pub fn evaluate(&self, b: &Behavior) -> Result<Rational> {
        evaluate_terms(&self.terms(), b)
    }

    /// Objective value of a deterministic assignment.
    pub fn evaluate_assignment(&self, assignment: u64) -> Rational {
        self.weights
            .iter()
            .filter(|(&v, _)| assignment >> v & 1 == 1)
            .map(|(_, w)| w)
            .sum()
    }
}

/// `coeff · p(vertices in ones read 1, the rest of vertices read 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalTerm {
    pub vertices: u64,
    pub ones: u64,
    pub coeff: Rational,
}

impl MarginalTerm {
    pub fn new(vertices: u64, ones: u64, coeff: Rational) -> Self {
        debug_assert_eq!(ones & !vertices, 0);
        MarginalTerm { vertices, ones, coeff }
    }

    /// Whether this term's event happens under a full assignment.
    pub fn fires(&self, assignment: u64) -> bool {
        assignment & self.vertices == self.ones
    }
}

pub fn evaluate_terms(terms: &[MarginalTerm], b: &Behavior) -> Result<Rational> {
    let mut total = Rational::zero();
    for t in terms {
        let marginal = b.marginal(t.vertices).ok_or_else(|| {
            Error::InvalidObjective(format!(
                "no context contains the vertex set {:?}",
                bits(t.vertices).collect::<Vec<_>>()
            ))
        })?;
        let local = gather(t.ones, &bits(t.vertices).collect::<Vec<_>>());
        total += &t.coeff * &marginal[local];
    }
    Ok(total)
}

pub fn evaluate_terms_on_assignment(terms: &[MarginalTerm], assignment: u64) -> Rational {
    terms.iter().filter(|t| t.fires(assignment)).map(|t| &t.coeff).sum()
}

/// The no-disturbance LP for one graph and objective.
#[derive(Debug, Clone)]
pub struct NdModel {
    num_vertices: usize,
    contexts: Vec<u64>,
    /// `(context index, local assignment)` per LP column.
    variables: Vec<(usize, usize)>,
    program: LinearProgram,
    trivial_objective: bool,
}

impl NdModel {
    pub fn contexts(&self) -> &[u64] {
        &self.contexts
    }

    pub fn variables(&self) -> &[(usize, usize)] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.program.num_constraints()
    }

    pub fn program(&self) -> &LinearProgram {
        &self.program
    }

    /// Behavior whose table entries are the LP point `x`.
    pub fn behavior_from(&self, x: &[Rational]) -> Behavior {
        let mut raw: Vec<Vec<Rational>> = self
            .contexts
            .iter()
            .map(|c| vec![Rational::zero(); 1 << c.count_ones()])
            .collect();
        for (&(ci, a), value) in self.variables.iter().zip(x) {
            raw[ci][a] = value.clone();
        }
        let tables = self
            .contexts
            .iter()
            .zip(raw)
            .map(|(&c, table)| ContextTable::new(bits(c).collect(), table))
            .collect();
        Behavior::new(self.num_vertices, tables)
    }
}

/// Builds the LP for a per-vertex objective.
pub fn build_nd_lp(g: &CommutationGraph, obj: &LinearObjective) -> NdModel {
    build_nd_lp_terms(g, &obj.terms()).expect("single-vertex terms always lie in a context")
}

/// Builds the LP for an objective over arbitrary marginal events. Each
/// term's vertex set must be a clique.
pub fn build_nd_lp_terms(g: &CommutationGraph, terms: &[MarginalTerm]) -> Result<NdModel> {
    let contexts = contexts_of(g);
    let excl = g.exclusive_adjacency();

    let mut variables = Vec::new();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(contexts.len());
    for (ci, &c) in contexts.iter().enumerate() {
        let verts: Vec<usize> = bits(c).collect();
        let mut cols = Vec::new();
        for a in 0..1usize << verts.len() {
            let ones = scatter(a, &verts);
            if bits(ones).any(|v| excl[v] & ones != 0) {
                continue;
            }
            cols.push(variables.len());
            variables.push((ci, a));
        }
        columns.push(cols);
    }

    let mut program = LinearProgram::new(variables.len());
    for cols in &columns {
        program.add_equality(cols.iter().map(|&j| (j, Rational::one())).collect(), Rational::one());
    }

    // One chain of equalities per distinct intersection set, linking the
    // contexts that contain it in index order. The all-zeros assignment is
    // implied by normalization.
    let mut shared: BTreeSet<u64> = BTreeSet::new();
    for (i, &a) in contexts.iter().enumerate() {
        for &b in &contexts[i + 1..] {
            if a & b != 0 {
                shared.insert(a & b);
            }
        }
    }
    for &s in &shared {
        let s_verts: Vec<usize> = bits(s).collect();
        let holders: Vec<usize> = (0..contexts.len()).filter(|&ci| contexts[ci] & s == s).collect();
        for pair in holders.windows(2) {
            for target in 1..1usize << s_verts.len() {
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for (&ci, sign) in pair.iter().zip([1i64, -1]) {
                    let verts: Vec<usize> = bits(contexts[ci]).collect();
                    for &j in &columns[ci] {
                        let full = scatter(variables[j].1, &verts);
                        if gather(full, &s_verts) == target {
                            row.push((j, rational::int(sign)));
                        }
                    }
                }
                if !row.is_empty() {
                    program.add_equality(row, Rational::zero());
                }
            }
        }
    }

    let mut trivial_objective = true;
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        let ci = contexts
            .iter()
            .position(|&c| c & t.vertices == t.vertices)
            .ok_or_else(|| {
                Error::InvalidObjective(format!(
                    "measurements {:?} are not jointly measurable",
                    g.labels_of(t.vertices)
                ))
            })?;
        trivial_objective = false;
        let verts: Vec<usize> = bits(contexts[ci]).collect();
        for &j in &columns[ci] {
            if t.fires(scatter(variables[j].1, &verts)) {
                program.add_objective_coeff(j, &t.coeff);
            }
        }
    }
    if program.objective().iter().all(|c| c.is_zero()) {
        trivial_objective = true;
    }

    Ok(NdModel {
        num_vertices: g.len(),
        contexts,
        variables,
        program,
        trivial_objective,
    })
}

/// Exact optimum and a behavior attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub value: Rational,
    pub witness: Behavior,
}

impl LpOutcome {
    pub fn to_json_value(&self, g: &CommutationGraph) -> serde_json::Value {
        serde_json::json!({
            "value": rational::format(&self.value),
            "witness": self.witness.to_json_value(g),
        })
    }
}

pub fn lp_maximize(model: &NdModel) -> LpOutcome {
    if model.trivial_objective {
        return LpOutcome {
            value: Rational::zero(),
            witness: Behavior::deterministic(model.num_vertices, &model.contexts, 0),
        };
    }
    match model.program.maximize() {
        LpStatus::Optimal { value, solution } => LpOutcome {
            value,
            witness: model.behavior_from(&solution),
        },
        // The all-zeros behavior is always feasible and every variable lies
        // in [0, 1].
        status => unreachable!("no-disturbance LP cannot be {status:?}"),
    }
}

/// Maximum of `obj` over deterministic assignments that never give 1 to both
/// ends of an exclusive edge.
pub fn classical_max(g: &CommutationGraph, obj: &LinearObjective, limits: &Limits) -> Result<(Rational, u64)> {
    Limits::check("classical maximum", g.len(), limits.classical)?;
    // Only positive weights can help; everything else stays 0.
    let weights: Vec<Rational> = (0..g.len()).map(|v| obj.weight(v)).collect();
    let positive = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_positive())
        .fold(0u64, |m, (v, _)| m | 1 << v);
    let excl = g.exclusive_adjacency();
    let mut search = WeightedSearch {
        excl: &excl,
        weights: &weights,
        best: Rational::zero(),
        best_set: 0,
    };
    search.expand(0, Rational::zero(), positive);
    Ok((search.best, search.best_set))
}

struct WeightedSearch<'a> {
    excl: &'a [u64],
    weights: &'a [Rational],
    best: Rational,
    best_set: u64,
}

impl WeightedSearch<'_> {
    /// Branch on the lowest candidate: take it first, then skip it.
    fn expand(&mut self, chosen: u64, value: Rational, candidates: u64) {
        if value > self.best {
            self.best = value.clone();
            self.best_set = chosen;
        }
        if candidates == 0 {
            return;
        }
        let bound: Rational = bits(candidates).map(|v| &self.weights[v]).sum::<Rational>() + &value;
        if bound <= self.best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << v);
        self.expand(chosen | 1 << v, &value + &self.weights[v], rest & !self.excl[v]);
        self.expand(chosen, value, rest);
    }
}

/// Classical maximum of a marginal-term objective by enumerating every
/// exclusivity-respecting assignment of the vertices the terms mention.
pub fn classical_max_terms(g: &CommutationGraph, terms: &[MarginalTerm], limits: &Limits) -> Result<(Rational, u64)> {
    let involved = terms.iter().fold(0u64, |m, t| m | t.vertices);
    let verts: Vec<usize> = bits(involved).collect();
    Limits::check("classical maximum", verts.len(), limits.classical)?;
    let excl = g.exclusive_adjacency();
    let mut best: Option<(Rational, u64)> = None;
    for a in 0..1usize << verts.len() {
        let ones = scatter(a, &verts);
        if bits(ones).any(|v| excl[v] & ones != 0) {
            continue;
        }
        let value = evaluate_terms_on_assignment(terms, ones);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, ones));
        }
    }
    Ok(best.expect("the all-zeros assignment is admissible"))
}
