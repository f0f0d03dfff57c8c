//! The explicit real 4D projector family for two cyclically exclusive
//! pentagons, its orthogonality graph, and numerical quantum maxima.
//!
//! Floating point lives here only. Projector `|v⟩⟨v|` probabilities are
//! `|⟨v|ψ⟩|²`, and the maximum of a weighted sum over states is the top
//! eigenvalue of `Σ w |v⟩⟨v|`.

mod jacobi;

pub use jacobi::{symmetric_eigen, Eigen, RESIDUAL};

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::{primed, unprimed};
use crate::graph::CommutationGraph;

/// Tolerance on the angle constraint `tanδ tanγ cos(β−ε) = −1`.
pub const CONSTRAINT_TOL: f64 = 1e-12;
/// Minimum magnitude of `sin(β−ε)`, `cos(β−ε)`, `sinδ` and the `A5` normalizer.
pub const NONZERO_TOL: f64 = 1e-9;
/// Norm and pentagon-orthogonality tolerance of a built family.
pub const FAMILY_TOL: f64 = 1e-12;
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
pub const BOUND_SLACK: f64 = 1e-9;

pub type Vec4 = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterSet {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// The `δ` satisfying the angle constraint for the given `β, γ, ε`.
pub fn solve_delta(beta: f64, gamma: f64, epsilon: f64) -> f64 {
    (-1.0 / (gamma.tan() * (beta - epsilon).cos())).atan()
}

impl ParameterSet {
    pub fn new(theta: f64, alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let p = ParameterSet {
            theta,
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    /// Free angles with `δ` solved from the constraint.
    pub fn solved(theta: f64, alpha: f64, beta: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        Self::new(theta, alpha, beta, gamma, solve_delta(beta, gamma, epsilon), epsilon)
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.theta, self.alpha, self.beta, self.gamma, self.delta, self.epsilon]
    }

    pub fn constraint_residual(&self) -> f64 {
        self.delta.tan() * self.gamma.tan() * (self.beta - self.epsilon).cos() + 1.0
    }

    fn a5_normalizer(&self) -> f64 {
        let (ca, sa, ct) = (self.alpha.cos(), self.alpha.sin(), self.theta.cos());
        (ca * ca + sa * sa * ct * ct).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.as_array().iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameters("angles must be finite".into()));
        }
        let checks = [
            ("sin(beta - epsilon)", (self.beta - self.epsilon).sin()),
            ("cos(beta - epsilon)", (self.beta - self.epsilon).cos()),
            ("sin(delta)", self.delta.sin()),
            ("A5 normalizer", self.a5_normalizer()),
        ];
        for (name, value) in checks {
            if value.abs() <= NONZERO_TOL {
                return Err(Error::InvalidParameters(format!("{name} = {value:e} vanishes")));
            }
        }
        let r = self.constraint_residual();
        if r.is_nan() || r.abs() >= CONSTRAINT_TOL {
            return Err(Error::InvalidParameters(format!(
                "tan(delta) tan(gamma) cos(beta - epsilon) + 1 = {r:e}"
            )));
        }
        Ok(())
    }

    /// Uniform free angles in `[0, 2π)`, `δ` solved, retried until valid.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut angle = || rng.gen_range(0.0..2.0 * PI);
            let (theta, alpha, beta, gamma, epsilon) = (angle(), angle(), angle(), angle(), angle());
            if let Ok(p) = Self::solved(theta, alpha, beta, gamma, epsilon) {
                return p;
            }
        }
    }
}

/// Ten labeled unit vectors: `A1..A5` then `A'1..A'5`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectorFamily {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec4>,
}

pub fn dot(u: &Vec4, v: &Vec4) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn scale(v: Vec4, s: f64) -> Vec4 {
    v.map(|x| x * s)
}

pub fn build_family(p: &ParameterSet) -> Result<ProjectorFamily> {
    p.validate()?;
    let (ct, st) = (p.theta.cos(), p.theta.sin());
    let (ca, sa) = (p.alpha.cos(), p.alpha.sin());
    let (cb, sb) = (p.beta.cos(), p.beta.sin());
    let (cg, sg) = (p.gamma.cos(), p.gamma.sin());
    let (cd, sd) = (p.delta.cos(), p.delta.sin());
    let (ce, se) = (p.epsilon.cos(), p.epsilon.sin());
    let vectors = vec![
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [ct, 0.0, st, 0.0],
        [sa * st, ca, -sa * ct, 0.0],
        scale([0.0, sa * ct, ca, 0.0], 1.0 / p.a5_normalizer()),
        [0.0, 0.0, 0.0, 1.0],
        [0.0, cb, sb, 0.0],
        [0.0, sg * sb, -sg * cb, cg],
        [0.0, sd * se, -sd * ce, cd],
        scale([0.0, sd * ce, sd * se, 0.0], 1.0 / sd),
    ];
    let labels = (0..5).map(unprimed).chain((0..5).map(primed)).collect();
    let f = ProjectorFamily { labels, vectors };
    f.check()?;
    Ok(f)
}

impl ProjectorFamily {
    /// Unit norms and cyclic orthogonality of both pentagons.
    pub fn check(&self) -> Result<()> {
        for (l, v) in self.labels.iter().zip(&self.vectors) {
            let n = dot(v, v).sqrt();
            if (n - 1.0).abs() > FAMILY_TOL {
                return Err(Error::InvalidParameters(format!("|{l}| = {n}")));
            }
        }
        for offset in [0, 5] {
            for i in 0..5 {
                let (a, b) = (offset + i, offset + (i + 1) % 5);
                let d = dot(&self.vectors[a], &self.vectors[b]);
                if d.abs() > FAMILY_TOL {
                    return Err(Error::InvalidParameters(format!(
                        "<{}|{}> = {d:e}",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Exclusive edge between every pair with `|⟨u|v⟩| < tol`.
pub fn orthogonality_graph(f: &ProjectorFamily, tol: f64) -> Result<CommutationGraph> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::InvalidParameters(format!(
            "tolerance {tol} is outside (0, 1e-6]"
        )));
    }
    let mut g = CommutationGraph::with_vertices(&f.labels)?;
    for u in 0..f.len() {
        for v in u + 1..f.len() {
            if dot(&f.vectors[u], &f.vectors[v]).abs() < tol {
                g.add_edge(u, v, true)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenMax {
    pub value: f64,
    /// Unit eigenvector of `value`.
    pub state: Vec4,
    /// All four eigenvalues, descending.
    pub eigenvalues: Vec4,
    pub residual: f64,
}

/// `Σ w_i |v_i⟩⟨v_i|`.
pub fn weighted_operator(f: &ProjectorFamily, weights: &[f64]) -> Result<[[f64; 4]; 4]> {
    if weights.len() != f.len() {
        return Err(Error::InvalidParameters(format!(
            "{} weights for {} projectors",
            weights.len(),
            f.len()
        )));
    }
    let mut m = [[0.0; 4]; 4];
    for (v, &w) in f.vectors.iter().zip(weights) {
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += w * v[i] * v[j];
            }
        }
    }
    Ok(m)
}

/// Largest eigenvalue of the weighted projector sum, the maximum over
/// states of `Σ w_i p(v_i = 1)`.
pub fn operator_max_eigenvalue(f: &ProjectorFamily, weights: &[f64]) -> Result<EigenMax> {
    let e = symmetric_eigen(&weighted_operator(f, weights)?);
    Ok(EigenMax {
        value: e.values[0],
        state: e.vectors[0],
        eigenvalues: e.values,
        residual: e.residual,
    })
}

/// `Σ_{v ∈ subset} |⟨v|ψ⟩|²`.
pub fn kcbs_value(state: &Vec4, f: &ProjectorFamily, subset: &[usize]) -> Result<f64> {
    let n = dot(state, state).sqrt();
    if (n - 1.0).abs() > FAMILY_TOL {
        return Err(Error::InvalidParameters(format!("state has norm {n}")));
    }
    subset
        .iter()
        .map(|&i| {
            f.vectors
                .get(i)
                .map(|v| dot(v, state).powi(2))
                .ok_or_else(|| Error::InvalidParameters(format!("no projector {i}")))
        })
        .sum()
}

pub fn indicator_weights(f: &ProjectorFamily, subset: &[usize]) -> Vec<f64> {
    let mut w = vec![0.0; f.len()];
    for &i in subset {
        w[i] = 1.0;
    }
    w
}

/// Halton point `index` in `[0, 1)^5` (bases 2, 3, 5, 7, 11).
pub fn halton(index: u64) -> [f64; 5] {
    const BASES: [u64; 5] = [2, 3, 5, 7, 11];
    BASES.map(|b| {
        let (mut i, mut f, mut r) = (index, 1.0, 0.0);
        while i > 0 {
            f /= b as f64;
            r += f * (i % b) as f64;
            i /= b;
        }
        r
    })
}

/// Free angles `(θ, α, β, γ, ε)` of Halton point `index`, each in `[0, 2π)`.
/// The points are shifted by the fractional parts of `√2, √3, √5, √7, √11`
/// (mod 1) so no coordinate lands on a rational multiple of π, where the
/// family degenerates (e.g. `θ = π/2` makes `A1` and `A3` orthogonal).
pub fn scan_point(index: u64) -> [f64; 5] {
    const SHIFT: [f64; 5] = [2.0, 3.0, 5.0, 7.0, 11.0];
    let h = halton(index);
    std::array::from_fn(|i| (h[i] + SHIFT[i].sqrt()).fract() * 2.0 * PI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanMax {
    pub value: f64,
    pub parameters: ParameterSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumScan {
    pub requested: usize,
    pub valid: usize,
    pub rejected: usize,
    /// Every valid point gave the same orthogonality graph as the first.
    pub topology_constant: bool,
    pub edges: Vec<(String, String)>,
    pub max_all: Option<ScanMax>,
    pub max_first_pentagon: Option<ScanMax>,
    pub max_second_pentagon: Option<ScanMax>,
    pub bound_holds: bool,
}

struct PointResult {
    parameters: ParameterSet,
    edges: Vec<(usize, usize, bool)>,
    values: [f64; 3],
}

fn evaluate_point(p: ParameterSet) -> Option<PointResult> {
    let f = build_family(&p).ok()?;
    let g = orthogonality_graph(&f, ORTHOGONALITY_TOL).ok()?;
    let first: Vec<usize> = (0..5).collect();
    let second: Vec<usize> = (5..10).collect();
    let value = |w: Vec<f64>| operator_max_eigenvalue(&f, &w).map(|e| e.value).ok();
    Some(PointResult {
        parameters: p,
        edges: g.edges().collect(),
        values: [
            value(vec![1.0; 10])?,
            value(indicator_weights(&f, &first))?,
            value(indicator_weights(&f, &second))?,
        ],
    })
}

/// Larger value wins; ties go to the lexicographically smaller parameters.
fn better(a: &ScanMax, b: &ScanMax) -> bool {
    match a.value.total_cmp(&b.value) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            let (x, y) = (a.parameters.as_array(), b.parameters.as_array());
            x.iter().zip(&y).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()) == Some(std::cmp::Ordering::Less)
        }
    }
}

/// Evaluates the first `n` Halton points (index from 1), skipping those
/// whose solved angles violate a [`ParameterSet`] invariant.
pub fn parameter_scan(n: usize) -> QuantumScan {
    let results: Vec<Option<PointResult>> = (1..=n as u64)
        .into_par_iter()
        .map(|i| {
            let [theta, alpha, beta, gamma, epsilon] = scan_point(i);
            ParameterSet::solved(theta, alpha, beta, gamma, epsilon)
                .ok()
                .and_then(evaluate_point)
        })
        .collect();
    let valid: Vec<&PointResult> = results.iter().flatten().collect();
    let reference = valid.first().map(|r| r.edges.clone());
    let topology_constant = valid.iter().all(|r| Some(&r.edges) == reference.as_ref());
    let labels: Vec<String> = (0..5).map(unprimed).chain((0..5).map(primed)).collect();
    let best = |k: usize| {
        valid.iter().fold(None::<ScanMax>, |acc, r| {
            let cand = ScanMax {
                value: r.values[k],
                parameters: r.parameters,
            };
            match acc {
                Some(a) if !better(&cand, &a) => Some(a),
                _ => Some(cand),
            }
        })
    };
    let max_all = best(0);
    QuantumScan {
        requested: n,
        valid: valid.len(),
        rejected: n - valid.len(),
        topology_constant,
        edges: reference
            .unwrap_or_default()
            .into_iter()
            .map(|(u, v, _)| (labels[u].clone(), labels[v].clone()))
            .collect(),
        bound_holds: max_all.as_ref().is_none_or(|m| m.value <= 4.0 + BOUND_SLACK),
        max_all,
        max_first_pentagon: best(1),
        max_second_pentagon: best(2),
    }
}
