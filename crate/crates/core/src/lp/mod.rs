//! Exact linear programming over the rationals.
//!
//! Problems are in equality standard form, `maximize c·x` subject to
//! `A x = b`, `x >= 0`, solved by a dense two-phase tableau simplex with
//! Bland's smallest-index rule, so it terminates on degenerate problems and
//! every result is exact.

mod simplex;

pub use simplex::LpStatus;

use crate::rational::Rational;

/// One equality row: sparse coefficients and right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct Equality {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Equality>,
    objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            objective: vec![crate::rational::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Equality] {
        &self.rows
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    /// Adds `Σ coeff·x[var] = rhs`. Repeated variables are summed.
    pub fn add_equality(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.rows.push(Equality { coeffs, rhs });
    }

    pub fn set_objective_coeff(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn add_objective_coeff(&mut self, var: usize, coeff: &Rational) {
        self.objective[var] += coeff;
    }

    pub fn maximize(&self) -> LpStatus {
        simplex::solve(self, true)
    }

    /// Any feasible point (phase one only).
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match simplex::solve(self, false) {
            LpStatus::Optimal { solution, .. } => Some(solution),
            _ => None,
        }
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Exact feasibility check of `x` (all rows, nonnegativity).
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        use num_traits::Signed;
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self
                .rows
                .iter()
                .all(|r| r.coeffs.iter().map(|(v, c)| c * &x[*v]).sum::<Rational>() == r.rhs)
    }
}
