use num_traits::{Signed, Zero};

use super::LinearProgram;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpStatus {
    Optimal { value: Rational, solution: Vec<Rational> },
    Infeasible,
    Unbounded,
}

/// Dense tableau. Artificial columns are not stored: an artificial that
/// leaves the basis never re-enters, so only its basis slot is tracked
/// (as `n + row`).
struct Tableau {
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the structural columns for the current objective.
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn from_program(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let mut rows = Vec::with_capacity(lp.num_constraints());
        let mut rhs = Vec::with_capacity(lp.num_constraints());
        for eq in lp.rows() {
            let mut row = vec![Rational::zero(); n];
            for (v, c) in &eq.coeffs {
                row[*v] += c;
            }
            let mut b = eq.rhs.clone();
            if b.is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
                b = -b;
            }
            rows.push(row);
            rhs.push(b);
        }
        let m = rows.len();
        Tableau {
            n,
            rows,
            rhs,
            basis: (n..n + m).collect(),
            reduced: vec![Rational::zero(); n],
            value: Rational::zero(),
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let nz: Vec<usize> = (0..self.n).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &nz {
            self.rows[r][j] /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            self.value += &f * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule iterations until optimal; `false` means unbounded.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.n).find(|&j| allowed[j] && self.reduced[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let basic_cost = |b: usize| if b < self.n { cost[b].clone() } else { Rational::zero() };
        self.reduced = cost.to_vec();
        self.value = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = basic_cost(self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.n {
                if !self.rows[i][j].is_zero() {
                    let delta = &cb * &self.rows[i][j];
                    self.reduced[j] -= delta;
                }
            }
            self.value += &cb * &self.rhs[i];
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

pub(super) fn solve(lp: &LinearProgram, optimize: bool) -> LpStatus {
    let mut t = Tableau::from_program(lp);
    let n = t.n;
    let all = vec![true; n];

    // Phase one: maximize -(sum of artificials).
    for i in 0..t.rows.len() {
        for j in 0..n {
            if !t.rows[i][j].is_zero() {
                let a = t.rows[i][j].clone();
                t.reduced[j] += a;
            }
        }
        t.value -= &t.rhs[i];
    }
    t.run(&all);
    if !t.value.is_zero() {
        return LpStatus::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    if !optimize {
        return LpStatus::Optimal {
            value: Rational::zero(),
            solution: t.solution(),
        };
    }
    t.set_objective(lp.objective());
    if !t.run(&all) {
        return LpStatus::Unbounded;
    }
    LpStatus::Optimal {
        value: t.value.clone(),
        solution: t.solution(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lp(n: usize, rows: &[(&[i64], i64)], obj: &[i64]) -> LinearProgram {
        let mut p = LinearProgram::new(n);
        for (coeffs, rhs) in rows {
            p.add_equality(
                coeffs.iter().enumerate().map(|(j, &c)| (j, int(c))).collect(),
                int(*rhs),
            );
        }
        for (j, &c) in obj.iter().enumerate() {
            p.set_objective_coeff(j, int(c));
        }
        p
    }

    fn optimum(p: &LinearProgram) -> Rational {
        match p.maximize() {
            LpStatus::Optimal { value, solution } => {
                assert!(p.is_feasible(&solution));
                assert_eq!(p.objective_value(&solution), value);
                value
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn small_textbook_problem() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6  -> x = 4, y = 0, value 12.
        let p = lp(4, &[(&[1, 1, 1, 0], 4), (&[1, 3, 0, 1], 6)], &[3, 2, 0, 0]);
        assert_eq!(optimum(&p), int(12));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y + s1 = 2, x + 2y + s2 = 2 -> x = y = 2/3.
        let p = lp(4, &[(&[2, 1, 1, 0], 2), (&[1, 2, 0, 1], 2)], &[1, 1, 0, 0]);
        assert_eq!(optimum(&p), ratio(4, 3));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(2, &[(&[1, 1], -1)], &[1, 0]);
        assert_eq!(p.maximize(), LpStatus::Infeasible);
        let q = lp(2, &[(&[1, -1], 0)], &[1, 0]);
        assert_eq!(q.maximize(), LpStatus::Unbounded);
        // 0 = 1
        let r = lp(1, &[(&[0], 1)], &[0]);
        assert_eq!(r.maximize(), LpStatus::Infeasible);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // x + y = 1 stated twice, plus their sum.
        let p = lp(2, &[(&[1, 1], 1), (&[1, 1], 1), (&[2, 2], 2)], &[1, 2]);
        assert_eq!(optimum(&p), int(2));
        assert!(p.feasible_point().is_some());
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x - y = -3, x <= 1 via slack: max y -> 3.
        let p = lp(3, &[(&[-1, -1, 0], -3), (&[1, 0, 1], 1)], &[0, 1, 0]);
        assert_eq!(optimum(&p), int(3));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example (with slacks), which cycles under the
        // largest-coefficient rule. Optimum 5/4 at x0 = x2 = 1.
        let mut p = LinearProgram::new(7);
        let rows: [(&[(usize, Rational)], Rational); 3] = [
            (
                &[(0, ratio(1, 4)), (1, int(-8)), (2, int(-1)), (3, int(9)), (4, int(1))],
                int(0),
            ),
            (
                &[
                    (0, ratio(1, 2)),
                    (1, int(-12)),
                    (2, ratio(-1, 2)),
                    (3, int(3)),
                    (5, int(1)),
                ],
                int(0),
            ),
            (&[(2, int(1)), (6, int(1))], int(1)),
        ];
        for (c, b) in rows {
            p.add_equality(c.to_vec(), b);
        }
        for (j, c) in [(0, ratio(3, 4)), (1, int(-20)), (2, ratio(1, 2)), (3, int(-6))] {
            p.set_objective_coeff(j, c);
        }
        assert_eq!(optimum(&p), ratio(5, 4));
    }
}
