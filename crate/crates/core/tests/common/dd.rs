//! Vertex enumeration of `{x ≥ 0 : A x = b}` by the double-description
//! method, in exact arithmetic and without the simplex code.
//!
//! The polytope is homogenized to the cone `{(x, t) ≥ 0 : A x − b t = 0}`,
//! written in coordinates of a nullspace basis of `[A | −b]`, whose extreme
//! rays (all with `t > 0` for a bounded polytope) are the vertices.

#![allow(clippy::needless_range_loop)]

use monogamy_core::lp::LinearProgram;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Basis of `{z : M z = 0}` as columns, from the reduced row echelon form.
fn nullspace(mut m: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][c];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let d = &f * &m[row][k];
                    m[r][k] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![Q::zero(); cols];
            z[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                z[p] = -m[r][f].clone();
            }
            z
        })
        .collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix by Gauss–Jordan.
fn inverse(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonsingular");
        m.swap(c, p);
        let inv = Q::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn normalize(mut r: Vec<Q>) -> Vec<Q> {
    if let Some(s) = r.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in r.iter_mut() {
            *x /= &s;
        }
    }
    r
}

struct Ray {
    w: Vec<Q>,
    zeros: Vec<bool>,
}

/// Every vertex of the polytope of `lp` (objective ignored).
pub fn polytope_vertices(lp: &LinearProgram) -> Vec<Vec<Q>> {
    let n = lp.num_vars();
    let matrix: Vec<Vec<Q>> = lp
        .rows()
        .iter()
        .map(|eq| {
            let mut row = vec![Q::zero(); n + 1];
            for (v, c) in &eq.coeffs {
                row[*v] += c;
            }
            row[n] = -eq.rhs.clone();
            row
        })
        .collect();
    let basis = nullspace(matrix, n + 1);
    let dim = basis.len();
    if dim == 0 {
        return Vec::new();
    }
    // Constraint i reads (K w)_i >= 0, K having the basis vectors as columns.
    let rows: Vec<Vec<Q>> = (0..=n).map(|i| basis.iter().map(|z| z[i].clone()).collect()).collect();

    let mut initial = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Q>> = initial.iter().map(|&j: &usize| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial) == trial.len() {
            initial.push(i);
        }
        if initial.len() == dim {
            break;
        }
    }
    assert_eq!(initial.len(), dim, "cone is not pointed");
    let inv = inverse(&initial.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
    let mut processed = vec![false; rows.len()];
    for &i in &initial {
        processed[i] = true;
    }
    let zero_set = |w: &[Q], processed: &[bool]| -> Vec<bool> {
        rows.iter()
            .enumerate()
            .map(|(i, r)| processed[i] && dot(r, w).is_zero())
            .collect()
    };
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let w: Vec<Q> = (0..dim).map(|k| inv[k][j].clone()).collect();
            let zeros = zero_set(&w, &processed);
            Ray { w: normalize(w), zeros }
        })
        .collect();

    for h in 0..rows.len() {
        if processed[h] {
            continue;
        }
        let values: Vec<Q> = rays.iter().map(|r| dot(&rows[h], &r.w)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<bool> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[q].zeros)
                    .map(|(a, b)| *a && *b)
                    .collect();
                if common.iter().filter(|&&c| c).count() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !common.iter().zip(&rays[r].zeros).all(|(c, z)| !*c || *z));
                if !adjacent {
                    continue;
                }
                let w: Vec<Q> = rays[q]
                    .w
                    .iter()
                    .zip(&rays[p].w)
                    .map(|(a, b)| &values[p] * a - &values[q] * b)
                    .collect();
                let mut zeros = common;
                zeros[h] = true;
                next.push(Ray { w: normalize(w), zeros });
            }
        }
        processed[h] = true;
        for (i, r) in rays.into_iter().enumerate() {
            if !values[i].is_negative() {
                let mut zeros = r.zeros;
                zeros[h] = values[i].is_zero();
                next.push(Ray { w: r.w, zeros });
            }
        }
        rays = next;
    }

    rays.iter()
        .filter_map(|r| {
            let z: Vec<Q> = (0..=n).map(|i| dot(&rows[i], &r.w)).collect();
            let t = z[n].clone();
            (t.is_positive()).then(|| z[..n].iter().map(|x| x / &t).collect())
        })
        .collect()
}

/// Maximum of the program's objective over all enumerated vertices.
pub fn max_over_vertices(lp: &LinearProgram) -> Option<Q> {
    polytope_vertices(lp).iter().map(|x| lp.objective_value(x)).max()
}
