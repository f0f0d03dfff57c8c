//! Cyclic Jacobi eigen-solver for small real symmetric matrices.
#![allow(clippy::needless_range_loop)]

/// Off-diagonal Frobenius norm at which iteration stops.
pub const RESIDUAL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<const N: usize> {
    /// Descending.
    pub values: [f64; N],
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: [[f64; N]; N],
    /// Off-diagonal norm of the final rotated matrix.
    pub residual: f64,
}

fn off_diagonal<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

pub fn symmetric_eigen<const N: usize>(m: &[[f64; N]; N]) -> Eigen<N> {
    let mut a = *m;
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) < RESIDUAL {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                // Rotation zeroing a[p][q] (Golub & Van Loan, symmetric Schur).
                let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..N {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let mut values = [0.0; N];
    let mut vectors = [[0.0; N]; N];
    for (k, &i) in order.iter().enumerate() {
        values[k] = a[i][i];
        for r in 0..N {
            vectors[k][r] = v[r][i];
        }
    }
    Eigen {
        values,
        vectors,
        residual: off_diagonal(&a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_two_by_two() {
        let e = symmetric_eigen(&[[3.0, 0.0], [0.0, -1.0]]);
        assert_eq!(e.values, [3.0, -1.0]);
        let e = symmetric_eigen(&[[2.0, 1.0], [1.0, 2.0]]);
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let v = e.vectors[0];
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-14);
    }

    #[test]
    fn reconstructs_random_symmetric_matrix() {
        let m = [
            [4.0, 1.0, -2.0, 0.5],
            [1.0, 2.0, 0.0, 1.0],
            [-2.0, 0.0, 3.0, -1.5],
            [0.5, 1.0, -1.5, -1.0],
        ];
        let e = symmetric_eigen(&m);
        assert!(e.residual < RESIDUAL);
        for (k, vec) in e.vectors.iter().enumerate() {
            for i in 0..4 {
                let mv: f64 = (0..4).map(|j| m[i][j] * vec[j]).sum();
                assert!((mv - e.values[k] * vec[i]).abs() < 1e-10);
            }
        }
        let trace: f64 = (0..4).map(|i| m[i][i]).sum();
        assert!((e.values.iter().sum::<f64>() - trace).abs() < 1e-12);
    }
}
