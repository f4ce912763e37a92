//! Non-negative least squares (Lawson–Hanson active set). Used for
//! distance-to-cone queries: `dist(b, cone(columns of A))` is the
//! residual of `min ||A x - b||` over `x >= 0`.


use alloc::vec::Vec;

use crate::mat::{lstsq, Mat};
use crate::vec::{self, Vector};

/// Solve `min ||A x - b||, x >= 0`. Returns `(x, residual_norm)`.
pub fn nnls(a: &Mat, b: &[f64]) -> (Vector, f64) {
    let n = a.cols;
    let mut x = alloc::vec![0.0; n];
    let mut passive = alloc::vec![false; n];
    let bnorm = vec::norm(b).max(1.0);
    let tol = 1e-12 * bnorm;

    for _outer in 0..(4 * n + 16) {
        // gradient of 0.5||Ax-b||^2 is A^T(Ax - b); w = -gradient
        let r = vec::sub(b, &a.matvec(&x));
        let w: Vector = (0..n).map(|j| vec::dot(&a.col(j), &r)).collect();
        let cand = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(jmax) = cand else { break };
        if w[jmax] <= tol {
            break;
        }
        passive[jmax] = true;

        loop {
            // unconstrained LS on the passive set
            let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let sub_cols: Vec<Vector> = idx.iter().map(|&j| a.col(j)).collect();
            let sub = Mat::from_rows(&sub_cols).transpose();
            let z = lstsq(&sub, b, 1e-13);
            if z.iter().all(|&v| v > tol) {
                for (k, &j) in idx.iter().enumerate() {
                    x[j] = z[k];
                }
                for (j, xj) in x.iter_mut().enumerate() {
                    if !passive[j] {
                        *xj = 0.0;
                    }
                }
                break;
            }
            // step toward z until the first passive variable hits zero
            let mut alpha = f64::INFINITY;
            for (k, &j) in idx.iter().enumerate() {
                if z[k] <= tol {
                    let denom = x[j] - z[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (k, &j) in idx.iter().enumerate() {
                x[j] += alpha * (z[k] - x[j]);
                if x[j] <= tol {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let res = vec::norm(&vec::sub(b, &a.matvec(&x)));
    (x, res)
}

/// Distance from `b` to the conical hull of `rays`.
pub fn dist_to_cone(rays: &[Vector], b: &[f64]) -> f64 {
    if rays.is_empty() {
        return vec::norm(b);
    }
    let a = Mat::from_rows(rays).transpose();
    nnls(&a, b).1
}
