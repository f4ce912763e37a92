//! A small dense two-phase simplex for the handful of linear programs
//! the crate needs (pointedness tests, Minkowski gauges). Problems have
//! at most a few dozen variables, so Bland's rule is used throughout
//! for its cycling guarantee.

use alloc::vec::Vec;

use crate::mat::Mat;

const EPS: f64 = 1e-11;

pub enum LpResult {
    Optimal { objective: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

/// Minimize `c.x` subject to `A x = b`, `x >= 0`.
pub fn solve_standard(a: &Mat, b: &[f64], c: &[f64]) -> LpResult {
    let m = a.rows;
    let n = a.cols;
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(c.len(), n);

    // tableau with artificial variables: columns [x | artificials | rhs]
    let total = n + m;
    let mut t = Mat::zeros(m, total + 1);
    for i in 0..m {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[(i, j)] = flip * a[(i, j)];
        }
        t[(i, n + i)] = 1.0;
        t[(i, total)] = flip * b[i];
    }
    let mut basis: Vec<usize> = (n..total).collect();

    // phase 1: minimize the sum of artificials
    let mut cost1 = vec![0.0; total];
    for j in n..total {
        cost1[j] = 1.0;
    }
    if !run_simplex(&mut t, &mut basis, &cost1, total) {
        return LpResult::Unbounded; // cannot happen in phase 1
    }
    let phase1: f64 = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n)
        .map(|(i, _)| t[(i, total)])
        .sum();
    if phase1 > 1e-8 {
        return LpResult::Infeasible;
    }
    // pivot any artificial still in the basis out (or ignore its row)
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t[(i, j)].abs() > 1e-9) {
                pivot(&mut t, &mut basis, i, j, total);
            }
        }
    }

    // phase 2
    let mut cost2 = vec![0.0; total];
    cost2[..n].copy_from_slice(c);
    for j in n..total {
        cost2[j] = 1e30; // keep artificials out
    }
    if !run_simplex(&mut t, &mut basis, &cost2, total) {
        return LpResult::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[(i, total)];
        }
    }
    let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpResult::Optimal { objective, x }
}

fn pivot(t: &mut Mat, basis: &mut [usize], row: usize, col: usize, total: usize) {
    let p = t[(row, col)];
    for j in 0..=total {
        t[(row, j)] /= p;
    }
    for i in 0..t.rows {
        if i == row {
            continue;
        }
        let f = t[(i, col)];
        if f == 0.0 {
            continue;
        }
        for j in 0..=total {
            t[(i, j)] -= f * t[(row, j)];
        }
    }
    basis[row] = col;
}

/// Returns false if the LP is unbounded.
fn run_simplex(t: &mut Mat, basis: &mut [usize], cost: &[f64], total: usize) -> bool {
    let m = t.rows;
    for _iter in 0..20_000 {
        // reduced costs: c_j - c_B . B^-1 A_j
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j];
            for i in 0..m {
                rc -= cost[basis[i]] * t[(i, j)];
            }
            if rc < -EPS {
                entering = Some(j); // Bland: first improving column
                break;
            }
        }
        let Some(col) = entering else {
            return true;
        };
        // ratio test, Bland tie-break on basis index
        let mut row = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[(i, col)] > EPS {
                let r = t[(i, total)] / t[(i, col)];
                if r < best - EPS || (r < best + EPS && row.map_or(true, |ri: usize| basis[i] < basis[ri]))
                {
                    best = r;
                    row = Some(i);
                }
            }
        }
        let Some(row) = row else {
            return false;
        };
        pivot(t, basis, row, col, total);
    }
    true // iteration cap; treated as converged for our tiny problems
}

/// Feasibility of `M y >= 1` over free `y` (used for pointedness):
/// rewritten in standard form with `y = y+ - y-` and slacks.
pub fn feasible_geq_one(m_rows: &[crate::vec::Vector], n: usize) -> bool {
    let m = m_rows.len();
    let cols = 2 * n + m;
    let mut a = Mat::zeros(m, cols);
    let b = vec![1.0; m];
    for (i, row) in m_rows.iter().enumerate() {
        for j in 0..n {
            a[(i, j)] = row[j];
            a[(i, n + j)] = -row[j];
        }
        a[(i, 2 * n + i)] = -1.0; // surplus
    }
    let c = vec![0.0; cols];
    matches!(solve_standard(&a, &b, &c), LpResult::Optimal { .. })
}
