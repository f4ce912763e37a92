//! Double description: extreme rays of a pointed cone given by inward
//! halfspace normals, via incremental insertion with the combinatorial
//! adjacency test. Adequate for the dimensions (<= 16) and constraint
//! counts this crate works at.


use alloc::vec::Vec;

use crate::error::ConeError;
use crate::lp::{solve_standard, LpResult};
use crate::mat::{solve, Mat};
use crate::vec::{self, Vector};

const TIGHT_TOL: f64 = 1e-9;

#[derive(Clone)]
struct TightSet(Vec<u64>);

impl TightSet {
    fn new(words: usize) -> Self {
        TightSet(alloc::vec![0; words])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn intersect(&self, other: &TightSet) -> TightSet {
        TightSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Extreme rays (unit-normalized) of `{x : h.x >= 0 for all h}`.
///
/// Fails with `Degenerate` when the normals do not span `R^n` (the cone
/// then contains a line and has no ray description).
pub fn extreme_rays(normals: &[Vector], n: usize, _tol: f64) -> Result<Vec<Vector>, ConeError> {
    let mut hs: Vec<Vector> = Vec::new();
    for h in normals {
        if let Some(u) = vec::normalized(h) {
            if !hs.iter().any(|g| vec::dist(g, &u) < 1e-12) {
                hs.push(u);
            }
        }
    }
    let m = hs.len();
    if m < n {
        return Err(ConeError::Degenerate);
    }

    // greedy pivoted selection of n independent normals
    let mut chosen: Vec<usize> = Vec::new();
    let mut gs: Vec<Vector> = Vec::new(); // orthonormalized chosen normals
    for (i, h) in hs.iter().enumerate() {
        let mut r = h.clone();
        for g in &gs {
            r = vec::axpy(&r, -vec::dot(g, &r), g);
        }
        if vec::norm(&r) > 1e-8 {
            chosen.push(i);
            gs.push(vec::normalized(&r).unwrap());
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(ConeError::Degenerate);
    }

    // initial rays: columns of the inverse of the chosen normal matrix
    let hmat = Mat::from_rows(&chosen.iter().map(|&i| hs[i].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Vector> = Vec::new();
    for j in 0..n {
        let r = solve(&hmat, &vec::unit(n, j)).ok_or(ConeError::Degenerate)?;
        rays.push(vec::normalized(&r).ok_or(ConeError::Degenerate)?);
    }

    let mut processed: Vec<usize> = chosen.clone();
    let words = m.div_ceil(64);
    for i in 0..m {
        if processed.contains(&i) {
            continue;
        }
        let h = &hs[i];
        let vals: Vec<f64> = rays.iter().map(|r| vec::dot(h, r)).collect();
        if vals.iter().all(|&v| v >= -TIGHT_TOL) {
            processed.push(i);
            continue;
        }
        let tight: Vec<TightSet> = rays
            .iter()
            .map(|r| {
                let mut t = TightSet::new(words);
                for &k in &processed {
                    if vec::dot(&hs[k], r).abs() <= TIGHT_TOL {
                        t.set(k);
                    }
                }
                t
            })
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] > TIGHT_TOL).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] < -TIGHT_TOL).collect();
        let zero: Vec<usize> = (0..rays.len())
            .filter(|&k| vals[k].abs() <= TIGHT_TOL)
            .collect();

        let mut next: Vec<Vector> = Vec::new();
        for &k in pos.iter().chain(&zero) {
            next.push(rays[k].clone());
        }
        for &p in &pos {
            for &q in &neg {
                let common = tight[p].intersect(&tight[q]);
                if (common.count() as usize) + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|k| {
                    k == p || k == q || !common.is_subset_of(&tight[k])
                });
                if !adjacent {
                    continue;
                }
                let r = vec::axpy(&vec::scale(&rays[q], vals[p]), -vals[q], &rays[p]);
                if let Some(u) = vec::normalized(&r) {
                    if !next.iter().any(|g| vec::dist(g, &u) < 1e-9) {
                        next.push(u);
                    }
                }
            }
        }
        rays = next;
        processed.push(i);
        if rays.is_empty() {
            break;
        }
    }
    Ok(rays)
}

/// Outcome of polytope vertex enumeration.
pub enum VertexEnum {
    Vertices(Vec<Vector>),
    Unbounded,
    Empty,
}

/// Vertices of `{z in R^d : a_i . z >= b_i}` via the homogenization
/// `{(z, w) : a_i . z - b_i w >= 0, w >= 0}`.
pub fn polytope_vertices(a_rows: &[Vector], b: &[f64], d: usize) -> VertexEnum {
    let mut normals: Vec<Vector> = Vec::with_capacity(a_rows.len() + 1);
    for (row, &bi) in a_rows.iter().zip(b) {
        let mut h = row.clone();
        h.push(-bi);
        normals.push(h);
    }
    normals.push(vec::unit(d + 1, d));
    match extreme_rays(&normals, d + 1, TIGHT_TOL) {
        Ok(rays) => {
            if rays.is_empty() {
                return VertexEnum::Empty;
            }
            let mut verts = Vec::new();
            for r in &rays {
                let w = r[d];
                if w <= 1e-9 {
                    return VertexEnum::Unbounded;
                }
                verts.push(vec::scale(&r[..d], 1.0 / w));
            }
            if verts.is_empty() {
                VertexEnum::Empty
            } else {
                VertexEnum::Vertices(verts)
            }
        }
        Err(_) => {
            // homogeneous cone has lineality: the polyhedron is either
            // empty or unbounded without vertices; decide by LP
            if lp_feasible(a_rows, b, d) {
                VertexEnum::Unbounded
            } else {
                VertexEnum::Empty
            }
        }
    }
}

fn lp_feasible(a_rows: &[Vector], b: &[f64], d: usize) -> bool {
    // a.z >= b with free z: z = z+ - z-, surplus s
    let m = a_rows.len();
    if m == 0 {
        return true;
    }
    let cols = 2 * d + m;
    let mut a = Mat::zeros(m, cols);
    for (i, row) in a_rows.iter().enumerate() {
        for j in 0..d {
            a[(i, j)] = row[j];
            a[(i, d + j)] = -row[j];
        }
        a[(i, 2 * d + i)] = -1.0;
    }
    let c = alloc::vec![0.0; cols];
    matches!(solve_standard(&a, b, &c), LpResult::Optimal { .. })
}
