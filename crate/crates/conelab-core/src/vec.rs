//! Dense vector helpers. Vectors are plain `Vec<f64>`; ambient
//! dimension is fixed per scene and checked by callers.

use alloc::vec::Vec;
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;


/// A point or functional in `R^n`, identified via the dot product.
pub type Vector = Vec<f64>;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn neg(a: &[f64]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn zeros(n: usize) -> Vector {
    vec![0.0; n]
}

/// i-th standard basis vector of `R^n`.
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = 1.0;
    v
}

/// Normalize to unit length. Returns `None` for (near-)zero input.
pub fn normalized(a: &[f64]) -> Option<Vector> {
    let n = norm(a);
    if n <= 0.0 || !n.is_finite() {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

/// Mean of a nonempty point set.
pub fn centroid(points: &[Vector]) -> Vector {
    let n = points[0].len();
    let mut c = zeros(n);
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let k = points.len() as f64;
    for ci in c.iter_mut() {
        *ci /= k;
    }
    c
}

/// Largest pairwise distance of a point set (0 for singletons).
pub fn diameter(points: &[Vector]) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let dij = dist(&points[i], &points[j]);
            if dij > d {
                d = dij;
            }
        }
    }
    d
}
