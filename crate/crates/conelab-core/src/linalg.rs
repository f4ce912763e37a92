//! Linear and affine subspace arithmetic: spans, annihilators,
//! perpendicular affine spaces and quotient projections.
//!
//! Affine subspaces are kept canonical (base point orthogonal to the
//! direction space) so that equality reduces to a base distance plus
//! two projector comparisons.

use alloc::vec::Vec;

use crate::error::ConeError;
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;
use crate::mat::{svd, Mat};
use crate::vec::{self, Vector};

/// A linear subspace of `R^n`, stored as an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl LinearSubspace {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: (0..ambient).map(|i| vec::unit(ambient, i)).collect(),
        }
    }

    /// Orthonormalize a spanning set; directions with singular value
    /// below `tol_rank * sigma_max` are dropped.
    pub fn from_spanning(vectors: &[Vector], ambient: usize, tol_rank: f64) -> Self {
        if vectors.is_empty() {
            return LinearSubspace::zero(ambient);
        }
        let a = Mat::from_rows(vectors);
        let s = svd(&a);
        let smax = s.sigma.first().copied().unwrap_or(0.0);
        let mut basis = Vec::new();
        for j in 0..a.cols {
            if smax > 0.0 && s.sigma[j] > tol_rank * smax {
                basis.push(s.v.col(j));
            }
        }
        LinearSubspace { ambient, basis }
    }

    /// Construct directly from vectors that are already orthonormal.
    pub fn from_orthonormal(basis: Vec<Vector>, ambient: usize) -> Self {
        LinearSubspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &[f64]) -> Vector {
        let mut p = vec::zeros(self.ambient);
        for b in &self.basis {
            let c = vec::dot(b, x);
            for (pi, bi) in p.iter_mut().zip(b) {
                *pi += c * bi;
            }
        }
        p
    }

    /// Component of `x` orthogonal to the subspace.
    pub fn reject(&self, x: &[f64]) -> Vector {
        vec::sub(x, &self.project(x))
    }

    pub fn contains_vector(&self, x: &[f64], tol: f64) -> bool {
        let nx = vec::norm(x);
        vec::norm(&self.reject(x)) <= tol * nx.max(1.0)
    }

    /// Coordinates of `x` in the subspace basis.
    pub fn coords(&self, x: &[f64]) -> Vector {
        self.basis.iter().map(|b| vec::dot(b, x)).collect()
    }

    /// Point of the ambient space with the given basis coordinates.
    pub fn from_coords(&self, z: &[f64]) -> Vector {
        let mut p = vec::zeros(self.ambient);
        for (c, b) in z.iter().zip(&self.basis) {
            for (pi, bi) in p.iter_mut().zip(b) {
                *pi += c * bi;
            }
        }
        p
    }

    /// Orthogonal complement: all vectors annihilated by the subspace.
    pub fn annihilator(&self) -> LinearSubspace {
        if self.basis.is_empty() {
            return LinearSubspace::full(self.ambient);
        }
        let a = Mat::from_rows(&self.basis);
        let s = svd(&a);
        // basis rows are orthonormal, so the first dim() right singular
        // vectors span self and the rest span the complement
        let mut basis = Vec::new();
        for j in self.basis.len()..self.ambient {
            basis.push(s.v.col(j));
        }
        LinearSubspace {
            ambient: self.ambient,
            basis,
        }
    }

    /// Frobenius distance between orthogonal projectors; zero iff the
    /// subspaces coincide.
    pub fn projector_distance(&self, other: &LinearSubspace) -> f64 {
        let mut d = 0.0;
        for i in 0..self.ambient {
            let e = vec::unit(self.ambient, i);
            let pa = self.project(&e);
            let pb = other.project(&e);
            d += vec::dot(&vec::sub(&pa, &pb), &vec::sub(&pa, &pb));
        }
        d.sqrt()
    }

    /// Orthogonal projection matrix onto the annihilator, the concrete
    /// model of the quotient map `V -> V/L`.
    pub fn quotient_project(&self) -> Mat {
        let n = self.ambient;
        let mut p = Mat::identity(n);
        for b in &self.basis {
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] -= b[i] * b[j];
                }
            }
        }
        p
    }
}

/// An affine subspace `base + span(directions)` in canonical form:
/// `base` is the point of the subspace closest to the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubspace {
    pub base: Vector,
    pub directions: LinearSubspace,
}

impl AffineSubspace {
    pub fn new(base: Vector, directions: LinearSubspace) -> Self {
        let base = directions.reject(&base);
        AffineSubspace { base, directions }
    }

    pub fn ambient(&self) -> usize {
        self.directions.ambient()
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    /// Any point of the subspace (the canonical base).
    pub fn point(&self) -> &Vector {
        &self.base
    }

    pub fn contains_point(&self, x: &[f64], tol: f64) -> bool {
        let r = self.directions.reject(&vec::sub(x, &self.base));
        vec::norm(&r) <= tol * vec::norm(x).max(1.0)
    }

    /// Distance from a point to the subspace.
    pub fn distance_to(&self, x: &[f64]) -> f64 {
        vec::norm(&self.directions.reject(&vec::sub(x, &self.base)))
    }

    /// Closest point of the subspace to `x`.
    pub fn project_point(&self, x: &[f64]) -> Vector {
        vec::add(
            &self.base,
            &self.directions.project(&vec::sub(x, &self.base)),
        )
    }

    /// Coordinates of an (assumed contained) point in the direction basis.
    pub fn coords(&self, x: &[f64]) -> Vector {
        self.directions.coords(&vec::sub(x, &self.base))
    }

    pub fn from_coords(&self, z: &[f64]) -> Vector {
        vec::add(&self.base, &self.directions.from_coords(z))
    }

    /// A measure of mismatch: base distance plus projector distance.
    pub fn subspace_distance(&self, other: &AffineSubspace) -> f64 {
        vec::dist(&self.base, &other.base) + self.directions.projector_distance(&other.directions)
    }
}

/// Affine span of a point set; the dimension is the numerical rank of
/// the centered point matrix at `tol_rank`.
pub fn affine_span(points: &[Vector], tol_rank: f64) -> AffineSubspace {
    assert!(!points.is_empty(), "affine_span needs at least one point");
    let n = points[0].len();
    let c = vec::centroid(points);
    let centered: Vec<Vector> = points.iter().map(|p| vec::sub(p, &c)).collect();
    let directions = LinearSubspace::from_spanning(&centered, n, tol_rank);
    AffineSubspace::new(c, directions)
}

/// Annihilator of a linear subspace (orthogonal complement under the
/// dot-product identification of the dual).
pub fn annihilator(l: &LinearSubspace) -> LinearSubspace {
    l.annihilator()
}

/// Perpendicular affine space `A^perp = { phi : phi . x = 1 for all x in A }`.
///
/// Requires `0` to be at distance more than `tol_origin` from `A`.
pub fn perp_affine(a: &AffineSubspace, tol_origin: f64) -> Result<AffineSubspace, ConeError> {
    let b = &a.base; // canonical base = closest point to origin
    let nb = vec::dot(b, b);
    if nb.sqrt() <= tol_origin {
        return Err(ConeError::OriginInSpan);
    }
    let phi0 = vec::scale(b, 1.0 / nb);
    // directions of A^perp: orthogonal to base and to every direction of A
    let mut spanned: Vec<Vector> = a.directions.basis().to_vec();
    spanned.push(phi0.clone());
    let spanned_sub = LinearSubspace::from_spanning(&spanned, a.ambient(), 1e-12);
    let dirs = spanned_sub.annihilator();
    Ok(AffineSubspace::new(phi0, dirs))
}

/// Quotient projection modeling `V -> V/L` as the orthogonal projection
/// onto the annihilator of `L`.
pub fn quotient_project(l: &LinearSubspace) -> Mat {
    l.quotient_project()
}
