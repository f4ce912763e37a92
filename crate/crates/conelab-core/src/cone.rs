//! Closed pointed cone representations: polyhedral (generators +
//! halfspaces, kept consistent via double description) and ellipsoidal
//! (axis functional + base ellipsoid in an explicit orthonormal basis
//! of the axis kernel).

use alloc::string::String;
use alloc::vec::Vec;

use crate::dd;
use crate::error::ConeError;
use crate::linalg::LinearSubspace;
use crate::lp;
use crate::mat::{self, Mat};
use crate::vec::{self, Vector};

/// Polyhedral cone `{x : h.x >= 0}` = `cone(generators)`. Both
/// descriptions are stored; generators are the unit extreme rays and
/// halfspaces the unit inward facet normals.
#[derive(Clone, Debug)]
pub struct PolyhedralCone {
    pub dim: usize,
    pub generators: Vec<Vector>,
    pub halfspaces: Vec<Vector>,
}

impl PolyhedralCone {
    /// Build from generators; halfspaces are computed by double
    /// description and non-extreme generators are pruned.
    pub fn from_generators(generators: &[Vector], dim: usize) -> Result<Self, ConeError> {
        let gens: Vec<Vector> = generators
            .iter()
            .filter_map(|g| vec::normalized(g))
            .collect();
        if gens.is_empty() {
            return Err(ConeError::Degenerate);
        }
        // rays of the dual cone are the facet normals of C
        let halfspaces = dd::extreme_rays(&gens, dim, 1e-9)?;
        if rank_of(&halfspaces, dim) < dim {
            return Err(ConeError::Degenerate); // C not pointed
        }
        let generators = prune_to_extreme(&gens, &halfspaces, dim);
        Ok(PolyhedralCone {
            dim,
            generators,
            halfspaces,
        })
    }

    /// Build from inward halfspace normals; generators computed by
    /// double description and redundant halfspaces pruned.
    pub fn from_halfspaces(halfspaces: &[Vector], dim: usize) -> Result<Self, ConeError> {
        let hs: Vec<Vector> = halfspaces
            .iter()
            .filter_map(|h| vec::normalized(h))
            .collect();
        let generators = dd::extreme_rays(&hs, dim, 1e-9)?;
        if rank_of(&generators, dim) < dim {
            return Err(ConeError::Degenerate); // C not full-dimensional
        }
        let halfspaces = prune_to_extreme(&hs, &generators, dim);
        Ok(PolyhedralCone {
            dim,
            generators,
            halfspaces,
        })
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let margin = -tol * vec::norm(x).max(1e-300);
        self.halfspaces.iter().all(|h| vec::dot(h, x) >= margin)
    }

    pub fn interior_contains(&self, x: &[f64], tol: f64) -> bool {
        let margin = tol * vec::norm(x);
        vec::norm(x) > 0.0 && self.halfspaces.iter().all(|h| vec::dot(h, x) > margin)
    }

    /// Generators incident to the given facet normal.
    pub fn facet_generators(&self, h: &[f64], tol: f64) -> Vec<Vector> {
        self.generators
            .iter()
            .filter(|g| vec::dot(h, g).abs() <= tol)
            .cloned()
            .collect()
    }
}

fn rank_of(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let s = mat::svd(&Mat::from_rows(vectors));
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    s.sigma
        .iter()
        .filter(|&&x| smax > 0.0 && x > 1e-9 * smax)
        .count()
        .min(dim)
}

/// Keep only rays whose tight constraint set has rank `dim - 1`.
fn prune_to_extreme(rays: &[Vector], constraints: &[Vector], dim: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for r in rays {
        let tight: Vec<Vector> = constraints
            .iter()
            .filter(|h| vec::dot(h, r).abs() <= 1e-9)
            .cloned()
            .collect();
        if rank_of(&tight, dim) >= dim - 1 && !out.iter().any(|g| vec::dist(g, r) < 1e-9) {
            out.push(r.clone());
        }
    }
    out
}

/// Ellipsoidal cone: `x ∈ C` iff `x = 0` or `t := u.x > 0` and the
/// base coordinates `y = B^T (x/t - center)` satisfy `y^T F y <= 1`.
/// `basis` is an orthonormal basis of `ker(u)` and `u.center = 1`.
#[derive(Clone, Debug)]
pub struct EllipsoidalCone {
    pub dim: usize,
    pub u: Vector,
    pub center: Vector,
    pub basis: Vec<Vector>,
    pub form: Mat,
}

impl EllipsoidalCone {
    pub fn new(u: Vector, center: Vector, basis: Vec<Vector>, form: Mat) -> Result<Self, ConeError> {
        let dim = u.len();
        if center.len() != dim || basis.len() != dim - 1 {
            return Err(ConeError::BadParams);
        }
        if (vec::dot(&u, &center) - 1.0).abs() > 1e-9 {
            return Err(ConeError::BadParams);
        }
        Ok(EllipsoidalCone {
            dim,
            u,
            center,
            basis,
            form,
        })
    }

    /// Homogeneous boundary form `A` with `C = {x : u.x >= 0, x^T A x >= 0}`.
    pub fn quadric(&self) -> Mat {
        let n = self.dim;
        // A = u u^T - P^T (B F B^T) P with P = I - center u^T
        let b = Mat::from_rows(&self.basis).transpose(); // n x (n-1)
        let f_tilde = b.matmul(&self.form).matmul(&b.transpose());
        let mut p = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] -= self.center[i] * self.u[j];
            }
        }
        let pf = p.transpose().matmul(&f_tilde).matmul(&p);
        let mut a = Mat::outer(&self.u, &self.u);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] -= pf[(i, j)];
            }
        }
        a.symmetrized()
    }

    fn quad_scale(&self) -> f64 {
        self.quadric().frobenius_norm().max(1.0)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let nx = vec::norm(x);
        if nx == 0.0 {
            return true;
        }
        let t = vec::dot(&self.u, x);
        if t < -tol * nx * vec::norm(&self.u) {
            return false;
        }
        let a = self.quadric();
        a.bilinear(x, x) >= -tol * nx * nx * self.quad_scale()
    }

    pub fn interior_contains(&self, x: &[f64], tol: f64) -> bool {
        let nx = vec::norm(x);
        if nx == 0.0 {
            return false;
        }
        let t = vec::dot(&self.u, x);
        if t <= tol * nx * vec::norm(&self.u) {
            return false;
        }
        let a = self.quadric();
        a.bilinear(x, x) > tol * nx * nx * self.quad_scale()
    }

    /// Point of the base ellipsoid boundary in the direction of the
    /// unit base vector `omega` (length `dim - 1`).
    pub fn base_boundary_point(&self, omega: &[f64]) -> Vector {
        let (_, f_inv_sqrt) = mat::sym_sqrt_and_inv_sqrt(&self.form);
        let z = f_inv_sqrt.matvec(omega);
        let mut p = self.center.clone();
        for (k, b) in self.basis.iter().enumerate() {
            p = vec::axpy(&p, z[k], b);
        }
        p
    }
}

/// Tagged cone representation plus identity and provenance.
#[derive(Clone, Debug)]
pub enum ConeGeometry {
    Polyhedral(PolyhedralCone),
    Ellipsoidal(EllipsoidalCone),
}

#[derive(Clone, Debug)]
pub struct ConeRep {
    pub id: String,
    pub provenance: String,
    pub geometry: ConeGeometry,
}

impl ConeRep {
    pub fn polyhedral(id: String, provenance: String, cone: PolyhedralCone) -> Self {
        ConeRep {
            id,
            provenance,
            geometry: ConeGeometry::Polyhedral(cone),
        }
    }

    pub fn ellipsoidal(id: String, provenance: String, cone: EllipsoidalCone) -> Self {
        ConeRep {
            id,
            provenance,
            geometry: ConeGeometry::Ellipsoidal(cone),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.geometry {
            ConeGeometry::Polyhedral(c) => c.dim,
            ConeGeometry::Ellipsoidal(c) => c.dim,
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool, ConeError> {
        self.check_dim(x)?;
        Ok(match &self.geometry {
            ConeGeometry::Polyhedral(c) => c.contains(x, tol),
            ConeGeometry::Ellipsoidal(c) => c.contains(x, tol),
        })
    }

    pub fn interior_contains(&self, x: &[f64], tol: f64) -> Result<bool, ConeError> {
        self.check_dim(x)?;
        Ok(match &self.geometry {
            ConeGeometry::Polyhedral(c) => c.interior_contains(x, tol),
            ConeGeometry::Ellipsoidal(c) => c.interior_contains(x, tol),
        })
    }

    pub fn is_pointed(&self) -> bool {
        match &self.geometry {
            ConeGeometry::Polyhedral(c) => lp::feasible_geq_one(&c.generators, c.dim),
            // u.x > 0 on C \ {0}, so no line fits
            ConeGeometry::Ellipsoidal(_) => true,
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), ConeError> {
        if x.len() != self.dim() {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// A point in the interior (the generator mean or the base center).
    pub fn interior_point(&self) -> Vector {
        match &self.geometry {
            ConeGeometry::Polyhedral(c) => {
                let mut s = vec::zeros(c.dim);
                for g in &c.generators {
                    s = vec::add(&s, g);
                }
                vec::scale(&s, 1.0 / c.generators.len() as f64)
            }
            ConeGeometry::Ellipsoidal(c) => c.center.clone(),
        }
    }

    /// A functional strictly positive on `C \ {0}` (interior of the dual).
    pub fn interior_dual_point(&self) -> Vector {
        match &self.geometry {
            ConeGeometry::Polyhedral(c) => {
                let mut s = vec::zeros(c.dim);
                for h in &c.halfspaces {
                    s = vec::add(&s, h);
                }
                vec::scale(&s, 1.0 / c.halfspaces.len() as f64)
            }
            ConeGeometry::Ellipsoidal(c) => c.u.clone(),
        }
    }
}

/// The smallest cone containing a bounded convex body whose affine hull
/// avoids the origin.
pub fn cone_over(body: &crate::sections::ConvexBody) -> Result<ConeGeometry, ConeError> {
    use crate::sections::ConvexBody;
    match body {
        ConvexBody::Polytope(p) => {
            let n = p.ambient.ambient();
            let hull = crate::linalg::affine_span(&p.vertices, 1e-9);
            if vec::norm(hull.point()) <= 1e-10 {
                return Err(ConeError::OriginInSpan);
            }
            let cone = PolyhedralCone::from_generators(&p.vertices, n)?;
            Ok(ConeGeometry::Polyhedral(cone))
        }
        ConvexBody::Ellipsoid(e) => {
            let nu_space = e.ambient.directions.annihilator();
            if nu_space.dim() != 1 {
                return Err(ConeError::Degenerate);
            }
            let nu = nu_space.basis()[0].clone();
            let c0 = vec::dot(&nu, &e.center);
            if c0.abs() <= 1e-10 {
                return Err(ConeError::OriginInSpan);
            }
            let u = vec::scale(&nu, 1.0 / c0);
            let cone = EllipsoidalCone::new(u, e.center.clone(), e.basis.clone(), e.form.clone())?;
            Ok(ConeGeometry::Ellipsoidal(cone))
        }
    }
}

/// Standard circular "ice-cream" cone `{z >= sqrt(x^2 + y^2)}` in R^3.
pub fn ice_cream_cone() -> EllipsoidalCone {
    EllipsoidalCone::new(
        vec::unit(3, 2),
        vec::unit(3, 2),
        alloc::vec![vec::unit(3, 0), vec::unit(3, 1)],
        Mat::identity(2),
    )
    .unwrap()
}

/// Nonnegative orthant of `R^n`.
pub fn orthant(n: usize) -> PolyhedralCone {
    let gens: Vec<Vector> = (0..n).map(|i| vec::unit(n, i)).collect();
    PolyhedralCone::from_generators(&gens, n).unwrap()
}

/// An orthonormal basis of the orthogonal complement of a single vector.
pub fn complement_basis(v: &[f64]) -> Vec<Vector> {
    let n = v.len();
    let sub = LinearSubspace::from_spanning(&[v.to_vec()], n, 1e-12);
    sub.annihilator().basis().to_vec()
}
