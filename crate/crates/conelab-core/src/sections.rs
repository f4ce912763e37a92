//! Sections of cones by functionals and affine subspaces, and center
//! of symmetry detection.
//!
//! Sections of ellipsoidal cones are computed symbolically by
//! restricting the boundary quadric to the cutting subspace and
//! completing the square; polyhedral sections go through generator
//! scaling (codimension 1) or restricted halfspaces plus vertex
//! enumeration (general affine cuts).

use alloc::vec::Vec;

use crate::cone::{ConeGeometry, ConeRep, EllipsoidalCone};
use crate::dd::{polytope_vertices, VertexEnum};
use crate::error::ConeError;
use crate::linalg::{AffineSubspace, LinearSubspace};
use crate::mat::{self, Mat};
use crate::vec::{self, Vector};
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

/// A bounded convex body living inside an affine subspace of `R^n`.
#[derive(Clone, Debug)]
pub enum ConvexBody {
    Polytope(PolytopeBody),
    Ellipsoid(EllipsoidBody),
}

#[derive(Clone, Debug)]
pub struct PolytopeBody {
    pub ambient: AffineSubspace,
    /// Vertices in ambient coordinates.
    pub vertices: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct EllipsoidBody {
    pub ambient: AffineSubspace,
    /// Center in ambient coordinates.
    pub center: Vector,
    /// Orthonormal directions of the ellipsoid's span.
    pub basis: Vec<Vector>,
    /// Positive-definite form in `basis` coordinates; the body is
    /// `{center + basis z : z^T form z <= 1}`.
    pub form: Mat,
}

impl ConvexBody {
    pub fn ambient(&self) -> &AffineSubspace {
        match self {
            ConvexBody::Polytope(p) => &p.ambient,
            ConvexBody::Ellipsoid(e) => &e.ambient,
        }
    }

    /// Dimension of the body's span.
    pub fn body_dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => {
                crate::linalg::affine_span(&p.vertices, 1e-9).dim()
            }
            ConvexBody::Ellipsoid(e) => e.basis.len(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => vec::diameter(&p.vertices),
            ConvexBody::Ellipsoid(e) => {
                let (lambda, _) = mat::sym_eig(&e.form);
                let lmin = lambda.last().copied().unwrap_or(1.0);
                if lmin <= 0.0 {
                    f64::INFINITY
                } else {
                    2.0 / lmin.sqrt()
                }
            }
        }
    }

    /// Largest Euclidean norm over the body.
    pub fn max_norm(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p
                .vertices
                .iter()
                .map(|v| vec::norm(v))
                .fold(0.0, f64::max),
            ConvexBody::Ellipsoid(e) => ellipsoid_max_norm(e),
        }
    }

    /// Point membership, up to `tol` relative to the body diameter.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self {
            ConvexBody::Polytope(p) => {
                // x in conv(vertices) iff the lifted point (x, 1) lies in
                // the cone over the lifted vertices; measured by NNLS
                let mut rays: Vec<Vector> = Vec::with_capacity(p.vertices.len());
                for v in &p.vertices {
                    let mut r = v.clone();
                    r.push(1.0);
                    rays.push(r);
                }
                let mut target = x.to_vec();
                target.push(1.0);
                let d = crate::nnls::dist_to_cone(&rays, &target);
                d <= tol * vec::norm(x).max(1.0)
            }
            ConvexBody::Ellipsoid(e) => {
                let rel = vec::sub(x, &e.center);
                let z: Vector = e.basis.iter().map(|b| vec::dot(b, &rel)).collect();
                let off = vec::norm(&vec::sub(&rel, &{
                    let mut s = vec::zeros(rel.len());
                    for (c, bvec) in z.iter().zip(&e.basis) {
                        s = vec::axpy(&s, *c, bvec);
                    }
                    s
                }));
                off <= tol * vec::norm(x).max(1.0) && e.form.bilinear(&z, &z) <= 1.0 + tol
            }
        }
    }
}

/// Outcome of a section computation. `Unbounded` and `Empty` are
/// ordinary return variants, not errors: the CSS property quantifies
/// only over bounded sections, so callers skip these cheaply.
#[derive(Clone, Debug)]
pub enum SectionResult {
    Body(ConvexBody),
    Unbounded,
    Empty,
}

impl SectionResult {
    pub fn body(self) -> Option<ConvexBody> {
        match self {
            SectionResult::Body(b) => Some(b),
            _ => None,
        }
    }
}

/// Verdict of a central-symmetry test.
#[derive(Clone, Debug)]
pub struct SymmetryVerdict {
    pub symmetric: bool,
    pub center: Vector,
    /// Worst relative mismatch, normalized by the body diameter.
    pub defect: f64,
    /// Worst-offending vertex (or the center for exact bodies).
    pub witness: Vector,
}

/// `S_phi(C) = {y in C : phi.y = 1}`.
pub fn section_by_functional(cone: &ConeRep, phi: &[f64], tol: f64) -> SectionResult {
    let nphi = vec::norm(phi);
    assert!(nphi > 0.0, "phi must be nonzero");
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            let vals: Vec<f64> = c.generators.iter().map(|g| vec::dot(phi, g)).collect();
            let cut = tol * nphi;
            if vals.iter().all(|&v| v <= cut) {
                return SectionResult::Empty;
            }
            if vals.iter().any(|&v| v <= cut) {
                // a generator with phi.g <= 0 is a recession direction
                return SectionResult::Unbounded;
            }
            let vertices: Vec<Vector> = c
                .generators
                .iter()
                .zip(&vals)
                .map(|(g, &v)| vec::scale(g, 1.0 / v))
                .collect();
            let ambient = hyperplane_of(phi);
            SectionResult::Body(ConvexBody::Polytope(PolytopeBody { ambient, vertices }))
        }
        ConeGeometry::Ellipsoidal(c) => {
            let ambient = hyperplane_of(phi);
            quadric_section(c, &ambient)
        }
    }
}

/// The affine hyperplane `{x : phi.x = 1}`.
pub fn hyperplane_of(phi: &[f64]) -> AffineSubspace {
    let n = phi.len();
    let base = vec::scale(phi, 1.0 / vec::dot(phi, phi));
    let dirs = LinearSubspace::from_spanning(&[phi.to_vec()], n, 1e-12).annihilator();
    AffineSubspace::new(base, dirs)
}

/// Intersection of the cone with an arbitrary affine subspace.
pub fn section_by_affine(cone: &ConeRep, a: &AffineSubspace) -> SectionResult {
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            let d = a.dim();
            if d == 0 {
                return if c.contains(a.point(), 1e-9) {
                    SectionResult::Body(ConvexBody::Polytope(PolytopeBody {
                        ambient: a.clone(),
                        vertices: alloc::vec![a.point().clone()],
                    }))
                } else {
                    SectionResult::Empty
                };
            }
            let mut rows = Vec::with_capacity(c.halfspaces.len());
            let mut rhs = Vec::with_capacity(c.halfspaces.len());
            for h in &c.halfspaces {
                rows.push(a.directions.coords(h));
                rhs.push(-vec::dot(h, a.point()));
            }
            match polytope_vertices(&rows, &rhs, d) {
                VertexEnum::Vertices(zs) => {
                    let vertices: Vec<Vector> =
                        zs.iter().map(|z| a.from_coords(z)).collect();
                    SectionResult::Body(ConvexBody::Polytope(PolytopeBody {
                        ambient: a.clone(),
                        vertices,
                    }))
                }
                VertexEnum::Unbounded => SectionResult::Unbounded,
                VertexEnum::Empty => SectionResult::Empty,
            }
        }
        ConeGeometry::Ellipsoidal(c) => quadric_section(c, a),
    }
}

/// Section of an ellipsoidal cone by an affine subspace, via the
/// restricted boundary quadric.
fn quadric_section(c: &EllipsoidalCone, a: &AffineSubspace) -> SectionResult {
    let quad = c.quadric();
    let x0 = a.point();
    let dirs = a.directions.basis();
    let d = dirs.len();
    if d == 0 {
        return if c.contains(x0, 1e-9) {
            SectionResult::Body(ConvexBody::Polytope(PolytopeBody {
                ambient: a.clone(),
                vertices: alloc::vec![x0.clone()],
            }))
        } else {
            SectionResult::Empty
        };
    }
    // restrict q(x0 + D z) = c0 + 2 b.z - z^T G z
    let mut g = Mat::zeros(d, d);
    let mut b = vec::zeros(d);
    let ad: Vec<Vector> = dirs.iter().map(|v| quad.matvec(v)).collect();
    for i in 0..d {
        for j in 0..d {
            g[(i, j)] = -vec::dot(&dirs[i], &ad[j]);
        }
        b[i] = vec::dot(&ad[i], x0);
    }
    let g = g.symmetrized();
    let c0 = quad.bilinear(x0, x0);
    let scale = quad.frobenius_norm().max(1e-300);
    let tol_g = 1e-12 * scale;

    let (lambda, q) = mat::sym_eig(&g);
    let lmin = lambda.last().copied().unwrap();
    if lmin > tol_g {
        // elliptic: bounded section or empty
        let zstar = mat::solve(&g, &b).expect("PD solve");
        let rho = c0 + vec::dot(&b, &zstar);
        let rel = scale * (1.0 + vec::dot(x0, x0));
        if rho <= 1e-14 * rel {
            return SectionResult::Empty;
        }
        let center = a.from_coords(&zstar);
        if vec::dot(&c.u, &center) <= 0.0 {
            return SectionResult::Empty; // wrong nappe
        }
        let form = g.scaled(1.0 / rho);
        SectionResult::Body(ConvexBody::Ellipsoid(EllipsoidBody {
            ambient: a.clone(),
            center,
            basis: dirs.to_vec(),
            form,
        }))
    } else {
        // hyperbolic or parabolic restriction: the slice is unbounded
        // whenever it meets the positive nappe at all
        let v = q.col(d - 1); // direction of non-positive curvature
        let dir = a.directions.from_coords(&v);
        let axis_slope = vec::dot(&c.u, &dir);
        if lmin < -tol_g {
            if axis_slope.abs() > 1e-12 || vec::dot(&c.u, x0) > 0.0 {
                SectionResult::Unbounded
            } else {
                SectionResult::Empty
            }
        } else {
            // parabolic: q is (at most) linear along v
            let slope = vec::dot(&b, &v);
            if slope.abs() > 1e-10 * scale || c0 > 0.0 {
                SectionResult::Unbounded
            } else {
                SectionResult::Empty
            }
        }
    }
}

/// Candidate center and symmetry verdict for a bounded body.
///
/// Polytopes use the vertex centroid as candidate: a bounded centrally
/// symmetric polytope has a symmetric vertex set, so the centroid is
/// the center.
pub fn center_of_symmetry(body: &ConvexBody, tol_sym: f64) -> SymmetryVerdict {
    match body {
        ConvexBody::Ellipsoid(e) => SymmetryVerdict {
            symmetric: true,
            center: e.center.clone(),
            defect: 0.0,
            witness: e.center.clone(),
        },
        ConvexBody::Polytope(p) => {
            let c = vec::centroid(&p.vertices);
            symmetry_about_polytope(p, &c, tol_sym)
        }
    }
}

/// Symmetry verdict of a body about a prescribed center.
pub fn symmetry_about(body: &ConvexBody, center: &[f64], tol_sym: f64) -> SymmetryVerdict {
    match body {
        ConvexBody::Ellipsoid(e) => {
            let d = vec::dist(&e.center, center);
            let diam = body.diameter().max(1e-300);
            SymmetryVerdict {
                symmetric: d / diam <= tol_sym,
                center: e.center.clone(),
                defect: d / diam,
                witness: e.center.clone(),
            }
        }
        ConvexBody::Polytope(p) => symmetry_about_polytope(p, center, tol_sym),
    }
}

fn symmetry_about_polytope(p: &PolytopeBody, c: &[f64], tol_sym: f64) -> SymmetryVerdict {
    let diam = vec::diameter(&p.vertices);
    if p.vertices.len() == 1 || diam == 0.0 {
        return SymmetryVerdict {
            symmetric: true,
            center: p.vertices[0].clone(),
            defect: 0.0,
            witness: p.vertices[0].clone(),
        };
    }
    let mut defect = 0.0_f64;
    let mut witness = p.vertices[0].clone();
    for v in &p.vertices {
        let mirrored = vec::sub(&vec::scale(c, 2.0), v);
        let best = p
            .vertices
            .iter()
            .map(|w| vec::dist(&mirrored, w))
            .fold(f64::INFINITY, f64::min);
        if best / diam > defect {
            defect = best / diam;
            witness = v.clone();
        }
    }
    SymmetryVerdict {
        symmetric: defect <= tol_sym,
        center: c.to_vec(),
        defect,
        witness,
    }
}

/// Symmetry-duality check: given `S_phi(C)` bounded and centrally
/// symmetric about `x`, verifies that `S_x(C*)` is centrally symmetric
/// about `phi` and returns that verdict.
pub fn check_symmetry_duality(
    cone: &ConeRep,
    phi: &[f64],
    x: &[f64],
    tol_sym: f64,
) -> Result<SymmetryVerdict, ConeError> {
    let s_phi = match section_by_functional(cone, phi, 1e-9) {
        SectionResult::Body(b) => b,
        _ => return Err(ConeError::PreconditionFailed),
    };
    // gate: the primal section must really be symmetric about x
    let gate = symmetry_about(&s_phi, x, tol_sym.max(1e-7));
    if !gate.symmetric {
        return Err(ConeError::PreconditionFailed);
    }
    let dual = crate::duality::dual(cone)?;
    let s_x = match section_by_functional(&dual, x, 1e-9) {
        SectionResult::Body(b) => b,
        _ => return Err(ConeError::UnboundedSection),
    };
    Ok(symmetry_about(&s_x, phi, tol_sym))
}

/// Largest Euclidean norm over an ellipsoid `{center + B z : z^T F z <= 1}`,
/// computed from the secular equation of the constrained maximizer.
pub fn ellipsoid_max_norm(e: &EllipsoidBody) -> f64 {
    let d = e.basis.len();
    if d == 0 {
        return vec::norm(&e.center);
    }
    let (lambda, v) = mat::sym_eig(&e.form); // descending
    let m: Vec<f64> = lambda.iter().map(|&l| 1.0 / l).collect(); // ascending
    let m_max = m[d - 1];
    // p = Lambda^{-1/2} V^T B^T x0
    let bt_x0: Vector = e.basis.iter().map(|bv| vec::dot(bv, &e.center)).collect();
    let vt = v.transpose().matvec(&bt_x0);
    let p: Vec<f64> = (0..d).map(|i| vt[i] / lambda[i].sqrt()).collect();
    let x0_sq = vec::dot(&e.center, &e.center);

    let h = |mu: f64| -> f64 {
        (0..d)
            .map(|i| {
                let denom = mu - m[i];
                p[i] * p[i] / (denom * denom)
            })
            .sum::<f64>()
    };
    let value_at = |w: &[f64]| -> f64 {
        let quad: f64 = (0..d).map(|i| m[i] * w[i] * w[i]).sum();
        let lin: f64 = (0..d).map(|i| p[i] * w[i]).sum();
        x0_sq + 2.0 * lin + quad
    };

    let crit_scale = m_max.max(1.0);
    let delta = 1e-13 * crit_scale;
    if h(m_max + delta) < 1.0 {
        // hard case: maximizer has free weight on the flattest axis
        let mut w: Vec<f64> = (0..d)
            .map(|i| {
                if (m_max - m[i]).abs() <= delta {
                    0.0
                } else {
                    p[i] / (m_max - m[i])
                }
            })
            .collect();
        let s: f64 = w.iter().map(|x| x * x).sum();
        let alpha = (1.0 - s).max(0.0).sqrt();
        // put the free weight on the last (flattest) axis, sign along p
        w[d - 1] = alpha.copysign(if p[d - 1] >= 0.0 { 1.0 } else { -1.0 });
        return value_at(&w).max(0.0).sqrt();
    }
    let mut lo = m_max + delta;
    let mut hi = m_max + p.iter().map(|x| x.abs()).sum::<f64>() + crit_scale;
    while h(hi) > 1.0 {
        hi = m_max + 2.0 * (hi - m_max);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    let w: Vec<f64> = (0..d).map(|i| p[i] / (mu - m[i])).collect();
    value_at(&w).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{ice_cream_cone, orthant, ConeGeometry};
    use alloc::string::ToString;

    fn rep(g: ConeGeometry) -> ConeRep {
        ConeRep {
            id: "t".to_string(),
            provenance: "test".to_string(),
            geometry: g,
        }
    }

    fn icecream() -> ConeRep {
        rep(ConeGeometry::Ellipsoidal(ice_cream_cone()))
    }

    #[test]
    fn orthant_triangle_section() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let s = section_by_functional(&c, &[1.0, 1.0, 1.0], 1e-9);
        let SectionResult::Body(ConvexBody::Polytope(p)) = s else {
            panic!("expected polytope");
        };
        assert_eq!(p.vertices.len(), 3);
        for i in 0..3 {
            assert!(p
                .vertices
                .iter()
                .any(|v| vec::dist(v, &vec::unit(3, i)) < 1e-12));
        }
    }

    #[test]
    fn ice_cream_axis_section_is_unit_disk() {
        let s = section_by_functional(&icecream(), &[0.0, 0.0, 1.0], 1e-9);
        let SectionResult::Body(ConvexBody::Ellipsoid(e)) = s else {
            panic!("expected ellipsoid");
        };
        assert!(vec::dist(&e.center, &vec![0.0, 0.0, 1.0]) < 1e-12);
        // unit disk: form is the identity in any orthonormal basis
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((e.form[(i, j)] - want).abs() < 1e-9);
            }
        }
        assert!((ellipsoid_max_norm(&e) - 2.0_f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn ice_cream_slant_section_closed_form() {
        // phi = (0.5, 0, 1): substitute z = 1 - x/2 into z^2 = x^2 + y^2:
        // (3/4)(x + 2/3)^2 + y^2 = 4/3, center x = -2/3, y = 0, z = 4/3
        let s = section_by_functional(&icecream(), &[0.5, 0.0, 1.0], 1e-9);
        let SectionResult::Body(ConvexBody::Ellipsoid(e)) = s else {
            panic!("expected ellipsoid");
        };
        assert!(vec::dist(&e.center, &vec![-2.0 / 3.0, 0.0, 4.0 / 3.0]) < 1e-9);
        let verdict = center_of_symmetry(&ConvexBody::Ellipsoid(e), 1e-8);
        assert!(verdict.symmetric);
    }

    #[test]
    fn unbounded_and_empty_sections() {
        // phi = e1 on the ice-cream cone: section is a hyperbola region
        let s = section_by_affine(
            &icecream(),
            &AffineSubspace::new(
                vec![2.0, 0.0, 0.0],
                LinearSubspace::from_spanning(
                    &vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
                    3,
                    1e-9,
                ),
            ),
        );
        assert!(matches!(s, SectionResult::Unbounded));

        // phi pointing away from the cone: empty
        let s2 = section_by_functional(&icecream(), &[0.0, 0.0, -1.0], 1e-9);
        assert!(matches!(s2, SectionResult::Empty));

        // orthant with phi = (1,1,0): e3 is a recession direction
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let s3 = section_by_functional(&c, &[1.0, 1.0, 0.0], 1e-9);
        assert!(matches!(s3, SectionResult::Unbounded));
    }

    #[test]
    fn affine_section_of_ice_cream_segment() {
        // {z = 1, x = 0} cuts the disk in the segment |y| <= 1
        let a = AffineSubspace::new(
            vec![0.0, 0.0, 1.0],
            LinearSubspace::from_spanning(&vec![vec![0.0, 1.0, 0.0]], 3, 1e-9),
        );
        let s = section_by_affine(&icecream(), &a);
        let SectionResult::Body(ConvexBody::Ellipsoid(e)) = s else {
            panic!("expected 1-d ellipsoid (segment)");
        };
        assert!(vec::dist(&e.center, &vec![0.0, 0.0, 1.0]) < 1e-12);
        assert!((e.form[(0, 0)] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn affine_section_of_orthant_segment() {
        // orthant cap {x1+x2+x3=1, x1=x2}: segment (0,0,1)-(1/2,1/2,0)
        let a = crate::linalg::affine_span(
            &vec![vec![0.0, 0.0, 1.0], vec![0.5, 0.5, 0.0]],
            1e-9,
        );
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let s = section_by_affine(&c, &a);
        let SectionResult::Body(ConvexBody::Polytope(p)) = s else {
            panic!("expected polytope");
        };
        assert_eq!(p.vertices.len(), 2);
        assert!(p.vertices.iter().any(|v| vec::dist(v, &vec![0.0, 0.0, 1.0]) < 1e-9));
        assert!(p.vertices.iter().any(|v| vec::dist(v, &vec![0.5, 0.5, 0.0]) < 1e-9));
    }

    #[test]
    fn functional_and_affine_sections_agree() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let phi = [1.0, 2.0, 3.0];
        let s1 = section_by_functional(&c, &phi, 1e-9).body().unwrap();
        let s2 = section_by_affine(&c, &hyperplane_of(&phi)).body().unwrap();
        let (ConvexBody::Polytope(p1), ConvexBody::Polytope(p2)) = (&s1, &s2) else {
            panic!();
        };
        assert_eq!(p1.vertices.len(), p2.vertices.len());
        for v in &p1.vertices {
            assert!(p2.vertices.iter().any(|w| vec::dist(v, w) < 1e-9));
        }
    }

    #[test]
    fn square_center_detection() {
        let ambient = hyperplane_of(&[0.0, 0.0, 1.0]);
        let vertices = vec![
            vec![1.0, 1.0, 1.0],
            vec![-1.0, 1.0, 1.0],
            vec![-1.0, -1.0, 1.0],
            vec![1.0, -1.0, 1.0],
        ];
        let body = ConvexBody::Polytope(PolytopeBody { ambient, vertices });
        let v = center_of_symmetry(&body, 1e-8);
        assert!(v.symmetric);
        assert!(vec::dist(&v.center, &vec![0.0, 0.0, 1.0]) < 1e-12);
        assert_eq!(v.defect, 0.0);
    }

    #[test]
    fn triangle_is_asymmetric() {
        let ambient = hyperplane_of(&[1.0, 1.0, 1.0]);
        let vertices = vec![vec::unit(3, 0), vec::unit(3, 1), vec::unit(3, 2)];
        let body = ConvexBody::Polytope(PolytopeBody { ambient, vertices });
        let v = center_of_symmetry(&body, 1e-8);
        assert!(!v.symmetric);
        assert!(v.defect > 0.3);
        // brute force: no midpoint of vertex pairs nor the centroid works
        let verts = [vec::unit(3, 0), vec::unit(3, 1), vec::unit(3, 2)];
        let mut candidates = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                candidates.push(vec::scale(&vec::add(&verts[i], &verts[j]), 0.5));
            }
        }
        candidates.push(vec::centroid(&verts.to_vec()));
        for cand in candidates {
            let pb = PolytopeBody {
                ambient: hyperplane_of(&[1.0, 1.0, 1.0]),
                vertices: verts.to_vec(),
            };
            let verdict = symmetry_about_polytope(&pb, &cand, 1e-8);
            assert!(!verdict.symmetric);
        }
    }

    #[test]
    fn symmetry_duality_on_ice_cream() {
        let v = check_symmetry_duality(&icecream(), &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0], 1e-8)
            .unwrap();
        assert!(v.symmetric);
        assert!(vec::dist(&v.center, &vec![0.0, 0.0, 1.0]) < 1e-9);
    }

    #[test]
    fn symmetry_duality_gate_rejects_asymmetric_sections() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        // the triangle section of the orthant is not symmetric about its
        // centroid (or any other point), so the gate must fire
        let centroid = vec![1.0 / 3.0; 3];
        let r = check_symmetry_duality(&c, &[1.0, 1.0, 1.0], &centroid, 1e-8);
        assert!(matches!(r, Err(ConeError::PreconditionFailed)));
    }
}
