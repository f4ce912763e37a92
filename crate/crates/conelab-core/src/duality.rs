//! Dual cones and the quantitative link between bounded sections and
//! the dual's interior.
//!
//! The polyhedral dual swaps generators and halfspace normals. The
//! ellipsoidal dual is computed in closed form: for a cone with axis
//! functional `u`, base center `c` (with `u.c = 1`), basis `B` and form
//! `F`, the support-function calculation gives
//! `C* = {psi : psi.c >= sqrt(psi^T B F^{-1} B^T psi)}`, again an
//! ellipsoidal cone with the roles of `u` and `c` exchanged.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cone::{complement_basis, ConeGeometry, ConeRep, EllipsoidalCone, PolyhedralCone};
use crate::error::ConeError;
use crate::linalg::affine_span;
use crate::mat::{self, Mat};
use crate::nnls::dist_to_cone;
use crate::sections::{section_by_affine, section_by_functional, ConvexBody, SectionResult};
use crate::vec::{self, Vector};
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

/// The dual cone `C* = {psi : psi.x >= 0 for all x in C}`.
pub fn dual(cone: &ConeRep) -> Result<ConeRep, ConeError> {
    let id = {
        let mut s = String::from(cone.id.as_str());
        s.push_str("*");
        s
    };
    let provenance = String::from("dual");
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            if !cone.is_pointed() {
                return Err(ConeError::Degenerate);
            }
            // facet normals of C are exactly the extreme rays of C* and
            // vice versa; both lists are already unit and irredundant
            let d = PolyhedralCone {
                dim: c.dim,
                generators: c.halfspaces.clone(),
                halfspaces: c.generators.clone(),
            };
            Ok(ConeRep::polyhedral(id, provenance, d))
        }
        ConeGeometry::Ellipsoidal(c) => {
            // base the dual on the hyperplane {psi.c = 1}, which contains
            // u (because u.c = 1); on it the dual constraint reads
            // w^T (B F^{-1} B^T) w <= 1 for the offset w = psi - u
            let f_inv = mat::sym_inv(&c.form);
            let b = Mat::from_rows(&c.basis).transpose();
            let m = b.matmul(&f_inv).matmul(&b.transpose()).symmetrized();
            let dirs = complement_basis(&c.center);
            let dn = dirs.len();
            let mut g = Mat::zeros(dn, dn);
            for i in 0..dn {
                let mdj: Vec<Vector> = dirs.iter().map(|d| m.matvec(d)).collect();
                for j in 0..dn {
                    g[(i, j)] = vec::dot(&dirs[i], &mdj[j]);
                }
            }
            let g = g.symmetrized();
            let d = EllipsoidalCone::new(c.center.clone(), c.u.clone(), dirs, g)?;
            Ok(ConeRep::ellipsoidal(id, provenance, d))
        }
    }
}

/// Membership test for `C*` driven entirely by one bounded section of
/// `C`: `psi in C*` iff `psi >= 0` on the section body.
pub struct SectionDual {
    body: ConvexBody,
}

impl SectionDual {
    /// Minimum of `psi` over the section body.
    pub fn support_min(&self, psi: &[f64]) -> f64 {
        match &self.body {
            ConvexBody::Polytope(p) => p
                .vertices
                .iter()
                .map(|v| vec::dot(psi, v))
                .fold(f64::INFINITY, f64::min),
            ConvexBody::Ellipsoid(e) => {
                let f_inv = mat::sym_inv(&e.form);
                let w: Vector = e.basis.iter().map(|b| vec::dot(b, psi)).collect();
                vec::dot(psi, &e.center) - vec::dot(&w, &f_inv.matvec(&w)).max(0.0).sqrt()
            }
        }
    }

    pub fn contains(&self, psi: &[f64], tol: f64) -> bool {
        self.support_min(psi) >= -tol * vec::norm(psi).max(1.0)
    }
}

/// Implicit description of `C*` from the linearly bounded section
/// `S_phi(C)`.
pub fn dual_from_section(cone: &ConeRep, phi: &[f64]) -> Result<SectionDual, ConeError> {
    match section_by_functional(cone, phi, 1e-9) {
        SectionResult::Body(body) => Ok(SectionDual { body }),
        SectionResult::Unbounded => Err(ConeError::UnboundedSection),
        SectionResult::Empty => Err(ConeError::EmptySection),
    }
}

/// Quantitative bounded-section certificate. For bounded nonempty
/// `S_phi` the exact product law `r_star * eps_star = 1` holds; when
/// the section is unbounded or empty, `eps_star = 0` (phi is not in the
/// dual's interior) and the defect is reported as 1.
#[derive(Clone, Debug)]
pub struct DualityCertificate {
    pub phi: Vector,
    pub r_star: f64,
    pub eps_star: f64,
    pub product_defect: f64,
}

pub fn boundedness_certificate(cone: &ConeRep, phi: &[f64]) -> DualityCertificate {
    assert!(vec::norm(phi) > 0.0, "phi must be nonzero");
    match section_by_functional(cone, phi, 1e-9) {
        SectionResult::Body(body) => {
            let r_star = body.max_norm();
            let eps_star = dist_to_dual_boundary(cone, phi);
            DualityCertificate {
                phi: phi.to_vec(),
                r_star,
                eps_star,
                product_defect: (r_star * eps_star - 1.0).abs(),
            }
        }
        SectionResult::Unbounded => DualityCertificate {
            phi: phi.to_vec(),
            r_star: f64::INFINITY,
            eps_star: 0.0,
            product_defect: 1.0,
        },
        SectionResult::Empty => DualityCertificate {
            phi: phi.to_vec(),
            r_star: 0.0,
            eps_star: 0.0,
            product_defect: 1.0,
        },
    }
}

/// Euclidean distance from `phi` to the boundary of `C*`; zero when
/// `phi` is outside the open dual interior.
fn dist_to_dual_boundary(cone: &ConeRep, phi: &[f64]) -> f64 {
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            // interior test first: phi must be strictly positive on C
            if !c
                .generators
                .iter()
                .all(|g| vec::dot(g, phi) > 1e-12 * vec::norm(phi))
            {
                return 0.0;
            }
            // boundary of C* is the union of its facets; the facet dual
            // to generator g is spanned by the halfspace normals tight
            // on g, and NNLS gives the distance to each facet cone
            let mut best = f64::INFINITY;
            for g in &c.generators {
                let tight: Vec<Vector> = c
                    .halfspaces
                    .iter()
                    .filter(|h| vec::dot(h, g).abs() <= 1e-9)
                    .cloned()
                    .collect();
                best = best.min(dist_to_cone(&tight, phi));
            }
            best
        }
        ConeGeometry::Ellipsoidal(c) => {
            let t = vec::dot(&c.center, phi); // dual axis functional is c
            let quad = dual(cone).expect("ellipsoidal dual").quadric_of();
            if t <= 0.0 || quad.bilinear(phi, phi) <= 0.0 {
                return 0.0;
            }
            dist_to_quadric_cone(&quad, phi)
        }
    }
}

impl ConeRep {
    /// Homogeneous boundary quadric of an ellipsoidal cone.
    fn quadric_of(&self) -> Mat {
        match &self.geometry {
            ConeGeometry::Ellipsoidal(c) => c.quadric(),
            ConeGeometry::Polyhedral(_) => panic!("polyhedral cone has no quadric"),
        }
    }
}

/// Distance from an interior point `phi` (with `phi^T A phi > 0`) to
/// the quadric `{psi : psi^T A psi = 0}`, via the secular equation of
/// the stationarity condition `psi = (I - mu A)^{-1} phi`.
fn dist_to_quadric_cone(a: &Mat, phi: &[f64]) -> f64 {
    let n = a.rows;
    let (lambda, q) = mat::sym_eig(a); // descending; one positive, rest negative
    let hat = q.transpose().matvec(phi);
    let g = |mu: f64| -> f64 {
        (0..n)
            .map(|i| {
                let d = 1.0 - mu * lambda[i];
                lambda[i] * hat[i] * hat[i] / (d * d)
            })
            .sum::<f64>()
    };
    let lam_min = lambda[n - 1]; // most negative
    let mu_lo = 1.0 / lam_min;
    let crit_tol = 1e-12 * lam_min.abs();
    let delta = 1e-12 * mu_lo.abs().max(1.0);

    let psi_from = |mu: f64| -> Vector {
        let coords: Vec<f64> = (0..n)
            .map(|i| {
                if (lambda[i] - lam_min).abs() <= crit_tol && (1.0 - mu * lambda[i]).abs() < 1e-9 {
                    0.0
                } else {
                    hat[i] / (1.0 - mu * lambda[i])
                }
            })
            .collect();
        coords
    };

    if g(mu_lo + delta) >= 0.0 {
        // hard case: phi has (numerically) no component on the flattest
        // negative eigendirections; spend the residual there directly
        let mut coords = psi_from(mu_lo);
        let residual: f64 = (0..n)
            .map(|i| lambda[i] * coords[i] * coords[i])
            .sum::<f64>();
        let t = (residual.max(0.0) / (-lam_min)).sqrt();
        coords[n - 1] += t;
        let psi = q.matvec(&coords);
        return vec::dist(&psi, phi);
    }

    // g is increasing on (mu_lo, 1/lambda_max) and positive at 0, so the
    // root sits in (mu_lo, 0]
    let mut lo = mu_lo + delta;
    let mut hi = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let psi = q.matvec(&psi_from(0.5 * (lo + hi)));
    vec::dist(&psi, phi)
}

/// Whether `phi` is strictly positive on `C \ {0}`.
pub fn strictly_positive(cone: &ConeRep, phi: &[f64]) -> bool {
    let margin = 1e-12 * vec::norm(phi).max(1.0);
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => c.generators.iter().all(|g| vec::dot(g, phi) > margin),
        ConeGeometry::Ellipsoidal(c) => {
            // min of phi over the base ellipsoid {center + B z : z^T F z <= 1}
            let f_inv = mat::sym_inv(&c.form);
            let w: Vector = c.basis.iter().map(|b| vec::dot(b, phi)).collect();
            let min = vec::dot(phi, &c.center) - vec::dot(&w, &f_inv.matvec(&w)).max(0.0).sqrt();
            min > margin
        }
    }
}

/// The perpendicular section `S = {x in C : phi.x = 1 for all phi in
/// aff(Sstar)}` determined by a bounded section of the dual.
///
/// Returns the body together with its cutting affine subspace, whose
/// codimension is `dim(aff Sstar) + 1`.
pub fn perp_section(
    cone: &ConeRep,
    sstar: &[Vector],
) -> Result<(ConvexBody, crate::linalg::AffineSubspace), ConeError> {
    if sstar.is_empty() {
        return Err(ConeError::BadParams);
    }
    let dual_cone = dual(cone)?;
    let hull = affine_span(sstar, 1e-9);
    // the input must be a bounded dual section meeting int(C*)
    match section_by_affine(&dual_cone, &hull) {
        SectionResult::Body(b) => {
            let probe = match &b {
                ConvexBody::Polytope(p) => vec::centroid(&p.vertices),
                ConvexBody::Ellipsoid(e) => e.center.clone(),
            };
            if !dual_cone.interior_contains(&probe, 1e-12)? {
                return Err(ConeError::PreconditionFailed);
            }
        }
        SectionResult::Unbounded => return Err(ConeError::UnboundedInput),
        SectionResult::Empty => return Err(ConeError::PreconditionFailed),
    }
    let perp = crate::linalg::perp_affine(&hull, 1e-10)?;
    match section_by_affine(cone, &perp) {
        SectionResult::Body(body) => Ok((body, perp)),
        SectionResult::Unbounded => Err(ConeError::UnboundedSection),
        SectionResult::Empty => Err(ConeError::EmptySection),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{ice_cream_cone, orthant};
    use crate::rng::{substream, unit_vector};
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
    fn orthant_is_self_dual() {
        for n in 2..=5 {
            let c = rep(ConeGeometry::Polyhedral(orthant(n)));
            let d = dual(&c).unwrap();
            let ConeGeometry::Polyhedral(p) = &d.geometry else {
                panic!()
            };
            assert_eq!(p.generators.len(), n);
            for i in 0..n {
                let e = vec::unit(n, i);
                assert!(p.generators.iter().any(|g| vec::dist(g, &e) < 1e-12));
            }
        }
    }

    #[test]
    fn wedge_dual_generators() {
        // cone((1,0), (1,1)/sqrt 2) has dual cone((0,1), (1,-1)/sqrt 2)
        let s = 0.5_f64.sqrt();
        let c = PolyhedralCone::from_generators(&vec![vec![1.0, 0.0], vec![s, s]], 2).unwrap();
        let d = dual(&rep(ConeGeometry::Polyhedral(c))).unwrap();
        let ConeGeometry::Polyhedral(p) = &d.geometry else {
            panic!()
        };
        assert_eq!(p.generators.len(), 2);
        assert!(p.generators.iter().any(|g| vec::dist(g, &vec![0.0, 1.0]) < 1e-9));
        assert!(p.generators.iter().any(|g| vec::dist(g, &vec![s, -s]) < 1e-9));
    }

    #[test]
    fn ice_cream_is_self_dual_by_sampling() {
        let c = icecream();
        let d = dual(&c).unwrap();
        let mut rng = substream(7, 0);
        for _ in 0..2000 {
            let x = unit_vector(&mut rng, 3);
            assert_eq!(
                c.contains(&x, 1e-9).unwrap(),
                d.contains(&x, 1e-9).unwrap(),
                "membership mismatch at {:?}",
                x
            );
        }
    }

    #[test]
    fn biduality_roundtrip() {
        let c = icecream();
        let dd = dual(&dual(&c).unwrap()).unwrap();
        let mut rng = substream(11, 1);
        for _ in 0..1000 {
            let x = unit_vector(&mut rng, 3);
            assert_eq!(c.contains(&x, 1e-8).unwrap(), dd.contains(&x, 1e-8).unwrap());
        }
    }

    #[test]
    fn dual_from_section_examples() {
        let s3 = 3.0_f64.sqrt();
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let sd = dual_from_section(&c, &[1.0 / s3; 3]).unwrap();
        assert!(sd.contains(&[1.0, 0.0, 0.0], 1e-9));
        assert!(!sd.contains(&[1.0, 1.0, -1.0], 1e-9));
        // min over the triangle vertex sqrt(3) e3 is -sqrt(3)
        assert!((sd.support_min(&[1.0, 1.0, -1.0]) + s3).abs() < 1e-9);

        let sd2 = dual_from_section(&icecream(), &[0.0, 0.0, 1.0]).unwrap();
        // min over the unit disk at z=1 of 0.5x + z is 1 - 0.5
        assert!((sd2.support_min(&[0.5, 0.0, 1.0]) - 0.5).abs() < 1e-9);
        assert!(sd2.contains(&[0.5, 0.0, 1.0], 1e-9));
    }

    #[test]
    fn dual_from_section_rejects_unbounded() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        assert!(matches!(
            dual_from_section(&c, &[1.0, 1.0, 0.0]),
            Err(ConeError::UnboundedSection)
        ));
    }

    #[test]
    fn certificate_examples() {
        let c2 = rep(ConeGeometry::Polyhedral(orthant(2)));
        let cert = boundedness_certificate(&c2, &[1.0, 1.0]);
        assert!((cert.r_star - 1.0).abs() < 1e-9);
        assert!((cert.eps_star - 1.0).abs() < 1e-9);
        assert!(cert.product_defect < 1e-9);

        let cert2 = boundedness_certificate(&icecream(), &[0.0, 0.0, 1.0]);
        assert!((cert2.r_star - 2.0_f64.sqrt()).abs() < 1e-9);
        assert!((cert2.eps_star - 0.5_f64.sqrt()).abs() < 1e-9);
        assert!(cert2.product_defect < 1e-9);

        let cert3 = boundedness_certificate(&c2, &[1.0, 0.0]);
        assert_eq!(cert3.eps_star, 0.0);
    }

    #[test]
    fn product_law_on_random_functionals() {
        let c = icecream();
        let mut rng = substream(23, 2);
        let mut tested = 0;
        while tested < 50 {
            let mut phi = unit_vector(&mut rng, 3);
            phi[2] = phi[2].abs() + 1.05; // keep phi well inside int C*
            let cert = boundedness_certificate(&c, &phi);
            assert!(cert.eps_star > 0.0);
            assert!(
                cert.product_defect < 1e-7 * cert.r_star.max(1.0),
                "defect {} at phi {:?}",
                cert.product_defect,
                phi
            );
            tested += 1;
        }
    }

    #[test]
    fn strict_positivity_examples() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        assert!(strictly_positive(&c, &[1.0, 1.0, 1.0]));
        assert!(!strictly_positive(&c, &[1.0, 1.0, 0.0]));
        assert!(strictly_positive(&icecream(), &[0.9, 0.0, 1.0]));
        assert!(!strictly_positive(&icecream(), &[1.1, 0.0, 1.0]));
    }

    #[test]
    fn perp_section_examples() {
        // 0-dim dual section {e3} -> unit disk at z=1, codim 1
        let (body, aff) = perp_section(&icecream(), &[vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(aff.dim(), 2);
        let ConvexBody::Ellipsoid(e) = &body else { panic!() };
        assert!(vec::dist(&e.center, &vec![0.0, 0.0, 1.0]) < 1e-9);

        // 1-dim dual section spanned by {e3, (0.5,0,1)} -> segment
        // {z=1, x=0, |y| <= 1}, codim 2
        let (body2, aff2) =
            perp_section(&icecream(), &[vec![0.0, 0.0, 1.0], vec![0.5, 0.0, 1.0]]).unwrap();
        assert_eq!(aff2.dim(), 1);
        let ConvexBody::Ellipsoid(seg) = &body2 else { panic!() };
        assert!(vec::dist(&seg.center, &vec![0.0, 0.0, 1.0]) < 1e-9);
        assert!((body2.max_norm() - 2.0_f64.sqrt()).abs() < 1e-9);

        // orthant with Sstar = {(1,1,1)} -> simplex face, codim 1
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let (body3, aff3) = perp_section(&c, &[vec![1.0, 1.0, 1.0]]).unwrap();
        assert_eq!(aff3.dim(), 2);
        let ConvexBody::Polytope(p) = &body3 else { panic!() };
        assert_eq!(p.vertices.len(), 3);
    }

    #[test]
    fn perp_section_rejects_unbounded_dual_input() {
        // aff{e1, 2*e1} is the x-axis, which meets the dual orthant in a ray
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let r = perp_section(&c, &[vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]]);
        assert!(matches!(r, Err(ConeError::UnboundedInput)));
    }
}
