//! Constructive procedures: extending a codimension-2 section to a
//! proper section through the 2-D quotient cone, convex hulls of
//! boundary intersections, and the random cone generators used by the
//! verification harness.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::cone::{
    complement_basis, ConeGeometry, ConeRep, EllipsoidalCone, PolyhedralCone,
};
use crate::error::ConeError;
use crate::linalg::{affine_span, AffineSubspace, LinearSubspace};
use crate::mat::{self, Mat};
use crate::properties::boundary_intersection;
use crate::rng::{normal, normal_vector, substream, unit_vector};
use crate::sections::{
    center_of_symmetry, section_by_affine, ConvexBody, EllipsoidBody, PolytopeBody,
    SectionResult,
};
use crate::vec::{self, Vector};
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

/// Result of lifting a codimension-2 section to a proper section whose
/// center (for CSS cones) falls back onto the input's affine hull.
#[derive(Clone, Debug)]
pub struct SectionExtension {
    pub input_section: ConvexBody,
    pub extended_section: ConvexBody,
    /// The lifted chord line through the quotient midpoint.
    pub line: AffineSubspace,
    /// Candidate symmetry center of the extended section.
    pub center: Vector,
}

/// Extend a bounded codimension-2 section `S` of `C` to a proper
/// section `T`: quotient by the direction space of `aff(S)`, pick the
/// chord of the 2-D image cone whose midpoint is the image of `S`, and
/// slice `C` with the preimage of that chord.
pub fn extend_codim2_section(
    cone: &ConeRep,
    s: &ConvexBody,
) -> Result<SectionExtension, ConeError> {
    let n = cone.dim();
    let hull = s.ambient();
    if n < 3 || n - hull.dim() != 2 {
        return Err(ConeError::NotCodim2);
    }
    let probe = match s {
        ConvexBody::Polytope(p) => vec::centroid(&p.vertices),
        ConvexBody::Ellipsoid(e) => e.center.clone(),
    };
    if !cone.interior_contains(&probe, 1e-12)? {
        return Err(ConeError::PreconditionFailed);
    }

    // L = aff(S) - y; quotient model = orthogonal projection onto the
    // 2-D complement, expressed in an orthonormal basis E
    let l = &hull.directions;
    let e = l.annihilator();
    debug_assert_eq!(e.dim(), 2);
    let (r1, r2) = quotient_boundary_rays(cone, &e)?;
    let s2 = e.coords(&probe); // image of all of aff(S)

    // chord with midpoint s2: solve t1 r1 + t2 r2 = 2 s2, t1, t2 > 0
    let m = Mat::from_rows(&[
        alloc::vec![r1[0], r2[0]],
        alloc::vec![r1[1], r2[1]],
    ]);
    let t = mat::solve(&m, &[2.0 * s2[0], 2.0 * s2[1]]).ok_or(ConeError::ChordInfeasible)?;
    if t[0] <= 0.0 || t[1] <= 0.0 {
        return Err(ConeError::ChordInfeasible);
    }
    let p1 = e.from_coords(&vec::scale(&r1, t[0]));
    let p2 = e.from_coords(&vec::scale(&r2, t[1]));

    // the preimage of the chord line: directions L + (p2 - p1)
    let mut dirs: Vec<Vector> = l.basis().to_vec();
    dirs.push(vec::sub(&p2, &p1));
    let cut = AffineSubspace::new(
        p1.clone(),
        LinearSubspace::from_spanning(&dirs, n, 1e-12),
    );
    let extended = match section_by_affine(cone, &cut) {
        SectionResult::Body(b) => b,
        _ => return Err(ConeError::SectionUnbounded),
    };
    let center = center_of_symmetry(&extended, 1e-8).center;
    let line = affine_span(&[p1, p2], 1e-12);
    Ok(SectionExtension {
        input_section: s.clone(),
        extended_section: extended,
        line,
        center,
    })
}

/// Boundary rays (unit, in `e`-coordinates) of the image of the cone
/// under orthogonal projection onto the 2-plane spanned by `e`.
fn quotient_boundary_rays(
    cone: &ConeRep,
    e: &LinearSubspace,
) -> Result<(Vector, Vector), ConeError> {
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            // projection of a finitely generated cone is generated by
            // the projected generators; take the angular hull
            let mut angles: Vec<f64> = Vec::new();
            for g in &c.generators {
                let w = e.coords(g);
                if vec::norm(&w) > 1e-10 {
                    angles.push(w[1].atan2(w[0]));
                }
            }
            if angles.len() < 2 {
                return Err(ConeError::QuotientNotPointed);
            }
            angles.sort_by(f64::total_cmp);
            // the image cone is pointed iff some angular gap exceeds pi
            let k = angles.len();
            let mut best_gap = core::f64::consts::TAU + angles[0] - angles[k - 1];
            let mut lo = angles[0];
            let mut hi = angles[k - 1];
            for i in 0..k - 1 {
                let gap = angles[i + 1] - angles[i];
                if gap > best_gap {
                    best_gap = gap;
                    lo = angles[i + 1];
                    hi = angles[i];
                }
            }
            if best_gap <= core::f64::consts::PI + 1e-12 {
                return Err(ConeError::QuotientNotPointed);
            }
            Ok((
                alloc::vec![lo.cos(), lo.sin()],
                alloc::vec![hi.cos(), hi.sin()],
            ))
        }
        ConeGeometry::Ellipsoidal(_) => {
            // the dual of the projection is the slice of the dual:
            // (Q C)* = C* cap span(e); find its boundary rays from the
            // restricted dual quadric, then rotate back by 90 degrees
            let dual = crate::duality::dual(cone)?;
            let ConeGeometry::Ellipsoidal(dc) = &dual.geometry else {
                unreachable!("ellipsoidal dual");
            };
            let a = dc.quadric();
            let eb = e.basis();
            let mut m = Mat::zeros(2, 2);
            for i in 0..2 {
                let aej = a.matvec(&eb[i]);
                for j in 0..2 {
                    m[(i, j)] = vec::dot(&aej, &eb[j]);
                }
            }
            let m = m.symmetrized();
            let (lam, q) = mat::sym_eig(&m);
            if lam[0] <= 0.0 || lam[1] >= 0.0 {
                return Err(ConeError::QuotientNotPointed);
            }
            let axis2 = e.coords(&dc.u);
            let q1 = q.col(0);
            let q2 = q.col(1);
            let alpha = (-lam[1]).sqrt();
            let beta = lam[0].sqrt();
            let mut psi = [vec::zeros(2), vec::zeros(2)];
            for (k, sign) in [1.0, -1.0].iter().enumerate() {
                let mut w = vec::axpy(&vec::scale(&q1, alpha), sign * beta, &q2);
                if vec::dot(&w, &axis2) < 0.0 {
                    w = vec::neg(&w);
                }
                psi[k] = vec::normalized(&w).ok_or(ConeError::QuotientNotPointed)?;
            }
            // primal boundary ray r_i is orthogonal to psi_j (j != i)
            // and nonnegative against psi_i
            let rot = |w: &Vector| alloc::vec![-w[1], w[0]];
            let mut r1 = rot(&psi[1]);
            if vec::dot(&r1, &psi[0]) < 0.0 {
                r1 = vec::neg(&r1);
            }
            let mut r2 = rot(&psi[0]);
            if vec::dot(&r2, &psi[1]) < 0.0 {
                r2 = vec::neg(&r2);
            }
            Ok((r1, r2))
        }
    }
}

/// Convex hull of `boundary_intersection(C, 2x, n_dirs)`: an ellipsoid
/// when the samples fit one central quadric, otherwise the sample
/// polytope.
pub fn fbi_body(
    cone: &ConeRep,
    x: &[f64],
    n_dirs: usize,
    seed: u64,
) -> Result<ConvexBody, ConeError> {
    if !cone.interior_contains(x, 1e-12)? {
        return Err(ConeError::NotInterior);
    }
    let gamma = boundary_intersection(cone, &vec::scale(x, 2.0), n_dirs, seed)?;
    let ambient = affine_span(&gamma, 1e-7);
    if let Some(ell) = fit_central_quadric(&gamma, &ambient, 1e-7) {
        return Ok(ConvexBody::Ellipsoid(ell));
    }
    Ok(ConvexBody::Polytope(PolytopeBody {
        ambient,
        vertices: gamma,
    }))
}

/// Least-squares conic fit `z^T Q z + 2 b.z = 1` in the coordinates of
/// `ambient`; returns the ellipsoid when `Q` completes to a PD form and
/// the samples fit within `tol` relative residual.
fn fit_central_quadric(
    points: &[Vector],
    ambient: &AffineSubspace,
    tol: f64,
) -> Option<EllipsoidBody> {
    let d = ambient.dim();
    if d == 0 || points.len() < (d + 1) * (d + 2) {
        return None;
    }
    let cols = d * (d + 1) / 2 + d;
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let z = ambient.coords(p);
        let mut row = Vec::with_capacity(cols);
        for i in 0..d {
            for j in i..d {
                let f = if i == j { 1.0 } else { 2.0 };
                row.push(f * z[i] * z[j]);
            }
        }
        for zi in &z {
            row.push(2.0 * zi);
        }
        rows.push(row);
    }
    let a = Mat::from_rows(&rows);
    let ones = alloc::vec![1.0; points.len()];
    let sol = mat::lstsq(&a, &ones, 1e-12);
    let fitted = a.matvec(&sol);
    let residual = fitted.iter().map(|&v| (v - 1.0).abs()).fold(0.0, f64::max);
    if residual > tol {
        return None;
    }
    let mut q = Mat::zeros(d, d);
    let mut idx = 0;
    for i in 0..d {
        for j in i..d {
            q[(i, j)] = sol[idx];
            q[(j, i)] = sol[idx];
            idx += 1;
        }
    }
    let b: Vector = sol[idx..].to_vec();
    // complete the square: (z - zc)^T Q (z - zc) = 1 + b^T Q^{-1} b
    let zc_neg = mat::solve(&q, &b)?;
    let zc = vec::neg(&zc_neg);
    let rho = 1.0 + vec::dot(&b, &zc_neg);
    if rho <= 0.0 {
        return None;
    }
    let form = q.scaled(1.0 / rho);
    let (lam, _) = mat::sym_eig(&form);
    if lam[d - 1] <= 0.0 {
        return None;
    }
    Some(EllipsoidBody {
        ambient: ambient.clone(),
        center: ambient.from_coords(&zc),
        basis: ambient.directions.basis().to_vec(),
        form,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Ellipsoidal,
    Simplicial,
    PolyhedralMGon,
    PerturbedEllipsoidal,
}

impl GeneratorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorKind::Ellipsoidal => "ellipsoidal",
            GeneratorKind::Simplicial => "simplicial",
            GeneratorKind::PolyhedralMGon => "polyhedral_m_gon",
            GeneratorKind::PerturbedEllipsoidal => "perturbed_ellipsoidal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ellipsoidal" => Some(GeneratorKind::Ellipsoidal),
            "simplicial" => Some(GeneratorKind::Simplicial),
            "polyhedral_m_gon" => Some(GeneratorKind::PolyhedralMGon),
            "perturbed_ellipsoidal" => Some(GeneratorKind::PerturbedEllipsoidal),
            _ => None,
        }
    }
}

/// Deterministic random cone generator. The same `(kind, n, seed,
/// delta)` always yields the same cone.
pub fn generate_cone(
    kind: GeneratorKind,
    n: usize,
    seed: u64,
    delta: f64,
) -> Result<ConeRep, ConeError> {
    if n < 2 || n > 16 || delta < 0.0 {
        return Err(ConeError::BadParams);
    }
    let stream = match kind {
        GeneratorKind::Ellipsoidal => 1,
        GeneratorKind::Simplicial => 2,
        GeneratorKind::PolyhedralMGon => 3,
        GeneratorKind::PerturbedEllipsoidal => 4,
    };
    let mut rng = substream(seed, (stream << 8) | n as u64);
    let id = format!("{}-n{}-s{}", kind.as_str(), n, seed);
    let provenance = format!("generate_cone(kind={}, n={}, seed={}, delta={})", kind.as_str(), n, seed, delta);
    match kind {
        GeneratorKind::Ellipsoidal => {
            let c = random_ellipsoidal(n, &mut rng)?;
            Ok(ConeRep::ellipsoidal(id, provenance, c))
        }
        GeneratorKind::Simplicial => {
            let gens = random_simplicial_generators(n, &mut rng);
            let c = PolyhedralCone::from_generators(&gens, n)?;
            Ok(ConeRep::polyhedral(id, provenance, c))
        }
        GeneratorKind::PolyhedralMGon => {
            let m = 5 + 2 * (seed % 4) as usize; // odd: asymmetric base
            let gens = m_gon_generators(n, m, &mut rng);
            let c = PolyhedralCone::from_generators(&gens, n)?;
            Ok(ConeRep::polyhedral(id, provenance, c))
        }
        GeneratorKind::PerturbedEllipsoidal => {
            let base = random_ellipsoidal(n, &mut rng)?;
            if delta == 0.0 {
                // zero perturbation returns the exact cone so that the
                // base section certifies as an ellipsoid
                return Ok(ConeRep::ellipsoidal(id, provenance, base));
            }
            let gens = bumped_base_vertices(&base, delta, &mut rng);
            let c = PolyhedralCone::from_generators(&gens, n)?;
            Ok(ConeRep::polyhedral(id, provenance, c))
        }
    }
}

fn random_ellipsoidal(n: usize, rng: &mut impl Rng) -> Result<EllipsoidalCone, ConeError> {
    let u = unit_vector(rng, n);
    let basis = complement_basis(&u);
    // center = u + tangential offset keeps u.center = 1 with unit u
    let mut center = u.clone();
    for b in &basis {
        center = vec::axpy(&center, 0.3 * normal(rng), b);
    }
    let d = n - 1;
    let mut a = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            a[(i, j)] = normal(rng);
        }
    }
    let mut form = a.transpose().matmul(&a);
    for i in 0..d {
        form[(i, i)] += 0.1;
    }
    EllipsoidalCone::new(u, center, basis, form.symmetrized())
}

/// `n` unit generators, pairwise at least 15 degrees apart, all in a
/// common halfspace (hence pointed), spanning `R^n`.
fn random_simplicial_generators(n: usize, rng: &mut impl Rng) -> Vec<Vector> {
    let max_dot = (15.0_f64 / 180.0 * core::f64::consts::PI).cos();
    loop {
        let axis = unit_vector(rng, n);
        let mut gens: Vec<Vector> = Vec::with_capacity(n);
        let mut attempts = 0;
        while gens.len() < n && attempts < 400 {
            attempts += 1;
            // bias toward the axis so all generators share a halfspace
            let g = vec::normalized(&vec::axpy(&axis, 0.8, &unit_vector(rng, n))).unwrap();
            if vec::dot(&g, &axis) < 0.55 {
                continue;
            }
            if gens.iter().all(|h| vec::dot(h, &g) < max_dot) {
                gens.push(g);
            }
        }
        if gens.len() == n && crate::mat::svd(&Mat::from_rows(&gens)).sigma[n - 1] > 1e-3 {
            return gens;
        }
    }
}

/// Cone-over-m-gon generators: a regular m-gon in a 2-plane at height 1
/// along a random axis, padded with cross-polytope vertices in the
/// remaining base directions when n > 3.
fn m_gon_generators(n: usize, m: usize, rng: &mut impl Rng) -> Vec<Vector> {
    let axis = unit_vector(rng, n);
    let comp = complement_basis(&axis);
    let mut gens = Vec::new();
    for k in 0..m {
        let theta = core::f64::consts::TAU * (k as f64) / (m as f64);
        let mut v = axis.clone();
        v = vec::axpy(&v, theta.cos(), &comp[0]);
        v = vec::axpy(&v, theta.sin(), &comp[1]);
        gens.push(v);
    }
    for b in comp.iter().skip(2) {
        gens.push(vec::axpy(&axis, 0.7, b));
        gens.push(vec::axpy(&axis, -0.7, b));
    }
    gens
}

/// Base-ellipsoid boundary vertices with a radial bump of amplitude
/// `delta * cos(3 theta)` in a random 2-plane of the base.
fn bumped_base_vertices(cone: &EllipsoidalCone, delta: f64, rng: &mut impl Rng) -> Vec<Vector> {
    let d = cone.dim - 1;
    // random orthonormal 2-plane of base coordinates carrying the bump
    let plane = loop {
        let p = LinearSubspace::from_spanning(
            &[normal_vector(rng, d), normal_vector(rng, d)],
            d,
            1e-9,
        );
        if p.dim() == 2.min(d) {
            break p;
        }
    };
    let mut omegas: Vec<Vector> = Vec::new();
    for k in 0..12 {
        let theta = core::f64::consts::TAU * (k as f64) / 12.0;
        omegas.push(plane.from_coords(&[theta.cos(), theta.sin()]));
    }
    for b in plane.annihilator().basis() {
        omegas.push(b.clone());
        omegas.push(vec::neg(b));
    }
    let mut out = Vec::with_capacity(omegas.len());
    for omega in &omegas {
        let omega = vec::normalized(omega).unwrap();
        let p = plane.coords(&omega);
        let theta = p[1].atan2(p[0]);
        let r = vec::norm(&plane.project(&omega));
        let bump = 1.0 + delta * (3.0 * theta).cos() * r;
        let edge = cone.base_boundary_point(&omega);
        let radial = vec::sub(&edge, &cone.center);
        out.push(vec::axpy(&cone.center, bump, &radial));
    }
    out
}

/// The cone over the square `{(+-1, +-1, 1)}` — centrally symmetric
/// base, yet not ellipsoidal.
pub fn cone_over_square() -> ConeRep {
    let gens = alloc::vec![
        alloc::vec![1.0, 1.0, 1.0],
        alloc::vec![-1.0, 1.0, 1.0],
        alloc::vec![-1.0, -1.0, 1.0],
        alloc::vec![1.0, -1.0, 1.0],
    ];
    ConeRep::polyhedral(
        String::from("cone-over-square"),
        String::from("cone_over_square()"),
        PolyhedralCone::from_generators(&gens, 3).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{ice_cream_cone, orthant};
    use crate::properties::{certify_ellipsoid, Verdict};
    use crate::sections::symmetry_about;
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

    fn segment_section() -> ConvexBody {
        // {z=1, x=0, |y| <= 1} as a section body of the ice-cream cone
        let a = AffineSubspace::new(
            vec![0.0, 0.0, 1.0],
            LinearSubspace::from_spanning(&[vec![0.0, 1.0, 0.0]], 3, 1e-9),
        );
        match section_by_affine(&icecream(), &a) {
            SectionResult::Body(b) => b,
            _ => panic!("expected bounded section"),
        }
    }

    #[test]
    fn extend_ice_cream_segment_to_disk() {
        let ext = extend_codim2_section(&icecream(), &segment_section()).unwrap();
        // the extension is the unit disk at z = 1 with center on aff(S)
        assert!(vec::dist(&ext.center, &vec![0.0, 0.0, 1.0]) < 1e-9);
        let ConvexBody::Ellipsoid(e) = &ext.extended_section else {
            panic!("expected ellipsoid");
        };
        assert!(vec::dist(&e.center, &vec![0.0, 0.0, 1.0]) < 1e-9);
        assert!((ext.extended_section.max_norm() - 2.0_f64.sqrt()).abs() < 1e-9);
        // input is contained in the extension
        assert!(ext.extended_section.contains(&[0.0, 0.9, 1.0], 1e-9));
    }

    #[test]
    fn extend_slant_chord_recovers_slant_ellipse() {
        // chord of the slant plane {0.5x + z = 1}: intersect with {x = const}
        let phi = [0.5, 0.0, 1.0];
        let slant = crate::sections::hyperplane_of(&phi);
        // a line inside the slant plane through an interior cone point
        let inner = vec![-0.5, 0.0, 1.25]; // 0.5*(-0.5) + 1.25 = 1
        let dir = vec![0.0, 1.0, 0.0];
        let a = AffineSubspace::new(
            inner.clone(),
            LinearSubspace::from_spanning(&[dir], 3, 1e-9),
        );
        assert!(slant.contains_point(&inner, 1e-12));
        let s = match section_by_affine(&icecream(), &a) {
            SectionResult::Body(b) => b,
            _ => panic!("expected bounded chord"),
        };
        let ext = extend_codim2_section(&icecream(), &s).unwrap();
        // the extension is centered at the chord's own midpoint: the
        // chosen quotient chord has midpoint at the image of aff(S), so
        // the ellipse center lifts back to `inner`
        let got = match &ext.extended_section {
            ConvexBody::Ellipsoid(e) => e.center.clone(),
            _ => panic!("expected ellipse"),
        };
        assert!(vec::dist(&got, &inner) < 1e-9, "center {:?}", got);
        // center lies back on aff(S), and the input chord is contained:
        // S is the segment x = -0.5, z = 1.25, |y| <= sqrt(z^2 - x^2)
        assert!(s.ambient().distance_to(&ext.center) < 1e-9);
        let half = (1.25_f64 * 1.25 - 0.25).sqrt();
        for sgn in [1.0, -1.0] {
            let endpoint = [-0.5, sgn * half, 1.25];
            assert!(ext.extended_section.contains(&endpoint, 1e-7));
        }
    }

    #[test]
    fn extend_orthant_segment_center_off_hull() {
        // non-CSS cone: the operation succeeds but the center misses aff(S)
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let a = affine_span(&[vec![0.5, 0.45, 0.02], vec![0.02, 0.45, 0.5]], 1e-9);
        let s = match section_by_affine(&c, &a) {
            SectionResult::Body(b) => b,
            _ => panic!("expected bounded section"),
        };
        let ext = extend_codim2_section(&c, &s).unwrap();
        let diam = ext.extended_section.diameter();
        let off = s.ambient().distance_to(&ext.center);
        assert!(
            off > 0.05 * diam,
            "center unexpectedly close to aff(S): {} vs diam {}",
            off,
            diam
        );
    }

    #[test]
    fn extend_rejects_wrong_codimension() {
        let c = icecream();
        let disk = match crate::sections::section_by_functional(&c, &[0.0, 0.0, 1.0], 1e-9) {
            SectionResult::Body(b) => b,
            _ => panic!(),
        };
        assert!(matches!(
            extend_codim2_section(&c, &disk),
            Err(ConeError::NotCodim2)
        ));
    }

    #[test]
    fn fbi_body_on_ice_cream_is_unit_disk() {
        let b = fbi_body(&icecream(), &[0.0, 0.0, 1.0], 60, 9).unwrap();
        let ConvexBody::Ellipsoid(e) = &b else {
            panic!("expected fitted ellipsoid");
        };
        assert!(vec::dist(&e.center, &vec![0.0, 0.0, 1.0]) < 1e-7);
        let v = symmetry_about(&b, &[0.0, 0.0, 1.0], 1e-7);
        assert!(v.symmetric);
    }

    #[test]
    fn fbi_body_slant_center() {
        let x = vec![0.2, 0.0, 1.2];
        let b = fbi_body(&icecream(), &x, 80, 13).unwrap();
        let v = symmetry_about(&b, &x, 1e-6);
        assert!(v.symmetric, "defect {}", v.defect);
    }

    #[test]
    fn fbi_body_on_orthant_is_three_dimensional() {
        let c = rep(ConeGeometry::Polyhedral(orthant(3)));
        let b = fbi_body(&c, &[0.5, 0.5, 0.5], 80, 17).unwrap();
        let ConvexBody::Polytope(_) = &b else {
            panic!("expected polytope (no quadric fit)");
        };
        assert_eq!(b.ambient().dim(), 3);
    }

    #[test]
    fn generated_cones_are_valid() {
        for n in 2..=6 {
            let e = generate_cone(GeneratorKind::Ellipsoidal, n, 7, 0.0).unwrap();
            assert!(e.is_pointed());
            let s = generate_cone(GeneratorKind::Simplicial, n, 7, 0.0).unwrap();
            let ConeGeometry::Polyhedral(p) = &s.geometry else {
                panic!()
            };
            assert_eq!(p.generators.len(), n);
            assert!(s.is_pointed());
        }
        for n in 3..=5 {
            let g = generate_cone(GeneratorKind::PolyhedralMGon, n, 11, 0.0).unwrap();
            assert!(g.is_pointed());
        }
    }

    #[test]
    fn perturbed_generator_delta_zero_certifies() {
        let c = generate_cone(GeneratorKind::PerturbedEllipsoidal, 4, 5, 0.0).unwrap();
        let phi = c.interior_dual_point();
        let body = match crate::sections::section_by_functional(&c, &phi, 1e-9) {
            SectionResult::Body(b) => b,
            _ => panic!(),
        };
        let r = certify_ellipsoid(&body, 50, crate::tol::FIT, 3);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn perturbed_generator_delta_fails_certification() {
        let c = generate_cone(GeneratorKind::PerturbedEllipsoidal, 4, 5, 1e-2).unwrap();
        let phi = c.interior_dual_point();
        let body = match crate::sections::section_by_functional(&c, &phi, 1e-9) {
            SectionResult::Body(b) => b,
            _ => panic!(),
        };
        let r = certify_ellipsoid(&body, 50, crate::tol::FIT, 3);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            GeneratorKind::Ellipsoidal,
            GeneratorKind::Simplicial,
            GeneratorKind::PolyhedralMGon,
            GeneratorKind::PerturbedEllipsoidal,
        ] {
            let a = generate_cone(kind, 4, 99, 1e-3).unwrap();
            let b = generate_cone(kind, 4, 99, 1e-3).unwrap();
            match (&a.geometry, &b.geometry) {
                (ConeGeometry::Polyhedral(x), ConeGeometry::Polyhedral(y)) => {
                    assert_eq!(x.generators, y.generators);
                    assert_eq!(x.halfspaces, y.halfspaces);
                }
                (ConeGeometry::Ellipsoidal(x), ConeGeometry::Ellipsoidal(y)) => {
                    assert_eq!(x.u, y.u);
                    assert_eq!(x.center, y.center);
                }
                _ => panic!("kind mismatch between identical calls"),
            }
        }
    }

    #[test]
    fn bad_params_rejected() {
        assert!(matches!(
            generate_cone(GeneratorKind::Ellipsoidal, 1, 0, 0.0),
            Err(ConeError::BadParams)
        ));
        assert!(matches!(
            generate_cone(GeneratorKind::Ellipsoidal, 3, 0, -1.0),
            Err(ConeError::BadParams)
        ));
    }

    #[test]
    fn cone_over_square_shape() {
        let c = cone_over_square();
        let ConeGeometry::Polyhedral(p) = &c.geometry else {
            panic!()
        };
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.halfspaces.len(), 4);
        assert!(c.contains(&[0.0, 0.0, 1.0], 1e-9).unwrap());
        assert!(!c.contains(&[1.5, 0.0, 1.0], 1e-9).unwrap());
    }
}
