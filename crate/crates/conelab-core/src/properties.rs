//! Decision procedures for the two section-symmetry properties and for
//! ellipsoid certification.
//!
//! All checkers are sampling-based and therefore one-sided: a PASS
//! records the sample count and seed it rests on, a FAIL always carries
//! a concrete witness.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use crate::cone::{ConeGeometry, ConeRep};
use crate::duality::strictly_positive;
use crate::error::ConeError;
use crate::linalg::{affine_span, AffineSubspace, LinearSubspace};
use crate::lp::{solve_standard, LpResult};
use crate::mat::{self, Mat};
use crate::rng::{dirichlet, normal_vector, substream, unit_vector};
use crate::sections::{
    center_of_symmetry, section_by_affine, section_by_functional, ConvexBody, SectionResult,
};
use crate::vec::{self, Vector};
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Css,
    Fbi,
    Ellipsoidal,
}

impl Property {
    pub fn as_str(&self) -> &'static str {
        match self {
            Property::Css => "CSS",
            Property::Fbi => "FBI",
            Property::Ellipsoidal => "ELLIPSOIDAL",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A labeled witness vector with an associated magnitude (a defect, a
/// singular-value ratio, ...).
#[derive(Clone, Debug)]
pub struct Witness {
    pub label: String,
    pub data: Vector,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub cone_id: String,
    pub property: Property,
    pub verdict: Verdict,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
    /// Filled in by callers with access to a clock; zero in this crate.
    pub runtime_ms: u64,
}

/// Flatness analysis of one sampled boundary-intersection set.
#[derive(Clone, Debug)]
pub struct FlatnessVerdict {
    pub points: Vec<Vector>,
    pub singular_values: Vec<f64>,
    pub affine_codim: usize,
    pub planar: bool,
    /// Point farthest from the fitted hyperplane.
    pub witness: Vector,
}

/// Samples of `∂C ∩ ∂(a − C)`: for boundary directions `d` the point
/// `s(d)·d` with `s(d) = sup{s >= 0 : a - s d in C}`.
pub fn boundary_intersection(
    cone: &ConeRep,
    a: &[f64],
    n_dirs: usize,
    seed: u64,
) -> Result<Vec<Vector>, ConeError> {
    if !cone.interior_contains(a, 1e-12)? {
        return Err(ConeError::NotInterior);
    }
    let mut rng = substream(seed, 0xb0);
    let mut out = Vec::with_capacity(n_dirs);
    for _ in 0..n_dirs {
        let d = sample_boundary_direction(cone, &mut rng);
        let s = exit_parameter(cone, a, &d);
        out.push(vec::scale(&d, s));
    }
    Ok(out)
}

/// A unit direction on the boundary of the cone: facet-uniform with
/// Dirichlet weights for polytopes, angle-uniform for ellipsoidal cones.
fn sample_boundary_direction(cone: &ConeRep, rng: &mut impl Rng) -> Vector {
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => loop {
            let h = &c.halfspaces[rng.random_range(0..c.halfspaces.len())];
            let gens = c.facet_generators(h, 1e-9);
            if gens.is_empty() {
                continue;
            }
            let w = dirichlet(rng, gens.len());
            let mut d = vec::zeros(c.dim);
            for (wi, g) in w.iter().zip(&gens) {
                d = vec::axpy(&d, *wi, g);
            }
            if let Some(u) = vec::normalized(&d) {
                return u;
            }
        },
        ConeGeometry::Ellipsoidal(c) => {
            let omega = unit_vector(rng, c.dim - 1);
            vec::normalized(&c.base_boundary_point(&omega)).expect("boundary point")
        }
    }
}

/// `sup{s >= 0 : a - s d in C}` for interior `a` and boundary
/// direction `d`.
fn exit_parameter(cone: &ConeRep, a: &[f64], d: &[f64]) -> f64 {
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => c
            .halfspaces
            .iter()
            .filter_map(|h| {
                let hd = vec::dot(h, d);
                if hd > 1e-14 {
                    Some(vec::dot(h, a) / hd)
                } else {
                    None
                }
            })
            .fold(f64::INFINITY, f64::min),
        ConeGeometry::Ellipsoidal(c) => {
            // q(a - s d) = q(a) - 2 s Bil(a, d) since q(d) = 0 on the
            // boundary: the exit parameter is the linear root
            let quad = c.quadric();
            let qa = quad.bilinear(a, a);
            let bil = vec::dot(a, &quad.matvec(d));
            qa / (2.0 * bil)
        }
    }
}

/// A random point of `int C`, scale roughly that of the base section.
pub fn sample_interior_point(cone: &ConeRep, rng: &mut impl Rng) -> Vector {
    let t = 0.5 + 1.5 * rng.random::<f64>();
    match &cone.geometry {
        ConeGeometry::Polyhedral(c) => {
            let w = dirichlet(rng, c.generators.len());
            let mut p = vec::zeros(c.dim);
            for (wi, g) in w.iter().zip(&c.generators) {
                p = vec::axpy(&p, *wi, g);
            }
            vec::scale(&p, t)
        }
        ConeGeometry::Ellipsoidal(c) => {
            let omega = unit_vector(rng, c.dim - 1);
            let rho = 0.8 * rng.random::<f64>();
            let edge = c.base_boundary_point(&omega);
            let p = vec::add(
                &c.center,
                &vec::scale(&vec::sub(&edge, &c.center), rho),
            );
            vec::scale(&p, t)
        }
    }
}

/// Flat-boundary-intersection check: for sampled interior apexes `a`,
/// the set `∂C ∩ ∂(a − C)` must fit a hyperplane (affine codimension
/// exactly one under the two-band singular-value test).
pub fn check_fbi(
    cone: &ConeRep,
    n_apex_samples: usize,
    n_dirs: usize,
    tol_rank: f64,
    seed: u64,
) -> Result<(PropertyReport, Vec<FlatnessVerdict>), ConeError> {
    if !strictly_positive(cone, &cone.interior_dual_point()) {
        return Err(ConeError::NoBoundedSection);
    }
    let mut rng = substream(seed, 0xfb1);
    let mut verdicts = Vec::with_capacity(n_apex_samples);
    let mut witnesses = Vec::new();
    for k in 0..n_apex_samples {
        let a = sample_interior_point(cone, &mut rng);
        let gamma = boundary_intersection(cone, &a, n_dirs, seed.wrapping_add(k as u64 + 1))?;
        let fv = flatness_of(&gamma, tol_rank);
        if !fv.planar && witnesses.is_empty() {
            witnesses.push(Witness {
                label: "apex".to_string(),
                data: a.clone(),
                value: fv.singular_values.last().copied().unwrap_or(0.0)
                    / fv.singular_values.first().copied().unwrap_or(1.0),
            });
            witnesses.push(Witness {
                label: "off_plane_point".to_string(),
                data: fv.witness.clone(),
                value: fv.affine_codim as f64,
            });
        }
        verdicts.push(fv);
    }
    let pass = verdicts.iter().all(|v| v.planar);
    let mut tolerances = BTreeMap::new();
    tolerances.insert("tol_rank".to_string(), tol_rank);
    let report = PropertyReport {
        cone_id: cone.id.clone(),
        property: Property::Fbi,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        samples: n_apex_samples,
        seed,
        tolerances,
        witnesses,
        runtime_ms: 0,
    };
    Ok((report, verdicts))
}

/// Affine-span flatness of a point set under the two-band test:
/// planar iff the smallest relative singular value is below `tol_rank`
/// while the second smallest stays above `10 * tol_rank`.
pub fn flatness_of(points: &[Vector], tol_rank: f64) -> FlatnessVerdict {
    let n = points[0].len();
    let c = vec::centroid(points);
    let centered: Vec<Vector> = points.iter().map(|p| vec::sub(p, &c)).collect();
    let s = mat::svd(&Mat::from_rows(&centered));
    let sigma: Vec<f64> = s.sigma.iter().take(n).copied().collect();
    let smax = sigma.first().copied().unwrap_or(0.0).max(1e-300);
    let affine_codim = sigma.iter().filter(|&&x| x <= tol_rank * smax).count();
    let planar = sigma[n - 1] / smax < tol_rank && sigma[n - 2] / smax > 10.0 * tol_rank;
    // witness: farthest point from the best-fit hyperplane (normal =
    // last right singular vector)
    let normal = s.v.col(n - 1);
    let witness = points
        .iter()
        .max_by(|p, q| {
            let dp = vec::dot(&vec::sub(p, &c), &normal).abs();
            let dq = vec::dot(&vec::sub(q, &c), &normal).abs();
            dp.total_cmp(&dq)
        })
        .unwrap()
        .clone();
    FlatnessVerdict {
        points: points.to_vec(),
        singular_values: sigma,
        affine_codim,
        planar,
        witness,
    }
}

/// Centrally-symmetric-sections check: random proper sections (from
/// dual interior functionals) plus random higher-codimension affine
/// sections, each tested for a center of symmetry.
pub fn check_css(
    cone: &ConeRep,
    n_sections: usize,
    tol_sym: f64,
    seed: u64,
    codim_range: core::ops::RangeInclusive<usize>,
) -> Result<PropertyReport, ConeError> {
    let n = cone.dim();
    let dual_center = cone.interior_dual_point();
    if !strictly_positive(cone, &dual_center) {
        return Err(ConeError::NoBoundedSection);
    }
    let mut rng = substream(seed, 0xc55);
    let mut witnesses = Vec::new();
    let mut checked = 0usize;

    // proper sections from random functionals in int(C*)
    let base = vec::normalized(&dual_center).unwrap();
    let mut drawn = 0usize;
    while drawn < n_sections {
        let dir = unit_vector(&mut rng, n);
        let r = rng.random::<f64>();
        let phi = vec::axpy(&base, r, &dir);
        if !strictly_positive(cone, &phi) {
            continue; // rejection: phi must give a bounded section
        }
        drawn += 1;
        if let SectionResult::Body(body) = section_by_functional(cone, &phi, 1e-9) {
            checked += 1;
            let v = center_of_symmetry(&body, tol_sym);
            if !v.symmetric {
                witnesses.push(Witness {
                    label: "phi".to_string(),
                    data: phi,
                    value: v.defect,
                });
                break;
            }
        }
    }

    // higher-codimension affine sections (only while no failure yet)
    if witnesses.is_empty() && n >= 2 {
        for codim in codim_range {
            if codim == 0 || codim >= n {
                continue;
            }
            let per_codim = (n_sections / 4).max(8);
            let mut found = 0usize;
            let mut attempts = 0usize;
            while found < per_codim && attempts < 20 * per_codim {
                attempts += 1;
                let p = sample_interior_point(cone, &mut rng);
                let dirs = LinearSubspace::from_spanning(
                    &(0..n - codim)
                        .map(|_| normal_vector(&mut rng, n))
                        .collect::<Vec<_>>(),
                    n,
                    1e-9,
                );
                if dirs.dim() != n - codim {
                    continue;
                }
                let aff = AffineSubspace::new(p.clone(), dirs);
                if let SectionResult::Body(body) = section_by_affine(cone, &aff) {
                    found += 1;
                    checked += 1;
                    let v = center_of_symmetry(&body, tol_sym);
                    if !v.symmetric {
                        witnesses.push(Witness {
                            label: "affine_base".to_string(),
                            data: aff.point().clone(),
                            value: v.defect,
                        });
                        break;
                    }
                }
            }
            if !witnesses.is_empty() {
                break;
            }
        }
    }

    let mut tolerances = BTreeMap::new();
    tolerances.insert("tol_sym".to_string(), tol_sym);
    Ok(PropertyReport {
        cone_id: cone.id.clone(),
        property: Property::Css,
        verdict: if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        samples: checked,
        seed,
        tolerances,
        witnesses,
        runtime_ms: 0,
    })
}

/// Minkowski gauge of a body about its symmetry center, evaluated on a
/// vector of the body's span.
struct Gauge<'a> {
    body: &'a ConvexBody,
    center: Vector,
    /// Centered vertices for the polytope gauge LP.
    spokes: Vec<Vector>,
}

impl<'a> Gauge<'a> {
    fn new(body: &'a ConvexBody, center: &[f64]) -> Self {
        let spokes = match body {
            ConvexBody::Polytope(p) => {
                p.vertices.iter().map(|v| vec::sub(v, center)).collect()
            }
            ConvexBody::Ellipsoid(_) => Vec::new(),
        };
        Gauge {
            body,
            center: center.to_vec(),
            spokes,
        }
    }

    /// gamma(x) for x in the span of (body - center).
    fn eval(&self, x: &[f64]) -> f64 {
        match self.body {
            ConvexBody::Ellipsoid(e) => {
                let z: Vector = e.basis.iter().map(|b| vec::dot(b, x)).collect();
                e.form.bilinear(&z, &z).max(0.0).sqrt()
            }
            ConvexBody::Polytope(_) => {
                // gauge of conv(spokes): min sum(lambda) with
                // sum lambda_i w_i = x, lambda >= 0
                let n = x.len();
                let k = self.spokes.len();
                let mut a = Mat::zeros(n, k);
                for (j, w) in self.spokes.iter().enumerate() {
                    for i in 0..n {
                        a[(i, j)] = w[i];
                    }
                }
                let c = alloc::vec![1.0; k];
                match solve_standard(&a, x, &c) {
                    LpResult::Optimal { objective, .. } => objective,
                    _ => f64::INFINITY,
                }
            }
        }
    }

    /// Boundary point of the body in direction `x` (span coordinates).
    fn boundary_point(&self, x: &[f64]) -> Vector {
        let g = self.eval(x);
        vec::add(&self.center, &vec::scale(x, 1.0 / g))
    }
}

/// Least-squares fit of a symmetric form `Q` with `z^T Q z = 1` on
/// centered samples; returns the worst relative residual.
fn quadric_fit_residual(samples: &[Vector]) -> f64 {
    let d = samples[0].len();
    let cols = d * (d + 1) / 2;
    let mut rows = Vec::with_capacity(samples.len());
    for z in samples {
        let mut row = Vec::with_capacity(cols);
        for i in 0..d {
            for j in i..d {
                let f = if i == j { 1.0 } else { 2.0 };
                row.push(f * z[i] * z[j]);
            }
        }
        rows.push(row);
    }
    let a = Mat::from_rows(&rows);
    let b = alloc::vec![1.0; samples.len()];
    let q = mat::lstsq(&a, &b, 1e-12);
    let fitted = a.matvec(&q);
    fitted
        .iter()
        .map(|&v| (v - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Certify that a centrally symmetric bounded body is an ellipsoid:
/// the gauge must satisfy the parallelogram law, boundary samples must
/// fit a single quadratic form, and random 2-D central sections must be
/// ellipses.
pub fn certify_ellipsoid(
    body: &ConvexBody,
    n_pairs: usize,
    tol_fit: f64,
    seed: u64,
) -> PropertyReport {
    let mut tolerances = BTreeMap::new();
    tolerances.insert("tol_fit".to_string(), tol_fit);
    tolerances.insert("tol_sym".to_string(), crate::tol::SYM);
    let fail = |witnesses: Vec<Witness>, samples: usize| PropertyReport {
        cone_id: String::new(),
        property: Property::Ellipsoidal,
        verdict: Verdict::Fail,
        samples,
        seed,
        tolerances: tolerances.clone(),
        witnesses,
        runtime_ms: 0,
    };

    let sym = center_of_symmetry(body, crate::tol::SYM);
    if !sym.symmetric {
        return fail(
            alloc::vec![Witness {
                label: "asymmetric_vertex".to_string(),
                data: sym.witness,
                value: sym.defect,
            }],
            0,
        );
    }
    let span = match body {
        ConvexBody::Polytope(p) => affine_span(&p.vertices, 1e-9).directions,
        ConvexBody::Ellipsoid(e) => {
            LinearSubspace::from_orthonormal(e.basis.clone(), e.ambient.ambient())
        }
    };
    let d = span.dim();
    if d == 0 {
        // a point is a degenerate ellipsoid
        return PropertyReport {
            verdict: Verdict::Pass,
            ..fail(Vec::new(), 0)
        };
    }
    let gauge = Gauge::new(body, &sym.center);
    let mut rng = substream(seed, 0xe11);
    let mut witnesses = Vec::new();

    // (i) parallelogram law of the gauge
    for _ in 0..n_pairs {
        let x = span.from_coords(&normal_vector(&mut rng, d));
        let y = span.from_coords(&normal_vector(&mut rng, d));
        let gx = gauge.eval(&x);
        let gy = gauge.eval(&y);
        let gp = gauge.eval(&vec::add(&x, &y));
        let gm = gauge.eval(&vec::sub(&x, &y));
        let defect = (gp * gp + gm * gm - 2.0 * gx * gx - 2.0 * gy * gy).abs();
        if defect > tol_fit * (gx * gx + gy * gy) {
            witnesses.push(Witness {
                label: "parallelogram_x".to_string(),
                data: x,
                value: defect / (gx * gx + gy * gy),
            });
            witnesses.push(Witness {
                label: "parallelogram_y".to_string(),
                data: y,
                value: defect / (gx * gx + gy * gy),
            });
            return fail(witnesses, n_pairs);
        }
    }

    // (ii) one quadratic form fits all boundary samples
    let n_boundary = (5 * d * (d + 1) / 2).max(40);
    let mut samples = Vec::with_capacity(n_boundary);
    for _ in 0..n_boundary {
        let x = span.from_coords(&unit_vector(&mut rng, d));
        let bp = gauge.boundary_point(&x);
        samples.push(span.coords(&vec::sub(&bp, &sym.center)));
    }
    let residual = quadric_fit_residual(&samples);
    if residual > tol_fit {
        witnesses.push(Witness {
            label: "quadric_fit".to_string(),
            data: Vec::new(),
            value: residual,
        });
        return fail(witnesses, n_pairs);
    }

    // (iii) random 2-D central sections are ellipses
    if d >= 2 {
        for _ in 0..4.min(n_pairs) {
            let plane = LinearSubspace::from_spanning(
                &[normal_vector(&mut rng, d), normal_vector(&mut rng, d)],
                d,
                1e-9,
            );
            if plane.dim() != 2 {
                continue;
            }
            let mut pts = Vec::with_capacity(24);
            for k in 0..24 {
                let theta = core::f64::consts::TAU * (k as f64) / 24.0;
                let z = plane.from_coords(&[theta.cos(), theta.sin()]);
                let x = span.from_coords(&z);
                let bp = gauge.boundary_point(&x);
                let back = span.coords(&vec::sub(&bp, &sym.center));
                pts.push(plane.coords(&back));
            }
            let res2 = quadric_fit_residual(&pts);
            if res2 > tol_fit {
                witnesses.push(Witness {
                    label: "planar_section_fit".to_string(),
                    data: span.from_coords(&plane.from_coords(&[1.0, 0.0])),
                    value: res2,
                });
                return fail(witnesses, n_pairs);
            }
        }
    }

    PropertyReport {
        cone_id: String::new(),
        property: Property::Ellipsoidal,
        verdict: Verdict::Pass,
        samples: n_pairs,
        seed,
        tolerances,
        witnesses: Vec::new(),
        runtime_ms: 0,
    }
}
