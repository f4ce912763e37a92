//! Acceptance suite: the nine end-to-end criteria the toolkit must
//! satisfy, each printed as a single PASS/FAIL line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use conelab_core::constructions::{
    cone_over_square, extend_codim2_section, generate_cone, GeneratorKind,
};
use conelab_core::duality::{boundedness_certificate, dual, strictly_positive};
use conelab_core::linalg::{affine_span, perp_affine, AffineSubspace, LinearSubspace};
use conelab_core::properties::{
    certify_ellipsoid, check_css, check_fbi, flatness_of, sample_interior_point, Verdict,
};
use conelab_core::rng::{normal_vector, substream, unit_vector};
use conelab_core::sections::{
    check_symmetry_duality, section_by_affine, section_by_functional, ConvexBody, SectionResult,
};
use conelab_core::{vec, ConeRep};

const DIMS: std::ops::RangeInclusive<usize> = 3..=6;
const TRIALS: u64 = 20;

fn css_codims(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=(n - 2).max(1)
}

fn population(kind: GeneratorKind) -> Vec<ConeRep> {
    let mut cones = Vec::new();
    for n in DIMS {
        for seed in 0..TRIALS {
            cones.push(generate_cone(kind, n, seed, 0.0).unwrap());
        }
    }
    cones
}

/// A strictly positive functional near the canonical dual axis.
fn positive_functional(cone: &ConeRep, seed: u64) -> Option<Vec<f64>> {
    let mut rng = substream(seed, 0xacc);
    let base = vec::normalized(&cone.interior_dual_point())?;
    for _ in 0..32 {
        let phi = vec::axpy(&base, 0.15, &unit_vector(&mut rng, cone.dim()));
        if strictly_positive(cone, &phi) {
            return Some(phi);
        }
    }
    None
}

fn bounded_section(cone: &ConeRep, phi: &[f64]) -> Option<ConvexBody> {
    match section_by_functional(cone, phi, 1e-9) {
        SectionResult::Body(b) => Some(b),
        _ => None,
    }
}

/// Criterion 1: CSS passes every ellipsoidal cone (200 sections each,
/// tol_sym 1e-8) with every extracted section certifying as an
/// ellipsoid, and fails every simplicial cone with a witness.
fn criterion_css_populations() -> Result<String, String> {
    let start = Instant::now();
    for cone in population(GeneratorKind::Ellipsoidal) {
        let report = check_css(&cone, 200, 1e-8, 1, css_codims(cone.dim()))
            .map_err(|e| format!("{}: {e:?}", cone.id))?;
        if report.verdict != Verdict::Pass {
            return Err(format!("CSS {:?} on {}", report.verdict, cone.id));
        }
        for k in 0..5 {
            let phi = positive_functional(&cone, k).ok_or("no positive functional")?;
            let body = bounded_section(&cone, &phi).ok_or("unbounded section")?;
            let cert = certify_ellipsoid(&body, 24, 1e-6, k);
            if cert.verdict != Verdict::Pass {
                return Err(format!("certify {:?} on a section of {}", cert.verdict, cone.id));
            }
        }
    }
    for cone in population(GeneratorKind::Simplicial) {
        let report = check_css(&cone, 200, 1e-8, 1, css_codims(cone.dim()))
            .map_err(|e| format!("{}: {e:?}", cone.id))?;
        if report.verdict != Verdict::Fail || report.witnesses.is_empty() {
            return Err(format!("expected CSS FAIL with witness on {}", cone.id));
        }
    }
    let ms = start.elapsed().as_millis();
    if ms >= 60_000 {
        return Err(format!("took {ms} ms, budget 60 s"));
    }
    Ok(format!("{ms} ms"))
}

/// Criterion 2: FBI passes ellipsoidal cones with codim-1 flat fits and
/// fails simplicial cones and the cone over the square; the orthant's
/// 6-point witness family spans all of R^3.
fn criterion_fbi_populations() -> Result<String, String> {
    let start = Instant::now();
    for cone in population(GeneratorKind::Ellipsoidal) {
        let (report, verdicts) = check_fbi(&cone, 6, 40 * cone.dim(), 1e-7, 1)
            .map_err(|e| format!("{}: {e:?}", cone.id))?;
        if report.verdict != Verdict::Pass {
            return Err(format!("FBI {:?} on {}", report.verdict, cone.id));
        }
        for v in &verdicts {
            let s = &v.singular_values;
            let ratio = s[s.len() - 1] / s[0];
            if v.affine_codim != 1 || !(ratio < 1e-7) {
                return Err(format!(
                    "fit codim {} ratio {ratio:e} on {}",
                    v.affine_codim, cone.id
                ));
            }
        }
    }
    for cone in population(GeneratorKind::Simplicial) {
        let (report, _) = check_fbi(&cone, 6, 40 * cone.dim(), 1e-7, 1)
            .map_err(|e| format!("{}: {e:?}", cone.id))?;
        if report.verdict != Verdict::Fail || report.witnesses.is_empty() {
            return Err(format!("expected FBI FAIL with witness on {}", cone.id));
        }
    }
    let (report, _) =
        check_fbi(&cone_over_square(), 8, 120, 1e-7, 1).map_err(|e| format!("{e:?}"))?;
    if report.verdict != Verdict::Fail {
        return Err("expected FBI FAIL on cone over square".to_string());
    }
    // orthant witness family {min x_i = 0, max x_i = 1} is non-planar
    let family: Vec<Vec<f64>> = vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
        vec![1.0, 0.0, 1.0],
        vec![0.0, 1.0, 1.0],
    ];
    let flat = flatness_of(&family, 1e-7);
    if flat.planar || flat.affine_codim != 0 {
        return Err("orthant 6-point family should span R^3".to_string());
    }
    let ms = start.elapsed().as_millis();
    if ms >= 60_000 {
        return Err(format!("took {ms} ms, budget 60 s"));
    }
    Ok(format!("{ms} ms"))
}

/// Criterion 3: exact product law r* . eps* = 1 over 100 random
/// (cone, phi) pairs with bounded sections, defect <= 1e-7.
fn criterion_product_law() -> Result<String, String> {
    let start = Instant::now();
    let kinds = [
        GeneratorKind::Ellipsoidal,
        GeneratorKind::Simplicial,
        GeneratorKind::PolyhedralMGon,
    ];
    let mut checked = 0;
    let mut worst = 0.0_f64;
    'outer: for trial in 0.. {
        for &kind in &kinds {
            let n = 3 + (trial as usize % 4);
            let cone = generate_cone(kind, n, trial, 0.0).map_err(|e| format!("{e:?}"))?;
            let Some(phi) = positive_functional(&cone, trial) else {
                continue;
            };
            let cert = boundedness_certificate(&cone, &phi);
            if !cert.r_star.is_finite() {
                return Err(format!("unbounded section for strictly positive phi on {}", cone.id));
            }
            worst = worst.max(cert.product_defect);
            if cert.product_defect > 1e-7 {
                return Err(format!("defect {:e} on {}", cert.product_defect, cone.id));
            }
            checked += 1;
            if checked >= 100 {
                break 'outer;
            }
        }
    }
    let ms = start.elapsed().as_millis();
    if ms >= 5_000 {
        return Err(format!("took {ms} ms, budget 5 s"));
    }
    Ok(format!("worst defect {worst:.2e}, {ms} ms"))
}

/// Criterion 4: symmetry duality — on 50 symmetric-section instances
/// the dual section is symmetric about phi with defect <= 1e-7.
fn criterion_symmetry_duality() -> Result<String, String> {
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for trial in 0..49 {
        let n = 3 + (trial as usize % 4);
        let cone =
            generate_cone(GeneratorKind::Ellipsoidal, n, trial, 0.0).map_err(|e| format!("{e:?}"))?;
        let phi = positive_functional(&cone, trial).ok_or("no positive functional")?;
        let Some(ConvexBody::Ellipsoid(e)) = bounded_section(&cone, &phi) else {
            return Err(format!("expected ellipsoid section on {}", cone.id));
        };
        let v = check_symmetry_duality(&cone, &phi, &e.center, 1e-7)
            .map_err(|e| format!("{e:?}"))?;
        worst = worst.max(v.defect);
        if !v.symmetric {
            return Err(format!("dual defect {:e} on {}", v.defect, cone.id));
        }
        checked += 1;
    }
    // the square's axis section is symmetric without being an ellipse
    let v = check_symmetry_duality(&cone_over_square(), &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0], 1e-7)
        .map_err(|e| format!("{e:?}"))?;
    worst = worst.max(v.defect);
    if !v.symmetric {
        return Err(format!("dual defect {:e} on cone over square", v.defect));
    }
    checked += 1;
    Ok(format!("{checked} instances, worst defect {worst:.2e}"))
}

/// Criterion 5: perp round trip perp(perp(A)) = A for 100 random affine
/// subspaces per dim 3..8, subspace distance <= 1e-9.
fn criterion_perp_duality() -> Result<String, String> {
    let mut worst = 0.0_f64;
    for n in 3..=8 {
        let mut rng = substream(n as u64, 0x9e4);
        for trial in 0..100 {
            let d = trial % (n - 1);
            let a = loop {
                let base = normal_vector(&mut rng, n);
                let dirs: Vec<Vec<f64>> = (0..d).map(|_| normal_vector(&mut rng, n)).collect();
                let a =
                    AffineSubspace::new(base, LinearSubspace::from_spanning(&dirs, n, 1e-9));
                if a.dim() == d && a.distance_to(&vec::zeros(n)) > 0.1 {
                    break a;
                }
            };
            let p = perp_affine(&a, 1e-10).map_err(|e| format!("{e:?}"))?;
            let back = perp_affine(&p, 1e-10).map_err(|e| format!("{e:?}"))?;
            let dist = a.subspace_distance(&back);
            worst = worst.max(dist);
            if dist > 1e-9 {
                return Err(format!("round-trip distance {dist:e} at n={n}, d={d}"));
            }
        }
    }
    Ok(format!("worst distance {worst:.2e}"))
}

/// Criterion 6: extending 50 random codim-2 sections of ellipsoidal
/// cones re-centers on aff(S) within 1e-7 x diameter; orthant
/// counterexamples miss by >= 0.05 x diameter.
fn criterion_extension() -> Result<String, String> {
    let mut checked = 0;
    let mut trial = 0u64;
    while checked < 50 {
        trial += 1;
        let n = 3 + (trial as usize % 4);
        let cone =
            generate_cone(GeneratorKind::Ellipsoidal, n, trial, 0.0).map_err(|e| format!("{e:?}"))?;
        let mut rng = substream(trial, 0xc0d2);
        let x0 = sample_interior_point(&cone, &mut rng);
        let dirs: Vec<Vec<f64>> = (0..n - 2).map(|_| normal_vector(&mut rng, n)).collect();
        let a = AffineSubspace::new(x0, LinearSubspace::from_spanning(&dirs, n, 1e-9));
        if a.dim() != n - 2 {
            continue;
        }
        let SectionResult::Body(s) = section_by_affine(&cone, &a) else {
            continue;
        };
        let Ok(ext) = extend_codim2_section(&cone, &s) else {
            continue;
        };
        let off = s.ambient().distance_to(&ext.center);
        let diam = ext.extended_section.diameter();
        if off > 1e-7 * diam {
            return Err(format!("center off aff(S) by {off:e} (diam {diam:e}) on {}", cone.id));
        }
        checked += 1;
    }
    // orthant counterexamples: the center misses aff(S) decisively
    let counterexamples = [
        (vec![0.9, 0.05, 0.2], vec![0.05, 0.9, 0.2]),
        (vec![0.7, 0.05, 0.05], vec![0.05, 0.05, 0.7]),
        (vec![0.6, 0.3, 0.02], vec![0.02, 0.3, 0.6]),
        (vec![0.5, 0.45, 0.02], vec![0.02, 0.45, 0.5]),
    ];
    let orthant = ConeRep::polyhedral(
        "orthant3".to_string(),
        "acceptance".to_string(),
        conelab_core::cone::orthant(3),
    );
    for (p, q) in counterexamples {
        let a = affine_span(&[p, q], 1e-9);
        let SectionResult::Body(s) = section_by_affine(&orthant, &a) else {
            return Err("expected bounded orthant section".to_string());
        };
        let ext = extend_codim2_section(&orthant, &s).map_err(|e| format!("{e:?}"))?;
        let off = s.ambient().distance_to(&ext.center);
        let diam = ext.extended_section.diameter();
        if off < 0.05 * diam {
            return Err(format!("orthant center only {off:e} off aff(S), diam {diam:e}"));
        }
    }
    Ok(format!("{checked} ellipsoidal + 4 orthant instances"))
}

/// Criterion 7: dual(dual(C)) membership agrees with C on 1000 samples
/// per cone across the population, zero disagreements at tol 1e-9.
fn criterion_biduality() -> Result<String, String> {
    let mut cones = Vec::new();
    for kind in [
        GeneratorKind::Ellipsoidal,
        GeneratorKind::Simplicial,
        GeneratorKind::PolyhedralMGon,
    ] {
        for n in DIMS {
            for seed in 0..5 {
                cones.push(generate_cone(kind, n, seed, 0.0).map_err(|e| format!("{e:?}"))?);
            }
        }
    }
    let mut samples = 0u64;
    for cone in &cones {
        let bidual = dual(&dual(cone).map_err(|e| format!("{e:?}"))?)
            .map_err(|e| format!("{e:?}"))?;
        let mut rng = substream(7, 0xb1d);
        for k in 0..1000 {
            // alternate clear insiders with ambient Gaussian probes
            let x = if k % 2 == 0 {
                sample_interior_point(cone, &mut rng)
            } else {
                normal_vector(&mut rng, cone.dim())
            };
            let a = cone.contains(&x, 1e-9).map_err(|e| format!("{e:?}"))?;
            let b = bidual.contains(&x, 1e-9).map_err(|e| format!("{e:?}"))?;
            if a != b {
                return Err(format!("disagreement at {x:?} on {}", cone.id));
            }
            samples += 1;
        }
    }
    Ok(format!("{} cones x 1000 samples = {samples}", cones.len()))
}

/// Criterion 8: sensitivity — delta = 1e-2 perturbed cones FAIL
/// certify_ellipsoid and check_fbi; delta = 0 cones PASS both.
fn criterion_sensitivity() -> Result<String, String> {
    for n in 3..=4 {
        for seed in 0..5 {
            for (delta, expect) in [(0.0, Verdict::Pass), (1e-2, Verdict::Fail)] {
                let cone = generate_cone(GeneratorKind::PerturbedEllipsoidal, n, seed, delta)
                    .map_err(|e| format!("{e:?}"))?;
                let phi = positive_functional(&cone, seed).ok_or("no positive functional")?;
                let body = bounded_section(&cone, &phi).ok_or("unbounded section")?;
                let cert = certify_ellipsoid(&body, 24, 1e-6, seed);
                if cert.verdict != expect {
                    return Err(format!(
                        "certify {:?} (expected {:?}) on {}",
                        cert.verdict, expect, cone.id
                    ));
                }
                let (fbi, _) = check_fbi(&cone, 6, 40 * n, 1e-7, seed)
                    .map_err(|e| format!("{e:?}"))?;
                if fbi.verdict != expect {
                    return Err(format!(
                        "FBI {:?} (expected {:?}) on {}",
                        fbi.verdict, expect, cone.id
                    ));
                }
            }
        }
    }
    Ok("10 cones x 2 deltas x 2 checkers".to_string())
}

/// Criterion 9: two runs of `verify` with identical config produce
/// byte-identical suite JSON (and exit 0 on an agreeing population).
fn criterion_determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_conelab");
    let dir = std::env::temp_dir().join(format!("conelab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("suite-{run}.json"));
        let status = Command::new(bin)
            .args([
                "verify", "--dims", "3..4", "--trials", "4", "--seed", "42", "--delta", "1e-2",
                "-o",
            ])
            .arg(&path)
            .env_remove("CONELAB_SEED")
            .stdout(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("verify exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    if outputs[0] != outputs[1] {
        return Err("suite JSON differs between identical runs".to_string());
    }
    // CONELAB_SEED must override the configured seed
    let path = dir.join("suite-env.json");
    let status = Command::new(bin)
        .args([
            "verify", "--dims", "3..3", "--trials", "2", "--seed", "42", "--delta", "1e-2", "-o",
        ])
        .arg(&path)
        .env("CONELAB_SEED", "7")
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("verify (env seed) exited with {status}"));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let json: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if json["seed"] != serde_json::json!(7) {
        return Err(format!("CONELAB_SEED ignored: seed = {}", json["seed"]));
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} bytes, identical", outputs[0].len()))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<String, String>)> = vec![
        ("CSS separates ellipsoidal from simplicial cones", criterion_css_populations),
        ("FBI separates ellipsoidal from polyhedral cones", criterion_fbi_populations),
        ("exact product law r*.eps* = 1", criterion_product_law),
        ("symmetry duality defect <= 1e-7", criterion_symmetry_duality),
        ("perpendicular duality round trip", criterion_perp_duality),
        ("codim-2 section extension", criterion_extension),
        ("biduality membership agreement", criterion_biduality),
        ("delta-perturbation sensitivity", criterion_sensitivity),
        ("byte-identical verify output", criterion_determinism),
    ];
    let mut failures = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS — {} ({})", i + 1, name, detail),
            Err(reason) => {
                println!("criterion {}: FAIL — {} ({})", i + 1, name, reason);
                failures.insert(i + 1, reason);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
