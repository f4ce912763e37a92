//! The equivalence suite: generate cone populations, run the
//! CSS / FBI / ellipsoid checkers on each, and aggregate the verdicts
//! into a deterministic machine-readable result.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use conelab_core::constructions::{generate_cone, GeneratorKind};
use conelab_core::properties::{certify_ellipsoid, check_css, check_fbi, PropertyReport, Verdict};
use conelab_core::sections::{section_by_functional, SectionResult};
use conelab_core::ConeRep;

use crate::formats::ReportJson;

const CSS_SECTIONS: usize = 32;
const FBI_APEXES: usize = 6;
const FBI_DIRS_PER_DIM: usize = 40;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub dims: RangeInclusive<usize>,
    pub trials_per_dim: usize,
    pub seed: u64,
    /// Perturbation magnitude for the `perturbed_ellipsoidal` kind.
    pub delta: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub kinds: Vec<GeneratorKind>,
    pub output_path: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn default_tolerances() -> BTreeMap<String, f64> {
        BTreeMap::from([
            ("tol_sym".to_string(), conelab_core::tol::SYM),
            ("tol_rank_fbi".to_string(), conelab_core::tol::RANK_FBI),
            ("tol_fit".to_string(), conelab_core::tol::FIT),
            ("tol_mem".to_string(), conelab_core::tol::MEM),
        ])
    }

    fn tol(&self, key: &str, default: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(default)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.kinds.is_empty() {
            return Err(ConfigError("no generator kinds selected".to_string()));
        }
        if *self.dims.start() < 2 || *self.dims.end() > 16 || self.dims.is_empty() {
            return Err(ConfigError(format!(
                "dims {}..={} outside [2, 16]",
                self.dims.start(),
                self.dims.end()
            )));
        }
        if self.trials_per_dim == 0 {
            return Err(ConfigError("trials_per_dim must be >= 1".to_string()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid suite config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// All three verdicts for one generated cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeOutcome {
    pub cone_id: String,
    pub kind: String,
    pub dim: usize,
    pub css: ReportJson,
    pub fbi: ReportJson,
    pub ellipsoidal: ReportJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AgreementFlags {
    /// CSS PASS <=> ELLIPSOIDAL PASS across all conclusive cones of
    /// dim >= 3.
    pub css_ellipsoidal: bool,
    /// FBI PASS <=> ELLIPSOIDAL PASS, same population.
    pub fbi_ellipsoidal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub seed: u64,
    pub delta: f64,
    pub outcomes: Vec<ConeOutcome>,
    /// kind -> property -> verdict -> count.
    pub confusion: BTreeMap<String, BTreeMap<String, BTreeMap<String, u64>>>,
    pub agreement: AgreementFlags,
    /// Wall-clock total; excluded from the serialized result so that
    /// identical configs produce byte-identical JSON.
    #[serde(skip)]
    pub wall_ms: u64,
}

impl SuiteResult {
    pub fn all_agree(&self) -> bool {
        self.agreement.css_ellipsoidal && self.agreement.fbi_ellipsoidal
    }
}

fn css_codims(n: usize) -> RangeInclusive<usize> {
    1..=(n - 2).max(1)
}

fn quarantine(cone: &ConeRep, property: conelab_core::properties::Property, seed: u64, err: &conelab_core::ConeError) -> PropertyReport {
    PropertyReport {
        cone_id: cone.id.clone(),
        property,
        verdict: Verdict::Inconclusive,
        samples: 0,
        seed,
        tolerances: BTreeMap::new(),
        witnesses: vec![conelab_core::properties::Witness {
            label: format!("error: {err:?}"),
            data: Vec::new(),
            value: f64::NAN,
        }],
        runtime_ms: 0,
    }
}

fn evaluate_cone(config: &SuiteConfig, kind: GeneratorKind, n: usize, seed: u64) -> Result<ConeOutcome, conelab_core::ConeError> {
    let delta = match kind {
        GeneratorKind::PerturbedEllipsoidal => config.delta,
        _ => 0.0,
    };
    let cone = generate_cone(kind, n, seed, delta)?;
    use conelab_core::properties::Property;

    let css = check_css(
        &cone,
        CSS_SECTIONS,
        config.tol("tol_sym", conelab_core::tol::SYM),
        seed,
        css_codims(n),
    )
    .unwrap_or_else(|e| quarantine(&cone, Property::Css, seed, &e));

    let fbi = check_fbi(
        &cone,
        FBI_APEXES,
        FBI_DIRS_PER_DIM * n,
        config.tol("tol_rank_fbi", conelab_core::tol::RANK_FBI),
        seed,
    )
    .map(|(r, _)| r)
    .unwrap_or_else(|e| quarantine(&cone, Property::Fbi, seed, &e));

    // base-ellipsoid certification on the canonical bounded section
    let ellipsoidal = match section_by_functional(&cone, &cone.interior_dual_point(), 1e-9) {
        SectionResult::Body(body) => {
            let mut r = certify_ellipsoid(
                &body,
                CSS_SECTIONS,
                config.tol("tol_fit", conelab_core::tol::FIT),
                seed,
            );
            r.cone_id = cone.id.clone();
            r
        }
        _ => quarantine(&cone, Property::Ellipsoidal, seed, &conelab_core::ConeError::UnboundedSection),
    };

    Ok(ConeOutcome {
        cone_id: cone.id.clone(),
        kind: kind.as_str().to_string(),
        dim: n,
        css: ReportJson::from_report(&css),
        fbi: ReportJson::from_report(&fbi),
        ellipsoidal: ReportJson::from_report(&ellipsoidal),
    })
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteResult, ConfigError> {
    config.validate()?;
    let start = Instant::now();

    let mut jobs: Vec<(GeneratorKind, usize, u64)> = Vec::new();
    for n in config.dims.clone() {
        for &kind in &config.kinds {
            for trial in 0..config.trials_per_dim {
                jobs.push((kind, n, config.seed.wrapping_add(trial as u64)));
            }
        }
    }

    // cone-level worker pool; outcomes merged and canonically ordered
    let queue = Mutex::new(jobs.into_iter());
    let outcomes = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(8);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().next();
                let Some((kind, n, seed)) = job else { break };
                match evaluate_cone(config, kind, n, seed) {
                    Ok(outcome) => outcomes.lock().unwrap().push(outcome),
                    Err(e) => {
                        // generation failure: quarantine a placeholder
                        let id = format!("{}-n{}-s{}", kind.as_str(), n, seed);
                        let mk = |prop| {
                            let mut r = ReportJson {
                                cone_id: id.clone(),
                                property: String::new(),
                                verdict: "INCONCLUSIVE".to_string(),
                                samples: 0,
                                seed,
                                tolerances: BTreeMap::new(),
                                witnesses: Vec::new(),
                                runtime_ms: 0,
                            };
                            r.property = prop;
                            r.witnesses.push(crate::formats::WitnessJson {
                                label: format!("generation error: {e:?}"),
                                data: Vec::new(),
                                value: f64::NAN,
                            });
                            r
                        };
                        let (css, fbi, ellipsoidal) = (
                            mk("CSS".to_string()),
                            mk("FBI".to_string()),
                            mk("ELLIPSOIDAL".to_string()),
                        );
                        outcomes.lock().unwrap().push(ConeOutcome {
                            cone_id: id,
                            kind: kind.as_str().to_string(),
                            dim: n,
                            css,
                            fbi,
                            ellipsoidal,
                        });
                    }
                }
            });
        }
    });
    let mut outcomes = outcomes.into_inner().unwrap();
    outcomes.sort_by(|a, b| a.cone_id.cmp(&b.cone_id));

    let mut confusion: BTreeMap<String, BTreeMap<String, BTreeMap<String, u64>>> = BTreeMap::new();
    let mut agreement = AgreementFlags {
        css_ellipsoidal: true,
        fbi_ellipsoidal: true,
    };
    for o in &outcomes {
        for r in [&o.css, &o.fbi, &o.ellipsoidal] {
            *confusion
                .entry(o.kind.clone())
                .or_default()
                .entry(r.property.clone())
                .or_default()
                .entry(r.verdict.clone())
                .or_default() += 1;
        }
        // the equivalence claims concern dims >= 3; inconclusive cones
        // are quarantined, visible in the table but not in the flags
        let conclusive = [&o.css, &o.fbi, &o.ellipsoidal]
            .iter()
            .all(|r| r.verdict != "INCONCLUSIVE");
        if o.dim >= 3 && conclusive {
            let ell = o.ellipsoidal.verdict == "PASS";
            agreement.css_ellipsoidal &= (o.css.verdict == "PASS") == ell;
            agreement.fbi_ellipsoidal &= (o.fbi.verdict == "PASS") == ell;
        }
    }

    Ok(SuiteResult {
        seed: config.seed,
        delta: config.delta,
        outcomes,
        confusion,
        agreement,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Write the result as deterministic JSON and print a human-readable
/// summary table.
pub fn emit_report(result: &SuiteResult, path: Option<&std::path::Path>) -> anyhow::Result<()> {
    if let Some(path) = path {
        crate::formats::write_json(path, result)?;
    }
    println!("suite: {} cones, seed {}, delta {}", result.outcomes.len(), result.seed, result.delta);
    println!("{:<24} {:<12} {:>5} {:>5} {:>6}", "kind", "property", "PASS", "FAIL", "INCONC");
    for (kind, props) in &result.confusion {
        for (prop, verdicts) in props {
            let count = |v: &str| verdicts.get(v).copied().unwrap_or(0);
            println!(
                "{:<24} {:<12} {:>5} {:>5} {:>6}",
                kind,
                prop,
                count("PASS"),
                count("FAIL"),
                count("INCONCLUSIVE")
            );
        }
    }
    for o in &result.outcomes {
        for r in [&o.css, &o.fbi, &o.ellipsoidal] {
            if r.verdict == "FAIL" {
                if let Some(w) = r.witnesses.first() {
                    println!(
                        "FAIL {} {} {}: {} = {:.3e} at {:?}",
                        o.cone_id, r.property, w.label, w.label, w.value, w.data
                    );
                }
            }
        }
    }
    println!(
        "agreement: CSS<=>ELLIPSOIDAL {}, FBI<=>ELLIPSOIDAL {} ({} ms)",
        result.agreement.css_ellipsoidal, result.agreement.fbi_ellipsoidal, result.wall_ms
    );
    Ok(())
}
