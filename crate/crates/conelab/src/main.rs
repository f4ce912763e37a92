//! Command-line interface: generate cones, compute duals and sections,
//! run the CSS / FBI / ellipsoid checkers, and drive the full
//! equivalence suite.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use conelab_core::constructions::{generate_cone, GeneratorKind};
use conelab_core::duality::{boundedness_certificate, dual};
use conelab_core::properties::{certify_ellipsoid, check_css, check_fbi};
use conelab_core::sections::{section_by_functional, SectionResult};

mod formats;
mod suite;

use formats::{BodyJson, CertificateJson, ConeJson, ReportJson};
use suite::{emit_report, run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "conelab", about = "Convex cone sections, duality and ellipsoid checks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random cone and write it as JSON.
    Gen(GenArgs),
    /// Compute the dual cone; optionally certify a functional.
    Dual(DualArgs),
    /// Slice a cone with the hyperplane {phi . x = 1}.
    Section(SectionArgs),
    /// Run the CSS or FBI checker on a cone.
    Check(CheckArgs),
    /// Certify that a section body is an ellipsoid.
    Certify(CertifyArgs),
    /// Run the full equivalence suite over generated populations.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ellipsoidal,
    Simplicial,
    PolyhedralMGon,
    PerturbedEllipsoidal,
}

impl From<KindArg> for GeneratorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ellipsoidal => GeneratorKind::Ellipsoidal,
            KindArg::Simplicial => GeneratorKind::Simplicial,
            KindArg::PolyhedralMGon => GeneratorKind::PolyhedralMGon,
            KindArg::PerturbedEllipsoidal => GeneratorKind::PerturbedEllipsoidal,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct DualArgs {
    cone: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Also emit the boundedness certificate of this functional.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    phi: Option<Vec<f64>>,
}

#[derive(Args)]
struct SectionArgs {
    cone: PathBuf,
    #[arg(long, value_delimiter = ',', num_args = 1, required = true, allow_hyphen_values = true)]
    phi: Vec<f64>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PropertyArg {
    Css,
    Fbi,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    property: PropertyArg,
    cone: PathBuf,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Symmetry-defect tolerance (CSS).
    #[arg(long, default_value_t = conelab_core::tol::SYM)]
    tol_sym: f64,
    /// Flatness rank tolerance (FBI).
    #[arg(long, default_value_t = conelab_core::tol::RANK_FBI)]
    tol_rank: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct CertifyArgs {
    body: PathBuf,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = conelab_core::tol::FIT)]
    tol_fit: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Dimension range, e.g. 3..6 (inclusive).
    #[arg(long, default_value = "3..6")]
    dims: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-2)]
    delta: f64,
    /// Generator kinds; defaults to all four.
    #[arg(long, value_enum, value_delimiter = ',')]
    kinds: Option<Vec<KindArg>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn env_seed() -> Option<u64> {
    std::env::var("CONELAB_SEED").ok()?.parse().ok()
}

fn load_cone(path: &PathBuf) -> Result<conelab_core::ConeRep> {
    formats::read_json::<ConeJson>(path)?.into_cone()
}

fn parse_dims(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range like 3..6, got {text:?}"))?;
    let lo: usize = lo.trim().parse().context("range start")?;
    let hi: usize = hi.trim().trim_start_matches('=').parse().context("range end")?;
    if lo > hi {
        bail!("empty dimension range {text:?}");
    }
    Ok(lo..=hi)
}

fn css_codims(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=(n - 2).max(1)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => {
            let seed = env_seed().unwrap_or(args.seed);
            let cone = generate_cone(args.kind.into(), args.dim, seed, args.delta)
                .map_err(|e| anyhow!("generation failed: {e:?}"))?;
            formats::write_json(&args.output, &ConeJson::from_cone(&cone))?;
            println!("wrote {} ({})", args.output.display(), cone.id);
        }
        Command::Dual(args) => {
            let cone = load_cone(&args.cone)?;
            let d = dual(&cone).map_err(|e| anyhow!("dual failed: {e:?}"))?;
            formats::write_json(&args.output, &ConeJson::from_cone(&d))?;
            println!("wrote {} ({})", args.output.display(), d.id);
            if let Some(phi) = args.phi {
                let cert = boundedness_certificate(&cone, &phi);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&CertificateJson::from_certificate(&cert))?
                );
            }
        }
        Command::Section(args) => {
            let cone = load_cone(&args.cone)?;
            match section_by_functional(&cone, &args.phi, conelab_core::tol::MEM) {
                SectionResult::Body(body) => {
                    formats::write_json(&args.output, &BodyJson::from_body(&body))?;
                    println!(
                        "wrote {} (dim {}, max norm {:.6})",
                        args.output.display(),
                        body.body_dim(),
                        body.max_norm()
                    );
                }
                SectionResult::Unbounded => bail!("section is unbounded"),
                SectionResult::Empty => bail!("section is empty"),
            }
        }
        Command::Check(args) => {
            let cone = load_cone(&args.cone)?;
            let seed = env_seed().unwrap_or(args.seed);
            let start = Instant::now();
            let mut report = match args.property {
                PropertyArg::Css => {
                    check_css(&cone, args.samples, args.tol_sym, seed, css_codims(cone.dim()))
                }
                PropertyArg::Fbi => {
                    let apexes = args.samples.div_ceil(8).max(2);
                    check_fbi(&cone, apexes, 40 * cone.dim(), args.tol_rank, seed).map(|(r, _)| r)
                }
            }
            .map_err(|e| anyhow!("check failed: {e:?}"))?;
            report.runtime_ms = start.elapsed().as_millis() as u64;
            formats::write_json(&args.output, &ReportJson::from_report(&report))?;
            println!(
                "{} {} on {} ({} samples, {} ms)",
                report.property.as_str(),
                report.verdict.as_str(),
                report.cone_id,
                report.samples,
                report.runtime_ms
            );
        }
        Command::Certify(args) => {
            let body = formats::read_json::<BodyJson>(&args.body)?.into_body()?;
            let seed = env_seed().unwrap_or(args.seed);
            let start = Instant::now();
            let mut report = certify_ellipsoid(&body, args.samples, args.tol_fit, seed);
            report.cone_id = args
                .body
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            report.runtime_ms = start.elapsed().as_millis() as u64;
            formats::write_json(&args.output, &ReportJson::from_report(&report))?;
            println!(
                "ELLIPSOIDAL {} on {} ({} ms)",
                report.verdict.as_str(),
                report.cone_id,
                report.runtime_ms
            );
        }
        Command::Verify(args) => {
            let kinds = args
                .kinds
                .map(|ks| ks.into_iter().map(GeneratorKind::from).collect())
                .unwrap_or_else(|| {
                    vec![
                        GeneratorKind::Ellipsoidal,
                        GeneratorKind::Simplicial,
                        GeneratorKind::PolyhedralMGon,
                        GeneratorKind::PerturbedEllipsoidal,
                    ]
                });
            let config = SuiteConfig {
                dims: parse_dims(&args.dims)?,
                trials_per_dim: args.trials,
                seed: env_seed().unwrap_or(args.seed),
                delta: args.delta,
                tolerances: SuiteConfig::default_tolerances(),
                kinds,
                output_path: args.output.clone(),
            };
            let result = run_suite(&config)?;
            emit_report(&result, config.output_path.as_deref())?;
            if !result.all_agree() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
