//! Command-line front end for the exact Graev-norm toolkit.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 malformed input or
//! usage, 3 a numeric decision stayed inconclusive. The working precision
//! for enclosures is `GRAEV_PRECISION_DIGITS` decimal digits (default 50).

pub mod fixtures;
pub mod json;
pub mod report;
pub mod sampling;
pub mod suite;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use graev_core::interval::Precision;
use graev_core::norm::graev_norm;
use graev_core::rolewicz::{
    approximate_target, construct_generator, verify_certificate, ConstructParams,
    OmegaTorusModel, PowerConvention, RolewiczError,
};
use graev_core::seminorm::{seminorm_with_dual, tu_check};
use graev_core::torus::{
    kronecker_search, net_check, unit_fraction_denominator, AngleCtx, NetOutcome, TorusMetric,
};

use json::{
    parse_rat_arg, read_json, CertificateDto, CoeffsDto, ModelDto, SpaceDto,
    TorusPointDto,
};
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "graev",
    version,
    about = "Exact Graev norms, free seminorms, torus density certificates, and embedding checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graev norm of a word with its optimal matching certificate.
    Norm {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Free seminorm of a rational combination with flow and dual.
    Seminorm {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        lincomb: PathBuf,
    },
    /// Matching norm vs flow seminorm on one word; fails on inequality.
    TuCheck {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Seeded property suite on one space.
    Check {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Circle/torus tools.
    Torus {
        #[command(subcommand)]
        cmd: TorusCmd,
    },
    /// Generator construction for truncated weighted tori.
    Rolewicz {
        #[command(subcommand)]
        cmd: RolewiczCmd,
    },
    /// Lattice-quotient embedding checks.
    Embed {
        #[command(subcommand)]
        cmd: EmbedCmd,
    },
    /// Full property suite on the bundled fixtures.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Smallest power of x landing within eps of the target.
    Kronecker {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1000)]
        max_m: u64,
    },
    /// Grid-certified eps-net check of listed points.
    Net {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "1/512")]
        grid: String,
    },
}

#[derive(Subcommand)]
enum RolewiczCmd {
    /// Construct a generator certificate for the default-weight model.
    Build {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "1/512")]
        grid: String,
        #[arg(long, default_value = "powers-from-1", value_parser = parse_convention)]
        convention: PowerConvention,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate from scratch.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Find a power approximating a target.
    Approx {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        eps: String,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Full embedding suite on a model file.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 3)]
        coeff_bound: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_convention(s: &str) -> Result<PowerConvention, String> {
    PowerConvention::parse(s)
        .ok_or_else(|| format!("expected powers-from-0 or powers-from-1, got `{s}`"))
}

fn precision_from_env() -> Result<Precision> {
    match std::env::var("GRAEV_PRECISION_DIGITS") {
        Err(_) => Ok(Precision::default()),
        Ok(text) => {
            let digits: u32 = text
                .parse()
                .map_err(|_| anyhow!("GRAEV_PRECISION_DIGITS must be an integer, got `{text}`"))?;
            Ok(Precision::from_digits(digits))
        }
    }
}

pub fn run_main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit_report(report: &RunReport, csv: Option<&Path>) -> Result<u8> {
    println!("{}", report.to_json());
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv())
            .with_context(|| format!("cannot write CSV to `{}`", path.display()))?;
    }
    Ok(report.exit_code())
}

fn dispatch(cli: Cli) -> Result<u8> {
    let precision = precision_from_env()?;
    match cli.command {
        Command::Norm { space, word } => {
            let space = read_json::<SpaceDto>(&space)?.to_space()?;
            let word = read_json::<CoeffsDto>(&word)?.to_word(&space)?;
            let (value, cert) = graev_norm(&space, &word).map_err(|e| anyhow!("{e}"))?;
            let pairs: Vec<(String, String)> = cert
                .pairs
                .iter()
                .map(|&(a, b)| (space.name(a).to_string(), space.name(b).to_string()))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "value": graev_core::rat::format_rat(&value),
                    "certificate": {
                        "pairs": pairs,
                        "total_cost": graev_core::rat::format_rat(&cert.total_cost),
                    },
                }))?
            );
            Ok(0)
        }
        Command::Seminorm { space, lincomb } => {
            let space = read_json::<SpaceDto>(&space)?.to_space()?;
            let v = read_json::<CoeffsDto>(&lincomb)?.to_lincomb(&space)?;
            let (value, flow, dual) = seminorm_with_dual(&space, &v).map_err(|e| anyhow!("{e}"))?;
            let flows: Vec<serde_json::Value> = flow
                .flow
                .iter()
                .map(|(&(i, j), amount)| {
                    json!({
                        "from": space.name(i),
                        "to": space.name(j),
                        "amount": graev_core::rat::format_rat(amount),
                    })
                })
                .collect();
            let dual_map: serde_json::Map<String, serde_json::Value> = dual
                .values
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    (space.name(i).to_string(), json!(graev_core::rat::format_rat(f)))
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "value": graev_core::rat::format_rat(&value),
                    "flow": flows,
                    "dual": dual_map,
                }))?
            );
            Ok(0)
        }
        Command::TuCheck { space, word } => {
            let space = read_json::<SpaceDto>(&space)?.to_space()?;
            let word = read_json::<CoeffsDto>(&word)?.to_word(&space)?;
            let report = tu_check(&space, &word).map_err(|e| anyhow!("{e}"))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "graev": graev_core::rat::format_rat(&report.graev_value),
                    "seminorm": graev_core::rat::format_rat(&report.seminorm_value),
                    "seminorm_le_graev": report.seminorm_le_graev,
                    "equal": report.equal,
                }))?
            );
            Ok(if report.equal { 0 } else { 1 })
        }
        Command::Check { space, trials, seed } => {
            let space = read_json::<SpaceDto>(&space)?.to_space()?;
            let report = suite::run_space_check(&space, seed, trials)?;
            emit_report(&report, None)
        }
        Command::Torus { cmd } => dispatch_torus(cmd, precision),
        Command::Rolewicz { cmd } => dispatch_rolewicz(cmd, precision),
        Command::Embed { cmd } => match cmd {
            EmbedCmd::Check { model, coeff_bound, trials, seed } => {
                let model = read_json::<ModelDto>(&model)?.to_model()?;
                let report = suite::run_embed_check(&model, coeff_bound, seed, trials)?;
                emit_report(&report, None)
            }
        },
        Command::Suite { seed, trials, csv } => {
            let opts = suite::SuiteOptions { seed, trials, precision, ..Default::default() };
            let report = suite::run_suite(&opts)?;
            emit_report(&report, csv.as_deref())
        }
    }
}

fn dispatch_torus(cmd: TorusCmd, precision: Precision) -> Result<u8> {
    let ctx = AngleCtx::new(precision);
    match cmd {
        TorusCmd::Kronecker { x, target, eps, max_m } => {
            let x = read_json::<TorusPointDto>(&x)?.to_point()?;
            let target = read_json::<TorusPointDto>(&target)?.to_point()?;
            let eps = parse_rat_arg(&eps)?;
            match kronecker_search(&ctx, &x, &target, &eps, max_m) {
                Ok(found) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "found": found,
                            "max_m": max_m,
                        }))?
                    );
                    Ok(0)
                }
                Err(graev_core::torus::TorusError::Inconclusive { context }) => {
                    eprintln!("inconclusive: {context}");
                    Ok(3)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        TorusCmd::Net { points, dim, eps, grid } => {
            #[derive(serde::Deserialize)]
            struct PointsDto {
                points: Vec<TorusPointDto>,
            }
            let dto: PointsDto = read_json(&points)?;
            let points = dto
                .points
                .iter()
                .map(TorusPointDto::to_point)
                .collect::<Result<Vec<_>>>()?;
            let eps = parse_rat_arg(&eps)?;
            let grid_step = parse_rat_arg(&grid)?;
            let outcome = net_check(&ctx, &points, dim, &eps, &grid_step, &TorusMetric::Max)
                .map_err(|e| anyhow!("{e}"))?;
            let (label, witness, code) = match &outcome {
                NetOutcome::Certified => ("certified", None, 0),
                NetOutcome::Refuted { witness } => ("refuted", Some(witness.clone()), 0),
                NetOutcome::Inconclusive { .. } => ("inconclusive", None, 3),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "outcome": label,
                    "witness": witness.map(|w| w
                        .iter()
                        .map(graev_core::rat::format_rat)
                        .collect::<Vec<_>>()),
                }))?
            );
            Ok(code)
        }
    }
}

fn dispatch_rolewicz(cmd: RolewiczCmd, precision: Precision) -> Result<u8> {
    match cmd {
        RolewiczCmd::Build { depth, grid, convention, out } => {
            let grid_step = parse_rat_arg(&grid)?;
            let grid_resolution =
                unit_fraction_denominator(&grid_step).map_err(|e| anyhow!("{e}"))?;
            let model = OmegaTorusModel::with_default_weights(depth).map_err(|e| anyhow!("{e}"))?;
            let params = ConstructParams { grid_resolution, convention, precision, ..Default::default() };
            let cert = construct_generator(&model, &params).map_err(|e| anyhow!("{e}"))?;
            let dto = CertificateDto::from_parts(&model, &cert);
            let text = serde_json::to_string_pretty(&dto)?;
            match out {
                Some(path) => std::fs::write(&path, &text)
                    .with_context(|| format!("cannot write `{}`", path.display()))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        RolewiczCmd::Verify { cert } => {
            let (model, cert) = read_json::<CertificateDto>(&cert)?.to_parts()?;
            let report = verify_certificate(&model, &cert, precision).map_err(|e| anyhow!("{e}"))?;
            let conditions: Vec<serde_json::Value> = report
                .conditions
                .condition1
                .iter()
                .map(|c| json!({"condition": 1, "level": c.level, "ok": c.ok}))
                .chain(report.conditions.condition2.iter().map(|c| {
                    json!({
                        "condition": 2,
                        "level": c.level,
                        "power_count": c.power_count,
                        "ok": c.ok(),
                    })
                }))
                .chain(report.conditions.condition3.iter().map(|c| {
                    json!({
                        "condition": 3,
                        "lower_level": c.lower_level,
                        "upper_level": c.upper_level,
                        "ok": c.ok,
                    })
                }))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "all_ok": report.all_ok,
                    "independent": report.independence.is_independent(),
                    "conditions": conditions,
                }))?
            );
            Ok(if report.all_ok { 0 } else { 1 })
        }
        RolewiczCmd::Approx { cert, target, eps } => {
            let (model, cert) = read_json::<CertificateDto>(&cert)?.to_parts()?;
            let target = read_json::<TorusPointDto>(&target)?.to_point()?;
            let eps = parse_rat_arg(&eps)?;
            match approximate_target(&model, &cert, &target, &eps, precision) {
                Ok(hit) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "power": hit.power,
                            "distance_upper": graev_core::rat::decimal_upper(hit.distance.hi(), 12),
                        }))?
                    );
                    Ok(0)
                }
                Err(RolewiczError::NetContradiction { power_limit }) => {
                    eprintln!(
                        "check failed: certified net produced no hit within {power_limit} powers"
                    );
                    Ok(1)
                }
                Err(e @ RolewiczError::BelowTruncationFloor { .. }) => Err(anyhow!("{e}")),
                Err(e) => Err(anyhow!("{e}")),
            }
        }
    }
}
