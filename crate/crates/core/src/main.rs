use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use reuleaux::cli::{self, MeshFormat, ReportOptions};
use reuleaux::geom::Tolerances;
use reuleaux::oracle::McConfig;
use reuleaux::{BodyKind, Error};

/// Reuleaux and Meissner polyhedra from extremal point sets.
///
/// Parallel work honors RAYON_NUM_THREADS; results do not depend on it.
#[derive(Parser)]
#[command(name = "reuleaux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Point-set JSON file or `generator:NAME` (tetra, pentad).
    input: String,
    /// Distance tolerance for diametric pairs and point matching.
    #[arg(long = "tol-dist")]
    tol_dist: Option<f64>,
    /// Write the JSON output to this path instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check extremality; exits 0 only for an extremal set.
    Validate(Common),
    /// Structure, dual-pair angles and closed-form volumes and areas.
    Analyze(Common),
    /// Monte Carlo volume estimate for one body.
    Mc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "reuleaux")]
        body: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Boundary mesh of one body, with metrics against the closed forms.
    Mesh {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "reuleaux")]
        body: String,
        #[arg(long, default_value_t = 64)]
        refine: usize,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV table of f, g, h and the wedge identities over an N×N angle grid.
    Sweep {
        #[arg(long, default_value_t = 50)]
        grid: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the sweep summary as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Analysis, Monte Carlo and mesh metrics in one report.
    Report {
        #[command(flatten)]
        common: Common,
        /// Also estimate every wedge volume.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 64)]
        refine: usize,
    },
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    code: u8,
    message: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

fn tolerances(c: &Common) -> Result<Tolerances, Error> {
    let tol = match c.tol_dist {
        Some(eps) => Tolerances::default().with_dist_eps(eps),
        None => Tolerances::default(),
    };
    tol.validate()?;
    Ok(tol)
}

fn emit(json: Option<&Path>, text: &str) -> Result<(), Error> {
    match json {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate(c) => {
            let r = cli::cmd_validate(&c.input, tolerances(&c)?)?;
            emit(c.json.as_deref(), &serde_json::to_string_pretty(&r)?)?;
            Ok(if r.is_extremal { 0 } else { 2 })
        }
        Command::Analyze(c) => {
            let r = cli::cmd_analyze(&c.input, tolerances(&c)?)?;
            emit(c.json.as_deref(), &r.to_json())?;
            Ok(0)
        }
        Command::Mc {
            common,
            body,
            seed,
            samples,
        } => {
            let kind = BodyKind::parse(&body)?;
            let r = cli::cmd_mc(
                &common.input,
                tolerances(&common)?,
                kind,
                McConfig::new(seed, samples),
            )?;
            emit(common.json.as_deref(), &r.to_json())?;
            Ok(0)
        }
        Command::Mesh {
            common,
            body,
            refine,
            format,
            out,
        } => {
            let kind = BodyKind::parse(&body)?;
            let format = format.as_deref().map(MeshFormat::parse).transpose()?;
            let export = match (format, out.as_deref()) {
                (Some(f), Some(p)) => Some((f, p)),
                (None, Some(p)) => {
                    let f = match p.extension().and_then(|e| e.to_str()) {
                        Some("ply") => MeshFormat::Ply,
                        _ => MeshFormat::Obj,
                    };
                    Some((f, p))
                }
                (Some(_), None) => {
                    return Err(Error::InvalidInput("--format requires --out".into()))
                }
                (None, None) => None,
            };
            let r = cli::cmd_mesh(&common.input, tolerances(&common)?, kind, refine, export)?;
            emit(common.json.as_deref(), &r.to_json())?;
            Ok(0)
        }
        Command::Sweep { grid, out, json } => {
            let (rows, summary) = cli::cmd_sweep(grid)?;
            let csv = cli::sweep_csv(&rows);
            match out {
                Some(p) => fs::write(p, csv)?,
                None => std::io::stdout().lock().write_all(csv.as_bytes())?,
            }
            if let Some(p) = json {
                fs::write(p, format!("{}\n", serde_json::to_string_pretty(&summary)?))?;
            }
            let failed = summary.h_le_g_violations + summary.residual_violations;
            if failed > 0 {
                return Err(Error::Domain(format!(
                    "sweep found {} h <= g and {} residual violations",
                    summary.h_le_g_violations, summary.residual_violations
                )));
            }
            Ok(0)
        }
        Command::Report {
            common,
            full,
            seed,
            samples,
            refine,
        } => {
            let opts = ReportOptions {
                full,
                seed,
                samples,
                refine,
            };
            let r = cli::cmd_report(&common.input, tolerances(&common)?, opts)?;
            emit(common.json.as_deref(), &r.to_json())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = e.exit_code();
            let obj = ErrorObject {
                error: ErrorBody {
                    kind: e.kind(),
                    code,
                    message: e.to_string(),
                },
            };
            let text = serde_json::to_string(&obj).unwrap_or_else(|_| e.to_string());
            eprintln!("{text}");
            ExitCode::from(code)
        }
    }
}
