//! `paramodular`: command-line access to theta blocks, the `ψ` construction,
//! holomorphy checks and the family search.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use paramodular_core::diophantine::FamilyId;
use serde_json::{json, Value};

use paramodular_cli::commands;
use paramodular_cli::point::PointArgs;
use paramodular_cli::report::Report;

#[derive(Parser, Debug)]
#[command(name = "paramodular", version, about = "Theta blocks and antisymmetric paramodular Borcherds products")]
struct Cli {
    /// q-precision in integer steps; each command has its own default.
    #[arg(long, global = true)]
    prec: Option<i64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write coefficient data (or the whole report) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand TB_k(T) and classify it by its order function.
    ThetaBlock {
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        /// Comma-separated positive entries; may be empty.
        #[arg(short = 'T', allow_hyphen_values = true)]
        list: String,
    },
    /// Build the weight-0 form for a point and report its product data.
    Psi {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Holomorphy verdict and divisor multiplicities for a point.
    CheckHolomorphic {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Recompute every row of the published table.
    Table1 {
        /// Skip rows whose level exceeds this.
        #[arg(long)]
        max_level: Option<i64>,
    },
    /// Prove that a family line lies in the solution set and sample it.
    FamilyCheck {
        family: FamilyId,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate points with entries in [0, bound], one per symmetry orbit.
    Search {
        #[arg(long)]
        bound: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// First Fourier-Jacobi coefficients and the involution check.
    Fj {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 3)]
        orders: usize,
    },
    /// Exponents of the product expansion in a box.
    ExportProduct {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 5)]
        n_max: i64,
        #[arg(long, default_value_t = 10)]
        r_max: i64,
        #[arg(long, default_value_t = 1)]
        m_max: i64,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::ThetaBlock { k, list } => commands::theta_block(*k, list, cli.prec),
        Command::Psi { point } => commands::psi(point, cli.prec),
        Command::CheckHolomorphic { point } => commands::check_holomorphic(point, cli.prec),
        Command::Table1 { max_level } => commands::table(*max_level),
        Command::FamilyCheck { family, c, samples, range, seed } => {
            commands::family_check(*family, c, *samples, *range, *seed)
        }
        Command::Search { bound, c } => commands::search(*bound, c),
        Command::Fj { point, orders } => commands::fj(point, *orders, cli.prec),
        Command::ExportProduct { point, n_max, r_max, m_max } => {
            commands::export_product(point, cli.prec, *n_max, *r_max, *m_max)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn emit(cli: &Cli, mut report: Report) -> Result<()> {
    let write = |path: &PathBuf, body: &str| fs::write(path, body).with_context(|| format!("writing {}", path.display()));
    match (&cli.out, report.artifact.take()) {
        (Some(path), Some((_, data))) => {
            write(path, &pretty(&data))?;
            report.line(format!("wrote {}", path.display()));
            report.set("out", path.display().to_string());
            print_report(cli, &report);
        }
        (Some(path), None) => {
            let body = if cli.json { pretty(&Value::Object(report.json.clone())) } else { report.text.clone() };
            write(path, &body)?;
        }
        (None, Some((key, data))) => {
            report.json.insert(key.to_string(), data);
            print_report(cli, &report);
        }
        (None, None) => print_report(cli, &report),
    }
    Ok(())
}

fn print_report(cli: &Cli, report: &Report) {
    if cli.json {
        print!("{}", pretty(&Value::Object(report.json.clone())));
    } else {
        print!("{}", report.text);
    }
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(core) = e.downcast_ref::<paramodular_core::Error>() {
        core.kind()
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        "Io"
    } else {
        "Usage"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|report| emit(&cli, report)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = error_kind(&e);
            if cli.json {
                print!("{}", pretty(&json!({ "error": { "kind": kind, "message": format!("{e:#}") } })));
            } else {
                eprintln!("error [{kind}]: {e:#}");
            }
            ExitCode::FAILURE
        }
    }
}
