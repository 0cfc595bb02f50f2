//! `fusionkit` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails, 2 on
//! malformed input. Errors are reported on stderr as
//! `{"error": <kind>, "message": <text>}`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fusionkit::qseries::DEFAULT_LIMIT_TOLERANCE;
use fusionkit::Error;

use commands::{Format, Outcome, RunConfig};

#[derive(Parser)]
#[command(
    name = "fusionkit",
    version,
    about = "Modular data, fusion rules and quantum dimensions"
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of series coefficients.
    #[arg(long, global = true, default_value_t = 800)]
    trunc: usize,
    /// Numeric tolerance for S-matrix checks.
    #[arg(long, global = true, env = "FUSIONKIT_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Tolerance for integer rounding and value classification.
    #[arg(long, global = true, default_value_t = 1e-6)]
    class_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a modular datum and its validation report.
    Family { spec: String },
    /// Fusion rules from the Verlinde formula.
    Fusion { spec: String },
    /// Quantum dimensions from S-matrix ratios.
    Qdim { spec: String },
    /// Global dimension.
    Global { spec: String },
    /// Spectral radii and ADE types behind each quantum dimension.
    Classify { spec: String },
    /// Limit of a character ratio by three routes.
    Charlimit {
        numerator: String,
        denominator: String,
        /// Convergence tolerance between successive estimates.
        #[arg(long, default_value_t = DEFAULT_LIMIT_TOLERANCE)]
        limit_tol: f64,
    },
    /// Subgroups, degree ledger and Galois flags of a finite group.
    Galois {
        /// `builtin:<name>` or a path to a group table file.
        source: String,
    },
    /// Replay every reference example.
    Fixtures,
    /// Coefficients of a named q-series.
    Series { name: String },
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let c = cli.config;
    let cfg = RunConfig {
        tolerance: c.tol,
        classification_tolerance: c.class_tol,
        truncation: c.trunc,
        format: c.format,
    };
    cfg.check()?;
    let outcome = match &cli.command {
        Command::Family { spec } => commands::family(&cfg, spec),
        Command::Fusion { spec } => commands::fusion(&cfg, spec),
        Command::Qdim { spec } => commands::qdim(&cfg, spec),
        Command::Global { spec } => commands::global(&cfg, spec),
        Command::Classify { spec } => commands::classify(&cfg, spec),
        Command::Charlimit {
            numerator,
            denominator,
            limit_tol,
        } => commands::charlimit(&cfg, numerator, denominator, *limit_tol),
        Command::Galois { source } => commands::galois(&cfg, source),
        Command::Fixtures => commands::fixtures(&cfg),
        Command::Series { name } => commands::series(&cfg, name),
    }?;
    output::emit(&outcome.text, c.out.as_deref())?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) if o.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            let body = serde_json::json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{body}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
