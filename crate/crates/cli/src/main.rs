use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use xmodkit_cli::commands::{self, CommandKind, StickChoice};
use xmodkit_cli::error::CliError;
use xmodkit_cli::manifest::Manifest;
use xmodkit_cli::FORMAT_VERSION;
use xmodkit_core::Limits;

/// Crossed-module toolkit: validation, reduction, cohomology,
/// obstructions, extension classification, and coverings over a JSON
/// manifest of named finite-group objects.
#[derive(Parser)]
#[command(name = "xmodkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a named object (any section).
    Check(CommonArgs),
    /// Reduce a crossed module: π₀, π₁, stick, and the 3-cocycle k.
    Reduce(CommonArgs),
    /// H¹–H³ class counts and representatives for a crossed module or kernel.
    Cohomology(CommonArgs),
    /// The obstruction class of a kernel or pre-prolongation.
    Obstruction(CommonArgs),
    /// Classify the ζ-extensions of a kernel.
    Classify(CommonArgs),
    /// Classify the coverings of a pre-prolongation.
    Prolong(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the manifest JSON document.
    manifest: PathBuf,

    /// Named object to operate on.
    #[arg(long)]
    name: String,

    /// Coset-section choice: "canonical" or "seed:<n>".
    #[arg(long, default_value = "canonical")]
    stick: String,

    /// Size budget for searches and enumerations.
    #[arg(long)]
    budget: Option<usize>,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: &'static str,
    status: &'static str,
    payload: Value,
    timing_ms: u64,
}

fn limits_for(budget: Option<usize>) -> Limits {
    match budget {
        None => Limits::default(),
        Some(n) => {
            let mut limits = Limits::with_budget(n);
            limits.enumeration_bits = n as u32;
            limits
        }
    }
}

fn run(kind: CommandKind, args: &CommonArgs) -> (Value, &'static str, i32) {
    let result = (|| -> Result<Value, CliError> {
        let stick = StickChoice::parse(&args.stick).map_err(CliError::reference)?;
        let manifest = Manifest::load(&args.manifest)?;
        let limits = limits_for(args.budget);
        commands::run(kind, &manifest, &args.name, &stick, &limits)
    })();
    match result {
        Ok(payload) => (payload, "ok", 0),
        Err(e) => (json!({ "error": e.message() }), "fail", e.exit_code()),
    }
}

fn main() {
    let cli = Cli::parse();
    let (kind, args) = match &cli.cmd {
        Cmd::Check(a) => (CommandKind::Check, a),
        Cmd::Reduce(a) => (CommandKind::Reduce, a),
        Cmd::Cohomology(a) => (CommandKind::Cohomology, a),
        Cmd::Obstruction(a) => (CommandKind::Obstruction, a),
        Cmd::Classify(a) => (CommandKind::Classify, a),
        Cmd::Prolong(a) => (CommandKind::Prolong, a),
    };

    let started = Instant::now();
    let (payload, status, code) = run(kind, args);
    let report = Report {
        version: FORMAT_VERSION,
        command: kind.label(),
        status,
        payload,
        timing_ms: started.elapsed().as_millis() as u64,
    };

    let mut text = serde_json::to_string_pretty(&report).expect("reports always serialize");
    text.push('\n');
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => print!("{text}"),
    }
    std::process::exit(code);
}
