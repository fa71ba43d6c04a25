use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonia::experiment::{run, Command, ExperimentConfig, OutputFormat};
use harmonia::moebius::{StructureKind, StructureSpec};
use harmonia::{Error, Result};

/// Seeded experiments on Möbius structures of the circle.
///
/// Output starts with `# key: value` header lines (command, seed, sample
/// counts, structure, tolerances) in CSV mode, or a `run` object in JSON
/// mode. Each sample writes one row. A sample that fails numerically gets an
/// error row and the run continues. Set HARMONIA_THREADS to cap parallelism.
#[derive(Parser)]
#[command(name = "harmonia", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the four axioms.
    ///
    /// Columns: index, axiom, attempted, valid, margin, min_residual,
    /// counterexamples, error. JSON output also carries the full reports
    /// with counterexample tuples.
    CheckAxioms(Common),
    /// Search for zig-zag paths shorter than a segment of a line.
    ///
    /// Columns: index, axis_from, axis_to (angles of the line's axis),
    /// direct (segment length), found (shortest path found without the
    /// segment), margin (found − direct), sides, evaluations, error.
    VerifyGeodesic(Common),
    /// Distance ratios under the projection of one line to another.
    ///
    /// Columns: index, before (|qq′| on h_a), after (distance of the
    /// projections on h_c), ratio, error.
    ContractionSweep(Common),
    /// Upper bounds for the zig-zag distance between random points.
    ///
    /// Columns: index, upper, sides (of the witness path), evaluations, error.
    DeltaEstimate(Common),
    /// Side slacks of constructed closed zig-zag paths.
    ///
    /// Columns: index, kind (five or hexagon), sides, length, min_slack
    /// (minimum over sides of the sum of the others minus the side), error.
    ClosedPaths(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Structure kind: canonical, sine, power (or their long names).
    #[arg(long, default_value = "canonical", conflicts_with = "structure_file")]
    structure: String,
    /// Perturbation parameter for sine and power structures.
    #[arg(long)]
    epsilon: Option<f64>,
    /// JSON structure description:
    /// {"kind": "canonical-chordal" | "sine-perturbed" | "power-perturbed" | "tabulated",
    /// "epsilon"?: number, "table"?: {"values": [[...]]}}.
    #[arg(long)]
    structure_file: Option<PathBuf>,
    /// Samples per axiom, contraction pairs or closed paths.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Point pairs for verify-geodesic and delta-estimate.
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    /// Path evaluations per pair.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Defaults to json for check-axioms and csv otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn structure(c: &Common) -> Result<StructureSpec> {
    if let Some(path) = &c.structure_file {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return StructureSpec::from_json(&text);
    }
    let kind: StructureKind = serde_json::from_value(serde_json::Value::String(c.structure.clone()))
        .map_err(|_| Error::InvalidStructure(format!("unknown structure {:?}", c.structure)))?;
    Ok(StructureSpec { kind, epsilon: c.epsilon, table: None })
}

fn execute(cli: Cli) -> Result<()> {
    let (command, c) = match cli.command {
        Cmd::CheckAxioms(c) => (Command::CheckAxioms, c),
        Cmd::VerifyGeodesic(c) => (Command::VerifyGeodesic, c),
        Cmd::ContractionSweep(c) => (Command::ContractionSweep, c),
        Cmd::DeltaEstimate(c) => (Command::DeltaEstimate, c),
        Cmd::ClosedPaths(c) => (Command::ClosedPaths, c),
    };
    let format = match c.format {
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Json) => OutputFormat::Json,
        None if command == Command::CheckAxioms => OutputFormat::Json,
        None => OutputFormat::Csv,
    };
    let config = ExperimentConfig {
        command,
        structure: structure(&c)?,
        n: c.n,
        pairs: c.pairs,
        budget: c.budget,
        seed: c.seed,
        format,
    };
    let text = run(&config)?;
    match &c.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("HARMONIA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("harmonia: {e}");
            ExitCode::FAILURE
        }
    }
}
