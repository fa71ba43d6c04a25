//! Batch experiments behind the command-line tool.
//!
//! A run is a pure function of its [`ExperimentConfig`]: every sample draws
//! from its own random stream, samples are evaluated in parallel and rows are
//! written in sample order.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::axioms::check_all;
use crate::circle::PointPair;
use crate::error::{Error, Result};
use crate::harmonic::{reflection, HarmonicPair};
use crate::moebius::{MoebiusStructure, StructureSpec};
use crate::projections::{admissible_pairs, averaged_expansion_slack, contraction_ratio, is_harmonic};
use crate::sampling::{point_on_arc, random_harmonic, random_on_line, random_pair, random_point, sample_rng};
use crate::zigzag::{
    admissible_arcs, closed_five, closed_hexagon, closed_path_check, delta_upper, verify_geodesic,
    ClosedPathReport, DeltaOptions, GeodesicReport, ZZPath,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckAxioms,
    VerifyGeodesic,
    ContractionSweep,
    DeltaEstimate,
    ClosedPaths,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAxioms => "check-axioms",
            Command::VerifyGeodesic => "verify-geodesic",
            Command::ContractionSweep => "contraction-sweep",
            Command::DeltaEstimate => "delta-estimate",
            Command::ClosedPaths => "closed-paths",
        }
    }

    /// CSV columns after the leading `index`.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Command::CheckAxioms => {
                &["axiom", "attempted", "valid", "margin", "min_residual", "counterexamples"]
            }
            Command::VerifyGeodesic => {
                &["axis_from", "axis_to", "direct", "found", "margin", "sides", "evaluations"]
            }
            Command::ContractionSweep => &["before", "after", "ratio"],
            Command::DeltaEstimate => &["upper", "sides", "evaluations"],
            Command::ClosedPaths => &["kind", "sides", "length", "min_slack"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything that determines a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub structure: StructureSpec,
    /// Samples for `check-axioms`, `contraction-sweep` and `closed-paths`.
    pub n: usize,
    /// Point pairs for `verify-geodesic` and `delta-estimate`.
    pub pairs: usize,
    /// Path evaluations per pair.
    pub budget: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq)]
enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
        }
    }
}

type Row = Result<Vec<Cell>>;

/// Executes the configured command and returns the formatted output.
pub fn run(config: &ExperimentConfig) -> Result<String> {
    let m = MoebiusStructure::from_spec(&config.structure)?;
    let count = match config.command {
        Command::VerifyGeodesic | Command::DeltaEstimate => config.pairs,
        _ => config.n,
    };
    if count == 0 || config.budget == 0 {
        return Err(Error::EmptySampleBudget);
    }
    if config.command == Command::CheckAxioms {
        let reports = check_all(&m, config.n, config.seed)?;
        if config.format == OutputFormat::Json {
            let doc = json!({"run": header(&m, config), "rows": reports});
            return Ok(pretty(&doc));
        }
        let rows: Vec<Row> = reports
            .into_iter()
            .map(|r| {
                Ok(vec![
                    Cell::Text(r.axiom.name().into()),
                    Cell::Int(r.attempted as u64),
                    Cell::Int(r.valid as u64),
                    Cell::Float(r.margin),
                    r.min_residual.map_or(Cell::Text(String::new()), Cell::Float),
                    Cell::Int(r.counterexamples.len() as u64),
                ])
            })
            .collect();
        return Ok(to_csv(&m, config, &rows));
    }
    let rows: Vec<Row> =
        (0..count).into_par_iter().map(|i| sample_row(&m, config, config.command, i as u64)).collect();
    Ok(match config.format {
        OutputFormat::Csv => to_csv(&m, config, &rows),
        OutputFormat::Json => to_json(&m, config, &rows),
    })
}

fn sample_row(m: &MoebiusStructure, config: &ExperimentConfig, cmd: Command, i: u64) -> Row {
    let seed = config.seed;
    match cmd {
        Command::VerifyGeodesic => {
            let (q, q2) = geodesic_instance(m, seed, i)?;
            let r: GeodesicReport = verify_geodesic(m, q, q2, config.budget, seed ^ i)?;
            Ok(vec![
                Cell::Float(q.left().first().angle()),
                Cell::Float(q.left().second().angle()),
                Cell::Float(r.direct),
                Cell::Float(r.found),
                Cell::Float(r.margin),
                Cell::Int(r.sides as u64),
                Cell::Int(r.evaluations as u64),
            ])
        }
        Command::ContractionSweep => {
            let (after, before) = contraction_instance(m, seed, i)?;
            Ok(vec![Cell::Float(before), Cell::Float(after), Cell::Float(after / before)])
        }
        Command::DeltaEstimate => {
            let mut rng = sample_rng(seed, i);
            let q = random_harmonic(m, &mut rng)?;
            let q2 = random_harmonic(m, &mut rng)?;
            let e = delta_upper(m, q, q2, &DeltaOptions::new(config.budget, seed ^ i))?;
            Ok(vec![
                Cell::Float(e.upper),
                Cell::Int(e.witness.sides() as u64),
                Cell::Int(e.evaluations as u64),
            ])
        }
        Command::ClosedPaths => {
            let (kind, path) = closed_path_instance(m, seed, i)?;
            let r: ClosedPathReport = closed_path_check(m, &path)?;
            Ok(vec![
                Cell::Text(kind.into()),
                Cell::Int(r.sides as u64),
                Cell::Float(path.length()),
                Cell::Float(r.min_slack),
            ])
        }
        Command::CheckAxioms => unreachable!("handled per report"),
    }
}

fn header(m: &MoebiusStructure, config: &ExperimentConfig) -> Map<String, Value> {
    let tol = m.tolerances();
    let mut h = Map::new();
    h.insert("command".into(), json!(config.command.name()));
    h.insert("seed".into(), json!(config.seed));
    h.insert("n".into(), json!(config.n));
    h.insert("pairs".into(), json!(config.pairs));
    h.insert("budget".into(), json!(config.budget));
    h.insert("structure".into(), serde_json::to_value(&config.structure).unwrap_or(Value::Null));
    h.insert(
        "tolerances".into(),
        json!({"cross_ratio": tol.cross_ratio, "harmonic": tol.harmonic, "angle": tol.angle}),
    );
    h
}

fn to_csv(m: &MoebiusStructure, config: &ExperimentConfig, rows: &[Row]) -> String {
    let mut out = String::new();
    for (k, v) in header(m, config) {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let columns = config.command.columns();
    let _ = writeln!(out, "index,{},error", columns.join(","));
    for (i, row) in rows.iter().enumerate() {
        match row {
            Ok(cells) => {
                let body: Vec<String> = cells.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "{i},{},", body.join(","));
            }
            Err(e) => {
                let _ =
                    writeln!(out, "{i},{}\"{}\"", ",".repeat(columns.len()), e.to_string().replace('"', "'"));
            }
        }
    }
    out
}

fn to_json(m: &MoebiusStructure, config: &ExperimentConfig, rows: &[Row]) -> String {
    let columns = config.command.columns();
    let rows: Vec<Value> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut obj = Map::new();
            obj.insert("index".into(), json!(i));
            match row {
                Ok(cells) => {
                    for (name, cell) in columns.iter().zip(cells) {
                        obj.insert((*name).into(), cell.json());
                    }
                }
                Err(e) => {
                    obj.insert("error".into(), json!(e.to_string()));
                }
            }
            Value::Object(obj)
        })
        .collect();
    pretty(&json!({"run": header(m, config), "rows": rows}))
}

fn pretty(doc: &Value) -> String {
    let mut text = serde_json::to_string_pretty(doc).unwrap_or_default();
    text.push('\n');
    text
}

/// Two points of a random line.
pub fn geodesic_instance(m: &MoebiusStructure, seed: u64, i: u64) -> Result<(HarmonicPair, HarmonicPair)> {
    let mut rng = sample_rng(seed, i);
    let a = random_pair(&mut rng);
    Ok((random_on_line(m, &mut rng, a)?, random_on_line(m, &mut rng, a)?))
}

/// `(|pr_c(q) pr_c(q′)|, |qq′|)` for random `a ≠ c` and `q`, `q′ ∈ h_a`.
pub fn contraction_instance(m: &MoebiusStructure, seed: u64, i: u64) -> Result<(f64, f64)> {
    let mut rng = sample_rng(seed, i);
    let (a, c) = loop {
        let (a, c) = (random_pair(&mut rng), random_pair(&mut rng));
        if a != c {
            break (a, c);
        }
    };
    let q = random_on_line(m, &mut rng, a)?;
    let q2 = random_on_line(m, &mut rng, a)?;
    contraction_ratio(m, q, q2, c)
}

/// Slack of the averaged expansion inequality for two random points of the
/// admissible segment `z_c u_c ⊂ h_c` of a random axis `a = (z, u)`.
pub fn expansion_instance(m: &MoebiusStructure, seed: u64, i: u64) -> Result<f64> {
    let mut rng = sample_rng(seed, i);
    let (a, c) = loop {
        let (a, c) = (random_pair(&mut rng), random_pair(&mut rng));
        if a != c && !a.shares_point(c) && !is_harmonic(m, a, c) {
            break (a, c);
        }
    };
    let (f1, f2): (f64, f64) = (rng.gen(), rng.gen());
    let [d, d2] = admissible_pairs(m, a, c, f1, f2)?;
    averaged_expansion_slack(m, a, c, d, d2)
}

/// A closed path: even indices give a five-side connector closed by a
/// segment, odd indices a hexagon through a random corner.
pub fn closed_path_instance(m: &MoebiusStructure, seed: u64, i: u64) -> Result<(&'static str, ZZPath)> {
    let mut rng = sample_rng(seed, i);
    if i.is_multiple_of(2) {
        let a = random_pair(&mut rng);
        let q = random_on_line(m, &mut rng, a)?;
        let q2 = random_on_line(m, &mut rng, a)?;
        let arcs = admissible_arcs(q.right(), q2.right());
        let arc = arcs[rng.gen_range(0..arcs.len())];
        let a3 = PointPair::new(point_on_arc(&mut rng, arc), point_on_arc(&mut rng, arc))?;
        Ok(("five", closed_five(m, q, q2, a3)?))
    } else {
        let q = random_harmonic(m, &mut rng)?;
        let z = loop {
            let z = random_point(&mut rng);
            if !q.left().contains(z) {
                break z;
            }
        };
        let c = PointPair::new(z, reflection(m, q.left(), z)?)?;
        let arcs = admissible_arcs(c, q.right());
        let arc = arcs[rng.gen_range(0..arcs.len())];
        let a3 = PointPair::new(point_on_arc(&mut rng, arc), point_on_arc(&mut rng, arc))?;
        Ok(("hexagon", closed_hexagon(m, q, z, a3)?))
    }
}

/// Triangle property of estimates with the concatenated witnesses offered as
/// a candidate: returns `(δ(q,q″), δ(q,q′) + δ(q′,q″))`.
pub fn triangle_instance(m: &MoebiusStructure, seed: u64, i: u64, budget: usize) -> Result<(f64, f64)> {
    let mut rng = sample_rng(seed, i);
    let q = random_harmonic(m, &mut rng)?;
    let q1 = random_harmonic(m, &mut rng)?;
    let q2 = random_harmonic(m, &mut rng)?;
    let e1 = delta_upper(m, q, q1, &DeltaOptions::new(budget, seed))?;
    let e2 = delta_upper(m, q1, q2, &DeltaOptions::new(budget, seed))?;
    let mut opts = DeltaOptions::new(budget, seed);
    opts.extra_candidates.push(e1.witness.concat(m, &e2.witness)?);
    let e = delta_upper(m, q, q2, &opts)?;
    Ok((e.upper, e1.upper + e2.upper))
}
