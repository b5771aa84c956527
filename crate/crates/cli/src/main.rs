use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use newton_number::oracle::CrossCheck;
use newton_number::{
    build_polyhedron, classify, enumerate_equal, gamma_minus, newton_number, nu_drop, Classification,
    Error, GeneratorConfig, LatticePoint, PlaneFailure, StrictReason,
};
use serde::Serialize;
use serde_json::{json, Value};

mod input;
mod mesh;

use input::{lattice_point, parse_point, parse_points, InputDocument};

/// Newton numbers of convenient Newton polyhedra and the effect of adding a
/// lattice point under them.
#[derive(Debug, Parser)]
#[command(name = "newton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Newton number and the volumes V0..Vn.
    Nu {
        /// JSON input document, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide whether adding a point preserves the Newton number.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// `x,y,z`; defaults to the document's `point`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Add points one at a time and report the drops.
    Add {
        #[arg(long)]
        input: PathBuf,
        /// `x,y,z;x,y,z;...`; defaults to the document's `points`.
        #[arg(long)]
        points: Option<String>,
    },
    /// All lattice points whose addition preserves the Newton number.
    EnumerateEqual {
        #[arg(long)]
        input: PathBuf,
    },
    /// Seeded cross-check of the implementation against the oracle.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long, default_value_t = 12)]
        max_intercept: i64,
        #[arg(long, default_value_t = 6)]
        extra: usize,
        #[arg(long, default_value_t = 20)]
        points_per_support: usize,
    },
    /// Write the boundary of the region under the Newton boundary as OBJ.
    Mesh {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// An error message with the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConvenient => 2,
            Error::PointInPolyhedron(_) => 3,
            Error::PredicateMismatch { .. } => 4,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn plane_failure(plane: String, f: &PlaneFailure) -> Value {
    match f {
        PlaneFailure::TallPyramid { height } => json!({"plane": plane, "kind": "tall_pyramid", "height": height}),
        PlaneFailure::MultiApex { count } => json!({"plane": plane, "kind": "multi_apex", "count": count}),
    }
}

#[derive(Serialize)]
struct NuOutput {
    nu: i64,
    convenient: bool,
    dimension: usize,
    volumes: BTreeMap<String, String>,
}

fn nu(doc: &InputDocument) -> Result<Value, Failure> {
    let support = doc.support()?;
    let region = gamma_minus(&build_polyhedron(&support))?;
    let out = NuOutput {
        nu: region.newton_number(),
        convenient: true,
        dimension: support.dim(),
        volumes: (0..=support.dim()).map(|i| (format!("v{i}"), region.volume_sum(i).to_string())).collect(),
    };
    Ok(serde_json::to_value(out).expect("plain data serializes"))
}

fn classify_cmd(doc: &InputDocument, point: Option<&str>) -> Result<Value, Failure> {
    let p = match (point, &doc.point) {
        (Some(text), _) => parse_point(text)?,
        (None, Some(coords)) => lattice_point(coords)?,
        (None, None) => return Err(Failure::input("no point given (use --point or the document's \"point\")")),
    };
    let support = doc.support()?;
    let poly = build_polyhedron(&support);
    let class = classify(&poly, &p)?;
    let before = newton_number(&support)?;
    Ok(match class {
        Classification::Equal(w) => json!({
            "relation": "equal",
            "plane": w.plane.to_string(),
            "apex": w.apex.coords(),
            "nu": before,
        }),
        Classification::Strict(reason) => {
            let after = newton_number(&newton_number::add_point(&support, &p)?)?;
            let reasons: Vec<Value> = match reason {
                StrictReason::InteriorPoint => vec![json!({"kind": "interior_point"})],
                StrictReason::PerPlane(list) => list.iter().map(|(h, f)| plane_failure(h.to_string(), f)).collect(),
            };
            json!({"relation": "strict", "nu_before": before, "nu_after": after, "reasons": reasons})
        }
    })
}

fn add_cmd(doc: &InputDocument, points: Option<&str>) -> Result<Value, Failure> {
    let points: Vec<LatticePoint> = match (points, &doc.points, &doc.point) {
        (Some(text), _, _) => parse_points(text)?,
        (None, Some(rows), _) => rows.iter().map(|r| lattice_point(r)).collect::<Result<_, _>>()?,
        (None, None, Some(row)) => vec![lattice_point(row)?],
        (None, None, None) => return Err(Failure::input("no points given (use --points or the document's \"points\")")),
    };
    let support = doc.support()?;
    let before = newton_number(&support)?;
    let drop = nu_drop(&support, &points)?;
    for (p, skipped) in points.iter().zip(&drop.skipped) {
        if *skipped {
            eprintln!("warning: {p} already lies in the Newton polyhedron; skipped");
        }
    }
    Ok(json!({
        "support": drop.support.to_coords(),
        "nu_before": before,
        "nu_after": before - drop.total,
        "steps": drop.steps,
        "skipped": drop.skipped,
        "total": drop.total,
    }))
}

fn enumerate_cmd(doc: &InputDocument) -> Result<Value, Failure> {
    let support = doc.support()?;
    let hits = enumerate_equal(&support)?;
    let points: Vec<Value> = hits
        .iter()
        .map(|e| json!({"point": e.point.coords(), "plane": e.witness.plane.to_string(), "apex": e.witness.apex.coords()}))
        .collect();
    Ok(json!({"nu": newton_number(&support)?, "points": points}))
}

fn check_cmd(seed: u64, iters: u64, max_intercept: i64, extra: usize, per_support: usize) -> Result<Value, Failure> {
    let config = GeneratorConfig::new(seed, max_intercept, extra);
    let report = CrossCheck::new(config).points_per_support(per_support).run(iters)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.is_ok() {
        Ok(value)
    } else {
        println!("{}", serde_json::to_string_pretty(&value).expect("value serializes"));
        Err(Failure { code: 4, message: format!("{} property violations", report.failures.len()) })
    }
}

fn mesh_cmd(doc: &InputDocument, out: &PathBuf) -> Result<Value, Failure> {
    let support = doc.support()?;
    if support.dim() != 3 {
        return Err(Error::UnsupportedDimension(support.dim()).into());
    }
    let poly = build_polyhedron(&support);
    let region = gamma_minus(&poly)?;
    let mesh = mesh::build(&poly, &region);
    fs::write(out, mesh.to_obj()).map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    Ok(json!({"out": out.display().to_string(), "vertices": mesh.vertices.len(), "faces": mesh.triangles.len()}))
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Nu { input } => nu(&InputDocument::load(&input)?),
        Command::Classify { input, point } => classify_cmd(&InputDocument::load(&input)?, point.as_deref()),
        Command::Add { input, points } => add_cmd(&InputDocument::load(&input)?, points.as_deref()),
        Command::EnumerateEqual { input } => enumerate_cmd(&InputDocument::load(&input)?),
        Command::Check { seed, iters, max_intercept, extra, points_per_support } => {
            check_cmd(seed, iters, max_intercept, extra, points_per_support)
        }
        Command::Mesh { input, out } => mesh_cmd(&InputDocument::load(&input)?, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("value serializes"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
