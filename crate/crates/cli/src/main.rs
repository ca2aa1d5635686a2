//! JSON-in/JSON-out command-line front end.
//!
//! Every subcommand takes angle vectors as JSON arrays (strings like
//! `"3/2"` parse as exact rationals, bare numbers as floats) and prints a
//! single response object echoing the resolved options. Exit code 0 means
//! the response has no error field; 1 is a domain error, 2 a usage error.
//! `batch` reads one request object per stdin line and answers line by
//! line.

use clap::{Parser, Subcommand, ValueEnum};
use coneangles::angles::{AngleUnit, AngleVector};
use coneangles::cubes::{self, PermutationGroup};
use coneangles::holonomy;
use coneangles::merging;
use coneangles::planner::{self, Rat};
use coneangles::scalar::{Scalar, DEFAULT_TOLERANCE};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::BufRead;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coneangles", version, about = "Admissibility, reduction, realization and construction planning for cone-angle vectors")]
struct Cli {
    /// Tolerance for float classification boundaries.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Seed for the deterministic realizer.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Angle unit of the input vectors.
    #[arg(long, global = true, value_enum)]
    unit: Option<UnitArg>,
    /// Pretty-print the JSON response.
    #[arg(long, global = true)]
    pretty: bool,
    /// Print compact JSON (default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Pi,
    TwoPi,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    D8,
    S4,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an angle vector against the positivity and holonomy
    /// constraints.
    Check { input: String },
    /// Reduce a strictly admissible vector by merges down to length 3 or 4.
    Reduce {
        input: String,
        #[arg(long, default_value_t = 4)]
        stop_at: usize,
    },
    /// Realize the holonomy as a closed broken geodesic with its SU(2)
    /// matrix set.
    Realize { input: String },
    /// Emit a validated symbolic construction plan.
    Plan { input: String },
    /// Coverage check against a truncated cube's even-vertex table.
    Cover {
        input: String,
        #[arg(long)]
        cube: String,
        #[arg(long, value_enum, default_value_t = GroupArg::S4)]
        group: GroupArg,
    },
    /// Piecewise-linear interior path between two strictly
    /// holonomy-feasible vectors.
    Path { input: String, input2: String },
    /// Read one JSON request per stdin line and answer line by line.
    Batch,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Options {
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    unit: Option<AngleUnit>,
    #[serde(default)]
    stop_at: Option<usize>,
    #[serde(default)]
    group: Option<String>,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Deserialize)]
struct Request {
    command: String,
    #[serde(default)]
    input: Vec<Scalar>,
    #[serde(default)]
    input2: Option<Vec<Scalar>>,
    #[serde(default)]
    cube: Option<Vec<Scalar>>,
    #[serde(default)]
    options: Option<Options>,
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

fn parse_vector(raw: &str) -> Result<Vec<Scalar>, Failure> {
    serde_json::from_str(raw).map_err(|e| Failure::Usage(format!("malformed JSON vector: {e}")))
}

fn angle_vector(entries: Vec<Scalar>, unit: AngleUnit) -> Result<AngleVector, Failure> {
    AngleVector::new(entries, unit).map_err(|e| Failure::Usage(e.to_string()))
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn run_request(req: &Request) -> Result<(Value, Options), Failure> {
    let mut opts = req.options.clone().unwrap_or(Options {
        tolerance: DEFAULT_TOLERANCE,
        seed: 0,
        unit: None,
        stop_at: None,
        group: None,
    });
    let default_unit = match req.command.as_str() {
        "cover" => AngleUnit::Pi,
        _ => AngleUnit::TwoPi,
    };
    let unit = opts.unit.unwrap_or(default_unit);
    opts.unit = Some(unit);
    let tol = opts.tolerance;

    let result = match req.command.as_str() {
        "check" => {
            let theta = angle_vector(req.input.clone(), unit)?;
            let report = coneangles::classify(&theta, tol).map_err(domain)?;
            serde_json::to_value(report).expect("serializable")
        }
        "reduce" => {
            let stop_at = opts.stop_at.unwrap_or(4);
            opts.stop_at = Some(stop_at);
            let theta = angle_vector(req.input.clone(), unit)?;
            let chain = merging::reduce_chain(&theta.defects(), stop_at, tol).map_err(domain)?;
            serde_json::to_value(chain).expect("serializable")
        }
        "realize" => {
            let theta = angle_vector(req.input.clone(), unit)?;
            let geodesic = holonomy::build_geodesic(&theta, opts.seed, tol).map_err(domain)?;
            let matrices = holonomy::matrices_from_geodesic(&geodesic, &theta);
            let su2: Vec<_> = matrices.matrices.iter().map(|u| u.su2_matrix()).collect();
            json!({
                "geodesic": geodesic,
                "matrix_set": matrices,
                "su2_matrices": su2,
                "axes_parallel": holonomy::coaxiality_test(&matrices),
            })
        }
        "plan" => {
            let theta = angle_vector(req.input.clone(), unit)?;
            let plan = planner::plan_sphere_n(&theta.entries).map_err(domain)?;
            let target: Vec<Rat> = theta
                .entries
                .iter()
                .map(|e| e.to_exact().map(Rat))
                .collect::<Option<_>>()
                .ok_or_else(|| Failure::Usage("non-finite input".into()))?;
            let report = planner::validate_plan(&plan, &target).map_err(domain)?;
            json!({
                "plan": plan,
                "validation": report,
                "rendered": plan.render(),
            })
        }
        "cover" => {
            let theta = angle_vector(req.input.clone(), unit)?;
            let center = req
                .cube
                .clone()
                .ok_or_else(|| Failure::Usage("cover requires a cube center".into()))?;
            let mut sorted_halves: Vec<i64> = Vec::with_capacity(center.len());
            for c in &center {
                let doubled = c * &Scalar::from_int(2);
                if !doubled.is_integer(tol) {
                    return Err(Failure::Usage("cube center must be half-integral".into()));
                }
                sorted_halves.push(doubled.round_ties_even_i64());
            }
            sorted_halves.sort_unstable_by(|a, b| b.cmp(a));
            let table: Vec<Vec<i64>> = match sorted_halves.as_slice() {
                [3, 1, 1, 1] => cubes::COVER_ONE_LARGE.iter().map(|v| v.to_vec()).collect(),
                [3, 3, 1, 1] => cubes::COVER_TWO_LARGE.iter().map(|v| v.to_vec()).collect(),
                [5, 1, 1, 1] => cubes::COVER_IMMERSED.iter().map(|v| v.to_vec()).collect(),
                _ => {
                    return Err(Failure::Domain(
                        "no coverage table for this cube center".into(),
                    ))
                }
            };
            let group = match opts.group.as_deref() {
                Some("d8") => PermutationGroup::D8,
                Some("s4") | None => PermutationGroup::S4,
                Some(other) => {
                    return Err(Failure::Usage(format!("unknown permutation group {other:?}")))
                }
            };
            let result = cubes::coverage_check(&theta, &center, &table, group, tol).map_err(domain)?;
            serde_json::to_value(result).expect("serializable")
        }
        "path" => {
            let a = angle_vector(req.input.clone(), unit)?;
            let b = angle_vector(
                req.input2
                    .clone()
                    .ok_or_else(|| Failure::Usage("path requires two vectors".into()))?,
                unit,
            )?;
            let path = cubes::interior_path(&a.defects(), &b.defects(), tol).map_err(domain)?;
            serde_json::to_value(path).expect("serializable")
        }
        other => return Err(Failure::Usage(format!("unknown command {other:?}"))),
    };
    Ok((result, opts))
}

fn respond(command: &str, outcome: Result<(Value, Options), Failure>, pretty: bool) -> i32 {
    let (payload, code) = match outcome {
        Ok((result, opts)) => (
            json!({"command": command, "options": opts, "result": result}),
            0,
        ),
        Err(f) => {
            let opts = Options {
                tolerance: DEFAULT_TOLERANCE,
                seed: 0,
                unit: None,
                stop_at: None,
                group: None,
            };
            (
                json!({"command": command, "options": opts, "error": f.message()}),
                f.code(),
            )
        }
    };
    let text = if pretty {
        serde_json::to_string_pretty(&payload).expect("serializable")
    } else {
        serde_json::to_string(&payload).expect("serializable")
    };
    println!("{text}");
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = Options {
        tolerance: cli.tolerance,
        seed: cli.seed,
        unit: cli.unit.map(|u| match u {
            UnitArg::Pi => AngleUnit::Pi,
            UnitArg::TwoPi => AngleUnit::TwoPi,
        }),
        stop_at: None,
        group: None,
    };
    let (command, request) = match &cli.command {
        Command::Check { input } => (
            "check",
            parse_vector(input).map(|v| Request {
                command: "check".into(),
                input: v,
                input2: None,
                cube: None,
                options: Some(options.clone()),
            }),
        ),
        Command::Reduce { input, stop_at } => (
            "reduce",
            parse_vector(input).map(|v| Request {
                command: "reduce".into(),
                input: v,
                input2: None,
                cube: None,
                options: Some(Options {
                    stop_at: Some(*stop_at),
                    ..options.clone()
                }),
            }),
        ),
        Command::Realize { input } => (
            "realize",
            parse_vector(input).map(|v| Request {
                command: "realize".into(),
                input: v,
                input2: None,
                cube: None,
                options: Some(options.clone()),
            }),
        ),
        Command::Plan { input } => (
            "plan",
            parse_vector(input).map(|v| Request {
                command: "plan".into(),
                input: v,
                input2: None,
                cube: None,
                options: Some(options.clone()),
            }),
        ),
        Command::Cover { input, cube, group } => (
            "cover",
            parse_vector(input).and_then(|v| {
                parse_vector(cube).map(|c| Request {
                    command: "cover".into(),
                    input: v,
                    input2: None,
                    cube: Some(c),
                    options: Some(Options {
                        group: Some(
                            match group {
                                GroupArg::D8 => "d8",
                                GroupArg::S4 => "s4",
                            }
                            .into(),
                        ),
                        ..options.clone()
                    }),
                })
            }),
        ),
        Command::Path { input, input2 } => (
            "path",
            parse_vector(input).and_then(|v| {
                parse_vector(input2).map(|w| Request {
                    command: "path".into(),
                    input: v,
                    input2: Some(w),
                    cube: None,
                    options: Some(options.clone()),
                })
            }),
        ),
        Command::Batch => {
            let stdin = std::io::stdin();
            let mut worst = 0;
            for line in stdin.lock().lines() {
                let Ok(line) = line else {
                    return ExitCode::from(2);
                };
                if line.trim().is_empty() {
                    continue;
                }
                let code = match serde_json::from_str::<Request>(&line) {
                    Ok(req) => {
                        let outcome = run_request(&req);
                        respond(&req.command.clone(), outcome, cli.pretty)
                    }
                    Err(e) => respond("batch", Err(Failure::Usage(format!("malformed request: {e}"))), cli.pretty),
                };
                worst = worst.max(code);
            }
            return ExitCode::from(worst as u8);
        }
    };
    let code = match request {
        Ok(req) => respond(command, run_request(&req), cli.pretty),
        Err(f) => respond(command, Err(f), cli.pretty),
    };
    ExitCode::from(code as u8)
}
