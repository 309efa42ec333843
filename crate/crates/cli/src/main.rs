use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conepoly::areaform::{gram, square_norm};
use conepoly::polyspace::random_element;
use conepoly::{
    cut_glue, parse_curvature, realize, reverse, standard_basis, AngleTuple, CurvatureData,
    PolygonVector,
};
use conepoly_cli::complex::{format_complex, parse_complex_list};
use conepoly_cli::report::{build, complex_rows, Method};
use conepoly_cli::verify::{self, Fault, VerifyConfig};
use conepoly_cli::{json, svg};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "conepoly",
    version,
    about = "Signatures of the area form on cone-angle polygon spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the signature by the closed formula, numerically, and recursively.
    Signature {
        /// Comma-separated angles in units of π (`a/b`, `a`) or radians (`{x}r`).
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Absolute eigenvalue threshold for the numeric inertia.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Include the Gram matrix of the standard basis.
        #[arg(long)]
        gram: bool,
    },
    /// Print the Gram matrix of the standard basis and its inertia.
    Gram {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Print one polygon in the space, optionally as SVG.
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficients on the standard basis, e.g. `1+0i,-2,0.5-i`.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Apply cut-and-glue or reversal to a polygon.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, value_enum)]
        op: Op,
        /// One-based position of the cut (cut-glue only).
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the randomized property sweep.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    CutGlue,
    Reverse,
}

/// Failure modes mapped onto exit codes 1 and 2.
enum Failure {
    Usage(String),
    Disagreement,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Disagreement) => ExitCode::from(2),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Signature {
            kappa,
            method,
            tol,
            json,
            gram,
        } => {
            let k = parse_curvature(&kappa)?;
            let report = build(k.tokens(), &k, method, tol, gram)?;
            if json {
                println!("{}", json::to_string(&report));
            } else {
                print!("{}", report.human());
            }
            if method == Method::All && !report.agree {
                return Err(Failure::Disagreement);
            }
            Ok(())
        }
        Command::Gram { kappa, tol, json } => cmd_gram(&kappa, tol, json),
        Command::Sample {
            kappa,
            seed,
            coeffs,
            svg: svg_path,
        } => {
            let k = parse_curvature(&kappa)?;
            let z = polygon(&k, coeffs.as_deref(), seed)?;
            print_vector("z", &z);
            println!("square_norm = {:.12}", square_norm(&z) + 0.0);
            if let Some(path) = svg_path {
                std::fs::write(&path, svg::render(&realize(&z)))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(())
        }
        Command::Transform {
            kappa,
            op,
            index,
            coeffs,
            seed,
        } => {
            let k = parse_curvature(&kappa)?;
            let z = polygon(&k, coeffs.as_deref(), seed)?;
            let (target, image) = match op {
                Op::CutGlue => {
                    let i = index.ok_or("--op cut-glue requires --index")?;
                    cut_glue(&k, i, &z)?
                }
                Op::Reverse => reverse(&k, &z)?,
            };
            print_vector("input", &z);
            print_vector("output", &image);
            println!("target_kappa = {}", target.tokens().join(","));
            println!("input_square_norm = {:.12}", square_norm(&z) + 0.0);
            println!("output_square_norm = {:.12}", square_norm(&image) + 0.0);
            Ok(())
        }
        Command::Verify {
            n_max,
            trials,
            seed,
            inject_fault,
        } => {
            let results = verify::run(&VerifyConfig {
                n_max,
                trials,
                seed,
                fault: inject_fault,
            });
            print!("{}", verify::table(&results));
            if results.iter().all(verify::CheckResult::passed) {
                Ok(())
            } else {
                Err(Failure::Disagreement)
            }
        }
    }
}

#[derive(Serialize)]
struct GramInertia {
    #[serde(rename = "P")]
    positive: usize,
    #[serde(rename = "N")]
    negative: usize,
    #[serde(rename = "Z")]
    zero: usize,
    tolerance: f64,
}

#[derive(Serialize)]
struct GramReport {
    kappa_tokens: Vec<String>,
    dim: usize,
    gram: Vec<Vec<[f64; 2]>>,
    inertia: GramInertia,
}

fn cmd_gram(kappa: &str, tol: Option<f64>, as_json: bool) -> Result<(), Failure> {
    let k = parse_curvature(kappa)?;
    let g = gram(&k, &standard_basis(&k))?;
    let i = g.inertia(tol)?;
    let report = GramReport {
        kappa_tokens: k.tokens(),
        dim: k.dim(),
        gram: complex_rows(g.entries()),
        inertia: GramInertia {
            positive: i.positive,
            negative: i.negative,
            zero: i.zero,
            tolerance: i.tolerance_used,
        },
    };
    if as_json {
        println!("{}", json::to_string(&report));
    } else {
        for row in g.entries().row_iter() {
            let cells: Vec<String> = row.iter().map(|c| format_complex(*c)).collect();
            println!("[{}]", cells.join(", "));
        }
        println!(
            "inertia (P, N, Z) = ({}, {}, {})  tol = {:e}",
            i.positive, i.negative, i.zero, i.tolerance_used
        );
    }
    Ok(())
}

fn polygon(k: &CurvatureData, coeffs: Option<&str>, seed: u64) -> Result<PolygonVector, Failure> {
    match coeffs {
        Some(text) => {
            let c = parse_complex_list(text)?;
            Ok(standard_basis(k).combine(&c)?)
        }
        None => Ok(random_element(k, seed)?),
    }
}

fn print_vector(label: &str, z: &PolygonVector) {
    println!("{label}:");
    for (j, c) in z.coords().iter().enumerate() {
        println!("  z{} = {}", j + 1, format_complex(*c));
    }
}
