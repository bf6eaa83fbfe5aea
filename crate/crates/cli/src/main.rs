//! Command-line front end: verify, identify, construct, obstruct, octant,
//! corpus and plot subcommands over knot JSON files.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (not an embedding,
//! unknown knot type, failed corpus check, unrealizable pattern), 2 on
//! errors (bad input, I/O, parse failures).

mod plot;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::json;

use polyknot::construct::{
    default_basis, height_by_intervals_at, height_by_linear_system, obstruction_deg6_at,
    CrossingPattern,
};
use polyknot::corpus::{load_corpus, verify_corpus};
use polyknot::diagram::extract_diagram;
use polyknot::embedding::{is_embedding, sign_octant, KnotFile, PolyKnot};
use polyknot::error::Error;
use polyknot::invariants::identify;
use polyknot::poly::{Degree, Polynomial};
use polyknot::resultant::double_points;

#[derive(Parser)]
#[command(name = "polyknot", version, about = "Exact computation with polynomial knots")]
struct Cli {
    /// Emit machine-readable JSON (default for all commands except `corpus`,
    /// which prints an aligned table unless this flag is set).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a knot file is a polynomial embedding.
    Verify {
        file: PathBuf,
        /// Minimum acceptable height gap over projection crossings.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Name the knot type by its Jones polynomial.
    Identify { file: PathBuf },
    /// Build a height polynomial realizing a crossing pattern over the
    /// plane projection (f, g) of the input file.
    Construct {
        file: PathBuf,
        /// Pattern string over {+,-}, one sign per crossing in ascending
        /// earlier-parameter order.
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Construction: `intervals` (separator product) or `system`
        /// (minimal-norm solution of the height linear system).
        #[arg(long, default_value = "intervals")]
        method: String,
    },
    /// Degree-6 obstruction test for a degree-(4,5) projection with 5 or 6
    /// crossings.
    Obstruct {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Decimal digits for the crossing-coordinate approximants.
        #[arg(long, default_value_t = 30)]
        precision: u32,
    },
    /// Leading-coefficient sign octant of a fixed-degree-stratum knot.
    Octant { file: PathBuf },
    /// Verify the built-in corpus and reprint the path-component tables.
    Corpus {
        /// List the entries without verifying them.
        #[arg(long)]
        list: bool,
    },
    /// Render the plane projection to an SVG with under-strand gaps.
    Plot { file: PathBuf, out: PathBuf },
}

/// Input schema for commands that only need the projection: `h` optional.
#[derive(Deserialize)]
struct ProjectionFile {
    f: String,
    g: String,
    #[serde(default)]
    #[allow(dead_code)]
    h: Option<String>,
    #[serde(default)]
    name: Option<String>,
}

fn read_knot(path: &PathBuf) -> Result<PolyKnot, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    let kf: KnotFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    PolyKnot::from_file(&kf).map_err(|e| e.to_string())
}

fn read_projection(path: &PathBuf) -> Result<(Polynomial, Polynomial, Option<String>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    let pf: ProjectionFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    let f = pf.f.parse().map_err(|e: Error| e.to_string())?;
    let g = pf.g.parse().map_err(|e: Error| e.to_string())?;
    Ok((f, g, pf.name))
}

fn degree_json(d: Degree) -> serde_json::Value {
    match d.as_usize() {
        Some(n) => json!(n),
        None => serde_json::Value::Null,
    }
}

/// Negative-verdict library failures exit 1; everything else is an error (2).
fn verdict_code(e: &Error) -> u8 {
    match e {
        Error::NoSolution { .. }
        | Error::InfeasibleRuns
        | Error::VerificationFailed
        | Error::LiftFailed
        | Error::PathBroken(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Verify { file, tolerance } => {
            let k = read_knot(&file)?;
            let cert = is_embedding(&k).map_err(|e| e.to_string())?;
            let separated = cert.min_separation.is_none_or(|m| m > tolerance);
            let embedding = cert.embedding && separated;
            let (df, dg, dh) = k.degree_sequence();
            let out = json!({
                "embedding": embedding,
                "degree_sequence": [degree_json(df), degree_json(dg), degree_json(dh)],
                "regular": cert.regular,
                "injective": cert.injective && separated,
                "monotone_component": cert.monotone_component,
                "pair_used": cert.pair_used,
                "min_separation": cert.min_separation,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if embedding { 0 } else { 1 })
        }
        Command::Identify { file } => {
            let k = read_knot(&file)?;
            let d = extract_diagram(&k).map_err(|e| e.to_string())?;
            let id = identify(&d).map_err(|e| e.to_string())?;
            let out = json!({
                "knot": id.name,
                "matched_by": id.matched_by,
                "crossings": d.crossing_count(),
                "writhe": d.writhe(),
                "gauss_code": d.gauss_code(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if id.name == "unknown" { 1 } else { 0 })
        }
        Command::Construct {
            file,
            pattern,
            method,
        } => {
            let (f, g, name) = read_projection(&file)?;
            let pattern = CrossingPattern::parse(&pattern).map_err(|e| e.to_string())?;
            let pts = double_points(&f, &g).map_err(|e| e.to_string())?;
            let h = match method.as_str() {
                "intervals" => height_by_intervals_at(&pts, &pattern),
                "system" => height_by_linear_system(&f, &g, &pattern, &default_basis(pts.len())),
                other => return Err(format!("unknown method '{}'", other)),
            };
            let h = match h {
                Ok(h) => h,
                Err(e) => {
                    let out = json!({ "error": e.to_string() });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                    return Ok(verdict_code(&e));
                }
            };
            let mut k = PolyKnot::new(f, g, h);
            k.name = name;
            let cert = is_embedding(&k).map_err(|e| e.to_string())?;
            let d = extract_diagram(&k).map_err(|e| e.to_string())?;
            let id = identify(&d).map_err(|e| e.to_string())?;
            let kf = k.to_file();
            let out = json!({
                "f": kf.f,
                "g": kf.g,
                "h": kf.h,
                "name": kf.name,
                "embedding": cert.embedding,
                "identified": id.name,
                "gauss_code": d.gauss_code(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if cert.embedding { 0 } else { 1 })
        }
        Command::Obstruct {
            file,
            pattern,
            precision,
        } => {
            let (f, g, _) = read_projection(&file)?;
            let pattern = CrossingPattern::parse(&pattern).map_err(|e| e.to_string())?;
            let report = obstruction_deg6_at(&f, &g, &pattern, precision)
                .map_err(|e| e.to_string())?;
            let out = json!({
                "obstructed": report.obstructed,
                "crossings": report.crossings,
                "rank": report.rank,
                "augmented_rank": report.augmented_rank,
                "det": report.det_if_square.as_ref().map(|d| {
                    if d.is_zero() { "zero" } else { "nonzero" }
                }),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Command::Octant { file } => {
            let k = read_knot(&file)?;
            let o = sign_octant(&k).map_err(|e| e.to_string())?;
            let out = json!({ "e1": o.e1, "e2": o.e2, "e3": o.e3 });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Command::Corpus { list } => {
            if list {
                let corpus = load_corpus().map_err(|e| e.to_string())?;
                if cli.json {
                    let entries: Vec<_> = corpus
                        .iter()
                        .map(|e| {
                            json!({
                                "name": e.name,
                                "source": e.source,
                                "degrees": [e.degrees.0, e.degrees.1, e.degrees.2],
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&entries).unwrap());
                } else {
                    println!("{:<10} {:<10} source", "name", "degrees");
                    for e in &corpus {
                        println!(
                            "{:<10} ({},{},{})    {}",
                            e.name, e.degrees.0, e.degrees.1, e.degrees.2, e.source
                        );
                    }
                }
                return Ok(0);
            }
            let report = verify_corpus().map_err(|e| e.to_string())?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "{:<10} {:<10} {:<10} {:<10} {:<8} ok",
                    "name", "identified", "crossings", "embedding", "octants"
                );
                for e in &report.entries {
                    println!(
                        "{:<10} {:<10} {:<10} {:<10} {:<8} {}",
                        e.name,
                        e.identified,
                        format!("{}/{}", e.crossings, e.crossing_bound),
                        if e.embedding { "yes" } else { "NO" },
                        if e.octants_distinct { "8" } else { "DUP" },
                        if e.ok { "ok" } else { "FAIL" }
                    );
                }
                println!();
                println!(
                    "path components: degree 5 >= {}, degree 6 >= {}, degree 7 >= {}",
                    report.components_deg5, report.components_deg6, report.components_deg7
                );
            }
            Ok(if report.all_ok { 0 } else { 1 })
        }
        Command::Plot { file, out } => {
            let k = read_knot(&file)?;
            let svg = plot::render_svg(&k).map_err(|e| e.to_string())?;
            fs::write(&out, svg).map_err(|e| format!("{}: {}", out.display(), e))?;
            Ok(0)
        }
    }
}
