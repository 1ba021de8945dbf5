//! Command line front end: `gtpoly <subcommand>`.
//!
//! Shapes and weights are accepted inline (comma lists) or as JSON files;
//! inline values win on conflict. All outputs are JSON (or DOT for the
//! poset) and are byte-for-byte deterministic unless timing is requested.

use crate::classify::classify_shape;
use crate::decompose;
use crate::error::{Error, Result};
use crate::partition::{parse_comma_list, Composition, Partition};
use crate::pattern::GTPattern;
use crate::polytope::{
    idp_check, pulling_triangulation, IdpVerdict, PolytopeSpec, VertexOrder,
};
use crate::poset::{build_poset, PosetOptions};
use crate::report::analyze;
use crate::shape::SkewShape;
use crate::tableau::SkewTableau;
use crate::tiling::{compute_tiling, kernel_dimension, tiling_matrix};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "gtpoly", version, about = "Exact computations with skew Gelfand-Tsetlin polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Shape as a JSON file {"lambda": [...], "mu": [...]}
    #[arg(long)]
    shape: Option<PathBuf>,
    /// Outer partition, e.g. "4,3,1" (wins over --shape)
    #[arg(long)]
    lambda: Option<String>,
    /// Inner partition, e.g. "2,1"
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Args, Clone)]
struct PolytopeArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Weight composition, e.g. "2,2,1" (omit for the weightless polytope)
    #[arg(long)]
    weight: Option<String>,
    /// Pattern rows for the weightless polytope
    #[arg(long)]
    rows: Option<usize>,
    /// Dilation factor
    #[arg(long, default_value_t = 1)]
    k: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a shape by the integrality of its weight-one polytope
    Classify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        json: Option<String>,
    },
    /// Tiling, tiling matrix, nullity and vertex certificate of a pattern
    Tiling {
        /// Pattern as a JSON file (rows bottom first)
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        json: Option<String>,
    },
    /// Enumerate the lattice points
    Points {
        #[command(flatten)]
        polytope: PolytopeArgs,
        #[arg(long)]
        json: Option<String>,
    },
    /// Enumerate the vertices exactly
    Vertices {
        #[command(flatten)]
        polytope: PolytopeArgs,
        #[arg(long)]
        json: Option<String>,
    },
    /// Full report: emptiness, integrality, counts, simplex flag
    Analyze {
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Also check the integer decomposition property up to this dilation
        #[arg(long, default_value_t = 0)]
        max_k: u64,
        /// Include wall-clock timing (breaks byte determinism)
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// Integer decomposition property up to --max-k
    Idp {
        #[command(flatten)]
        polytope: PolytopeArgs,
        #[arg(long, default_value_t = 3)]
        max_k: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Pulling triangulation under a vertex order
    Triangulate {
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Vertex pull order: lex, revlex, shuffle, or file
        #[arg(long, default_value = "lex")]
        order: String,
        /// JSON file with the explicit vertex order (for --order file)
        #[arg(long)]
        order_file: Option<PathBuf>,
        /// Seed for --order shuffle
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Refinement poset of weights for a shape, with DOT output
    Poset {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Check the decomposition property up to this dilation per node
        #[arg(long, default_value_t = 0)]
        max_k: u64,
        /// Evaluate all compositions instead of partitions
        #[arg(long)]
        permutations: bool,
        /// Worker threads (falls back to GTPOLY_THREADS, then 1)
        #[arg(long)]
        threads: Option<usize>,
        /// Write DOT here ("-" for stdout)
        #[arg(long)]
        dot: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Decompose a tableau or pattern
    Decompose {
        /// One of: hook, reverse-hook, columns, contingency
        #[arg(long)]
        mode: String,
        /// Input JSON file (a tableau, or a pattern for contingency)
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Replay the stored reference fixtures and diff the results
    Repro,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Classify { shape, json } => {
            let shape = resolve_shape(&shape)?;
            let class = classify_shape(&shape);
            let value = match &class {
                crate::classify::ShapeClass::NonIntegralWitness {
                    forbidden_index,
                    embedding,
                } => json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "tag": "NonIntegralWitness",
                    "witness": {
                        "forbidden_index": forbidden_index,
                        "row_map": embedding.row_map,
                        "col_map": embedding.col_map,
                    },
                }),
                other => json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "tag": format!("{other:?}"),
                }),
            };
            emit(&json, &value)?;
            Ok(0)
        }
        Command::Tiling { pattern, json } => {
            let p = read_pattern(&pattern)?;
            p.validate().map_err(Error::Validation)?;
            let tiling = compute_tiling(&p);
            let matrix = tiling_matrix(&tiling);
            let nullity = kernel_dimension(&matrix);
            let value = json!({
                "schema_version": crate::report::SCHEMA_VERSION,
                "tiles": tiling.tiles.iter().map(|t| json!({
                    "cells": t.cells,
                    "content": crate::rational::rational_to_json(&t.content),
                    "fixed": t.fixed,
                })).collect::<Vec<_>>(),
                "matrix": matrix.entries,
                "nullity": nullity,
                "is_vertex": nullity == 0,
            });
            emit(&json, &value)?;
            Ok(0)
        }
        Command::Points { polytope, json } => {
            let spec = resolve_polytope(&polytope)?;
            let points: Vec<_> = spec.lattice_points().iter().map(GTPattern::to_json).collect();
            emit(
                &json,
                &json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "count": points.len(),
                    "points": points,
                }),
            )?;
            Ok(0)
        }
        Command::Vertices { polytope, json } => {
            let spec = resolve_polytope(&polytope)?;
            let verts = spec.vertices()?;
            emit(
                &json,
                &json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "count": verts.len(),
                    "integral": !verts.is_empty() && verts.iter().all(GTPattern::is_integral),
                    "vertices": verts.iter().map(GTPattern::to_json).collect::<Vec<_>>(),
                }),
            )?;
            Ok(0)
        }
        Command::Analyze {
            polytope,
            max_k,
            timing,
            json,
        } => {
            let spec = resolve_polytope(&polytope)?;
            let report = analyze(&spec, max_k, timing)?;
            emit(&json, &serde_json::to_value(&report)?)?;
            Ok(0)
        }
        Command::Idp {
            polytope,
            max_k,
            json,
        } => {
            let spec = resolve_polytope(&polytope)?;
            let verdict = idp_check(&spec, max_k)?;
            let value = match &verdict {
                IdpVerdict::HoldsUpTo(k) => json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "holds": true, "max_k": k,
                }),
                IdpVerdict::Counterexample { k, point } => json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "holds": false, "k": k, "counterexample": point.to_json(),
                }),
            };
            emit(&json, &value)?;
            Ok(if verdict.holds() { 0 } else { 1 })
        }
        Command::Triangulate {
            polytope,
            order,
            order_file,
            seed,
            json,
        } => {
            let spec = resolve_polytope(&polytope)?;
            let order = match order.as_str() {
                "lex" => VertexOrder::Lex,
                "revlex" => VertexOrder::RevLex,
                "shuffle" => VertexOrder::Shuffled { seed },
                "file" => {
                    let path = order_file.ok_or_else(|| {
                        Error::malformed("--order file needs --order-file")
                    })?;
                    let raw = std::fs::read_to_string(path)?;
                    let value: serde_json::Value = serde_json::from_str(&raw)?;
                    let list = value
                        .as_array()
                        .ok_or_else(|| Error::malformed("order file must hold an array of patterns"))?
                        .iter()
                        .map(GTPattern::from_json)
                        .collect::<Result<Vec<_>>>()?;
                    VertexOrder::Explicit(list)
                }
                other => return Err(Error::malformed(format!("unknown order {other:?}"))),
            };
            let simplices = pulling_triangulation(&spec, &order)?;
            let unimodular = simplices
                .iter()
                .all(|s| s.normalized_volume == num::BigInt::from(1));
            let total: num::BigInt = simplices.iter().map(|s| s.normalized_volume.clone()).sum();
            emit(
                &json,
                &json!({
                    "schema_version": crate::report::SCHEMA_VERSION,
                    "num_simplices": simplices.len(),
                    "normalized_volume": total.to_string(),
                    "all_unimodular": unimodular,
                    "simplices": simplices.iter().map(|s| json!({
                        "normalized_volume": s.normalized_volume.to_string(),
                        "vertices": s.vertices.iter().map(GTPattern::to_json).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }),
            )?;
            Ok(0)
        }
        Command::Poset {
            shape,
            max_k,
            permutations,
            threads,
            dot,
            json,
        } => {
            let shape = resolve_shape(&shape)?;
            let threads = threads
                .or_else(|| {
                    std::env::var("GTPOLY_THREADS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let poset = build_poset(
                &shape.lambda,
                &shape.mu,
                &PosetOptions {
                    max_k_for_idp: max_k,
                    permutations,
                    threads,
                },
            )?;
            if let Some(target) = &dot {
                write_output(target, &poset.to_dot())?;
            }
            if json.is_some() || dot.is_none() {
                emit(&json, &serde_json::to_value(&poset)?)?;
            }
            Ok(0)
        }
        Command::Decompose {
            mode,
            input,
            k,
            json,
        } => {
            let raw = std::fs::read_to_string(&input)?;
            let value: serde_json::Value = serde_json::from_str(&raw)?;
            let out = match mode.as_str() {
                "hook" | "reverse-hook" => {
                    let t = SkewTableau::from_json(&value)?;
                    let (peeled, rest) = if mode == "hook" {
                        decompose::hook_decompose(&t, k)?
                    } else {
                        decompose::reverse_hook_decompose(&t, k)?
                    };
                    json!({
                        "schema_version": crate::report::SCHEMA_VERSION,
                        "components": [peeled.to_json(), rest.to_json()],
                    })
                }
                "columns" => {
                    let t = SkewTableau::from_json(&value)?;
                    let parts = decompose::column_split(&t, k)?;
                    json!({
                        "schema_version": crate::report::SCHEMA_VERSION,
                        "components": parts.iter().map(SkewTableau::to_json).collect::<Vec<_>>(),
                    })
                }
                "contingency" => {
                    let p = GTPattern::from_json(&value)?;
                    let m = decompose::to_contingency(&p)?;
                    json!({
                        "schema_version": crate::report::SCHEMA_VERSION,
                        "matrix": m.entries,
                        "row_sums": m.row_sums(),
                        "col_sums": m.col_sums(),
                    })
                }
                other => return Err(Error::malformed(format!("unknown mode {other:?}"))),
            };
            emit(&json, &out)?;
            Ok(0)
        }
        Command::Repro => {
            let outcomes = crate::repro::run_all();
            let mut failed = 0;
            for outcome in &outcomes {
                match &outcome.result {
                    Ok(()) => println!("fixture {:<22} ok", outcome.name),
                    Err(e) => {
                        failed += 1;
                        println!("fixture {:<22} MISMATCH: {e}", outcome.name);
                    }
                }
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn resolve_shape(args: &ShapeArgs) -> Result<SkewShape> {
    let mut lambda: Option<Vec<u64>> = None;
    let mut mu: Option<Vec<u64>> = None;
    if let Some(path) = &args.shape {
        let raw = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&raw)?;
        let get = |k: &str| -> Result<Option<Vec<u64>>> {
            match value.get(k) {
                None => Ok(None),
                Some(v) => Ok(Some(serde_json::from_value(v.clone())?)),
            }
        };
        lambda = get("lambda")?;
        mu = get("mu")?;
    }
    // inline wins on conflict
    if let Some(inline) = &args.lambda {
        lambda = Some(parse_comma_list(inline)?);
    }
    if let Some(inline) = &args.mu {
        mu = Some(parse_comma_list(inline)?);
    }
    let lambda = lambda.ok_or_else(|| Error::malformed("no lambda given (use --lambda or --shape)"))?;
    let shape = SkewShape::new(
        Partition::new(lambda).map_err(|e| Error::malformed(e.to_string()))?,
        Partition::new(mu.unwrap_or_default()).map_err(|e| Error::malformed(e.to_string()))?,
    )?;
    Ok(shape)
}

fn resolve_polytope(args: &PolytopeArgs) -> Result<PolytopeSpec> {
    let shape = resolve_shape(&args.shape)?;
    match (&args.weight, args.rows) {
        (Some(w), _) => PolytopeSpec::weighted(
            shape,
            Composition::new(parse_comma_list(w)?),
            args.k,
        ),
        (None, Some(rows)) => PolytopeSpec::weightless(shape, rows, args.k),
        (None, None) => Err(Error::malformed(
            "give --weight for the weighted polytope or --rows for the weightless one",
        )),
    }
}

fn read_pattern(path: &PathBuf) -> Result<GTPattern> {
    let raw = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&raw)?;
    GTPattern::from_json(&value)
}

fn emit(target: &Option<String>, value: &serde_json::Value) -> Result<()> {
    let text = format!("{:#}", value);
    match target.as_deref() {
        None | Some("-") => {
            println!("{text}");
            Ok(())
        }
        Some(path) => write_output(path, &format!("{text}\n")),
    }
}

fn write_output(target: &str, text: &str) -> Result<()> {
    if target == "-" {
        print!("{text}");
        std::io::stdout().flush()?;
        Ok(())
    } else {
        std::fs::write(target, text)?;
        Ok(())
    }
}
