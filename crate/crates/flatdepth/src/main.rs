//! Command line driver: answers depth queries over JSON or CSV instances,
//! runs the brute-force oracle, re-verifies result files, and generates
//! deterministic test instances.

use clap::{Args, Parser, Subcommand};
use flatdepth::generate::{default_kind, generate, GenConfig, GenKind};
use flatdepth::io::{
    answer, answer_oracle, instance_to_json, parse_instance, parse_query, parse_result_json,
    result_file, result_to_json, verify_witness, InstanceFile, QuerySpec,
};
use serde_json::{Map, Value};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "flatdepth",
    version,
    about = "Exact crossing distance, regression depth, and Tukey depth in hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct IoArgs {
    /// Instance file, JSON or CSV point cloud; "-" or absent reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Where to write the result JSON; absent writes stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report strict_min as the headline distance.
    #[arg(long)]
    strict_headline: bool,
}

#[derive(Args, Default)]
struct QueryFlags {
    /// Line spec as inline JSON, e.g. '{"points": [[0,0,0],[1,1,1]]}'.
    #[arg(long)]
    line: Option<String>,
    /// Query point as inline JSON, e.g. '[1, "1/2"]'.
    #[arg(long)]
    at: Option<String>,
    /// First flat spec as inline JSON.
    #[arg(long)]
    flat_a: Option<String>,
    /// Second flat spec as inline JSON.
    #[arg(long)]
    flat_b: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Regression depth of a line fit in R³.
    DepthLine3 {
        #[command(flatten)]
        io: IoArgs,
        /// Line spec as inline JSON; overrides the instance's query.
        #[arg(long)]
        line: Option<String>,
    },
    /// Regression depth of a line fit in the plane.
    DepthLine2 {
        #[command(flatten)]
        io: IoArgs,
        /// Line spec as inline JSON; overrides the instance's query.
        #[arg(long)]
        line: Option<String>,
    },
    /// Tukey depth of a query point in the plane.
    Tukey2 {
        #[command(flatten)]
        io: IoArgs,
        /// Query point as inline JSON; overrides the instance's query.
        #[arg(long)]
        at: Option<String>,
    },
    /// Crossing distance between two flats in a hyperplane arrangement.
    Crossdist {
        #[command(flatten)]
        io: IoArgs,
        /// First flat spec as inline JSON; overrides the instance's query.
        #[arg(long)]
        flat_a: Option<String>,
        /// Second flat spec as inline JSON; overrides the instance's query.
        #[arg(long)]
        flat_b: Option<String>,
    },
    /// Answer any query with the exhaustive reference solver.
    Oracle {
        #[command(flatten)]
        io: IoArgs,
        /// Worker threads for the candidate scan.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        query: QueryFlags,
    },
    /// Recount a result file against its instance; exits 3 on mismatch.
    VerifyWitness {
        /// Instance file the result was computed from.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Result file to verify.
        #[arg(long)]
        result: PathBuf,
        #[command(flatten)]
        query: QueryFlags,
    },
    /// Emit a deterministic random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of data points or hyperplanes.
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Ambient dimension; inferred from --kind when omitted.
        #[arg(long)]
        dim: Option<usize>,
        /// Coordinates are uniform integers in [-coord-bound, coord-bound].
        #[arg(long, default_value_t = 1000)]
        coord_bound: i64,
        /// Query kind: depth-line3, depth-line2, tukey2, or crossdist.
        #[arg(long)]
        kind: Option<String>,
        /// Violate general position on purpose.
        #[arg(long)]
        degenerate: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

type Failure = (u8, String);

fn fail<T>(code: u8, msg: impl std::fmt::Display) -> Result<T, Failure> {
    Err((code, msg.to_string()))
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| (2, format!("{}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| (2, format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| (2, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Option<PathBuf>) -> Result<InstanceFile, Failure> {
    let text = read_input(path)?;
    parse_instance(&text).map_err(|e| (2, e.to_string()))
}

fn json_flag(text: &str, flag: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| (2, format!("--{flag}: malformed JSON: {e}")))
}

fn query_from_fields(
    inst: &InstanceFile,
    kind: &str,
    fields: Vec<(&str, Value)>,
) -> Result<QuerySpec, Failure> {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(kind));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    parse_query(&Value::Object(m), inst.dimension).map_err(|e| (2, e.to_string()))
}

fn embedded_query(inst: &InstanceFile, kind: &str) -> Result<QuerySpec, Failure> {
    match &inst.query {
        Some(q) if q.kind() == kind => Ok(q.clone()),
        Some(q) => fail(
            2,
            format!(
                "instance query has kind \"{}\"; this subcommand answers \"{kind}\"",
                q.kind()
            ),
        ),
        None => fail(
            2,
            format!("missing field \"query\": embed it in the instance or pass the {kind} flags"),
        ),
    }
}

fn line_query(
    inst: &InstanceFile,
    kind: &str,
    line: &Option<String>,
) -> Result<QuerySpec, Failure> {
    match line {
        Some(text) => query_from_fields(inst, kind, vec![("line", json_flag(text, "line")?)]),
        None => embedded_query(inst, kind),
    }
}

fn tukey_query(inst: &InstanceFile, at: &Option<String>) -> Result<QuerySpec, Failure> {
    match at {
        Some(text) => query_from_fields(inst, "tukey2", vec![("at", json_flag(text, "at")?)]),
        None => embedded_query(inst, "tukey2"),
    }
}

fn crossdist_query(
    inst: &InstanceFile,
    flat_a: &Option<String>,
    flat_b: &Option<String>,
) -> Result<QuerySpec, Failure> {
    match (flat_a, flat_b) {
        (Some(a), Some(b)) => query_from_fields(
            inst,
            "crossdist",
            vec![
                ("flat_a", json_flag(a, "flat-a")?),
                ("flat_b", json_flag(b, "flat-b")?),
            ],
        ),
        (None, None) => embedded_query(inst, "crossdist"),
        _ => fail(2, "--flat-a and --flat-b must be given together"),
    }
}

/// Oracle and verify-witness take any query kind; the flags pin it down,
/// otherwise the instance's own query is used.
fn any_query(inst: &InstanceFile, flags: &QueryFlags) -> Result<QuerySpec, Failure> {
    let line_kind = if inst.dimension == 3 {
        "depth-line3"
    } else {
        "depth-line2"
    };
    match (&flags.line, &flags.at, &flags.flat_a, &flags.flat_b) {
        (Some(l), None, None, None) => {
            query_from_fields(inst, line_kind, vec![("line", json_flag(l, "line")?)])
        }
        (None, Some(a), None, None) => {
            query_from_fields(inst, "tukey2", vec![("at", json_flag(a, "at")?)])
        }
        (None, None, Some(_), Some(_)) => crossdist_query(inst, &flags.flat_a, &flags.flat_b),
        (None, None, None, None) => inst.query.clone().ok_or_else(|| {
            (
                2u8,
                "missing field \"query\": embed it in the instance or pass query flags".to_string(),
            )
        }),
        _ => fail(
            2,
            "give exactly one query: --line, --at, or --flat-a with --flat-b",
        ),
    }
}

fn run_query(
    io: &IoArgs,
    jobs: Option<usize>,
    resolve: impl FnOnce(&InstanceFile) -> Result<QuerySpec, Failure>,
) -> Result<(), Failure> {
    let inst = load_instance(&io.input)?;
    let query = resolve(&inst)?;
    let t0 = Instant::now();
    let report = match jobs {
        None => answer(&inst, &query),
        Some(jobs) => answer_oracle(&inst, &query, jobs),
    }
    .map_err(|e| (e.exit_code() as u8, e.to_string()))?;
    let rf = result_file(&report, io.strict_headline, t0.elapsed().as_millis() as u64);
    write_output(&io.output, &result_to_json(&rf))
}

fn resolve_gen_shape(
    kind: &Option<String>,
    dim: Option<usize>,
) -> Result<(GenKind, usize), Failure> {
    let kind = match kind {
        Some(name) => match GenKind::from_name(name) {
            Some(k) => Some(k),
            None => return fail(2, format!("unknown --kind \"{name}\"")),
        },
        None => None,
    };
    let (kind, dim) = match (kind, dim) {
        (None, None) => (GenKind::DepthLine3, 3),
        (None, Some(d)) => (default_kind(d), d),
        (Some(k), None) => {
            let d = match k {
                GenKind::DepthLine3 | GenKind::CrossDist => 3,
                GenKind::DepthLine2 | GenKind::Tukey2 => 2,
            };
            (k, d)
        }
        (Some(k), Some(d)) => (k, d),
    };
    let ok = match kind {
        GenKind::DepthLine3 => dim == 3,
        GenKind::DepthLine2 | GenKind::Tukey2 => dim == 2,
        GenKind::CrossDist => dim >= 2,
    };
    if !ok {
        return fail(
            2,
            format!("--kind {} does not work with --dim {dim}", kind.name()),
        );
    }
    Ok((kind, dim))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::DepthLine3 { io, line } => {
            run_query(&io, None, |inst| line_query(inst, "depth-line3", &line))
        }
        Cmd::DepthLine2 { io, line } => {
            run_query(&io, None, |inst| line_query(inst, "depth-line2", &line))
        }
        Cmd::Tukey2 { io, at } => run_query(&io, None, |inst| tukey_query(inst, &at)),
        Cmd::Crossdist { io, flat_a, flat_b } => {
            run_query(&io, None, |inst| crossdist_query(inst, &flat_a, &flat_b))
        }
        Cmd::Oracle { io, jobs, query } => {
            run_query(&io, Some(jobs), |inst| any_query(inst, &query))
        }
        Cmd::VerifyWitness {
            input,
            result,
            query,
        } => {
            let inst = load_instance(&input)?;
            let text = fs::read_to_string(&result)
                .map_err(|e| (2u8, format!("{}: {e}", result.display())))?;
            let rf = parse_result_json(&text).map_err(|e| (2, e.to_string()))?;
            let q = any_query(&inst, &query)?;
            match verify_witness(&inst, &q, &rf) {
                Ok(()) => {
                    println!(
                        "verified: distance {} (strict {}, incident {})",
                        rf.distance, rf.strict_min, rf.incident_count
                    );
                    Ok(())
                }
                Err(m) => fail(3, format!("verification failed: {m}")),
            }
        }
        Cmd::Gen {
            seed,
            n,
            dim,
            coord_bound,
            kind,
            degenerate,
            output,
        } => {
            let (kind, dim) = resolve_gen_shape(&kind, dim)?;
            let inst = generate(&GenConfig {
                seed,
                n,
                dim,
                coord_bound,
                kind,
                degenerate,
            });
            write_output(&output, &instance_to_json(&inst))
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
