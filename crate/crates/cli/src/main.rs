//! `mrlift root-datum --type G2 --isogeny sc`
//! `mrlift lift --input rep.json [--input other.json] [--precision k] [--seed s] [--z 1,6]`
//!
//! Exit codes: 0 all checks pass, 1 invalid input, 2 a hypothesis of the
//! lifting theorem fails, 3 internal error. Reports go to stdout, or to
//! `$MRLIFT_REPORT_DIR/<name>.json` when that variable is set.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use input::GroupRepInput;
use report::{ErrorPayload, ReportEnvelope, TOOL};

pub const REPORT_DIR_VAR: &str = "MRLIFT_REPORT_DIR";

#[derive(Parser)]
#[command(name = "mrlift", version, about = "Root datum invariants and tame Galois lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primes, Weyl order, Bala-Carter labels and the effective bound on p.
    RootDatum(RootDatumArgs),
    /// Lift a residual representation and verify the result.
    Lift(LiftArgs),
}

#[derive(Args)]
struct Output {
    /// JSON output (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Human-readable output; large matrices are elided.
    #[arg(long)]
    text: bool,
    /// Record the wall-clock time in the report (breaks byte determinism).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct RootDatumArgs {
    /// e.g. "G2", "A3xA1+T2", "T3", "GLn(5)".
    #[arg(long = "type")]
    type_string: String,
    /// sc, ad, or preset (for GLn(m)).
    #[arg(long, default_value = "sc")]
    isogeny: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    /// Work modulo p^k; defaults to the input's k_default, then 3.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One integer per isotypic block, each 1 mod p, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Option<Vec<i64>>,
    #[command(flatten)]
    output: Output,
}

struct Rendered {
    name: String,
    body: String,
    code: i32,
}

fn emit(outputs: Vec<Rendered>) -> i32 {
    let dir = std::env::var_os(REPORT_DIR_VAR).map(PathBuf::from);
    let mut worst = 0;
    for r in outputs {
        worst = worst.max(r.code);
        match &dir {
            Some(d) => {
                let path = d.join(format!("{}.json", r.name));
                if let Err(e) = std::fs::create_dir_all(d).and_then(|_| std::fs::write(&path, &r.body)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    worst = worst.max(3);
                } else {
                    println!("{}", path.display());
                }
            }
            None => print!("{}", r.body),
        }
    }
    worst
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn root_datum(args: &RootDatumArgs) -> Rendered {
    let start = Instant::now();
    let name = format!("root-datum-{}-{}", sanitize(&args.type_string), sanitize(&args.isogeny));
    let input = json!({ "type": args.type_string, "isogeny": args.isogeny });
    let timing = |t: bool| t.then(|| start.elapsed().as_millis());
    match report::root_datum_payload(&args.type_string, &args.isogeny) {
        Ok(payload) => {
            let body = if args.output.text {
                report::root_datum_text(&payload)
            } else {
                let env = ReportEnvelope {
                    tool: TOOL,
                    version: env!("CARGO_PKG_VERSION"),
                    command: "root-datum",
                    input,
                    seed: None,
                    timing_ms: timing(args.output.timing),
                    exit_code: 0,
                    payload,
                };
                env.to_json()
            };
            Rendered { name, body, code: 0 }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let env = ReportEnvelope {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                command: "root-datum",
                input,
                seed: None,
                timing_ms: None,
                exit_code: 1,
                payload: json!({ "error": ErrorPayload { kind: "input", hypothesis: None, message: e.to_string() } }),
            };
            Rendered {
                name,
                body: if args.output.text { String::new() } else { env.to_json() },
                code: 1,
            }
        }
    }
}

fn lift_one(path: &Path, args: &LiftArgs) -> Rendered {
    let start = Instant::now();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into());
    let text = std::fs::read_to_string(path);
    let parsed = text
        .as_ref()
        .map_err(|e| format!("cannot read {}: {e}", path.display()))
        .and_then(|t| GroupRepInput::parse(t).map_err(|e| format!("schema violation: {e}")));
    let (echo, k, (payload, code)) = match &parsed {
        Ok(inp) => {
            let k = args.precision.unwrap_or_else(|| inp.precision());
            let echo = serde_json::to_value(inp).expect("inputs serialise");
            (
                echo,
                Some(k),
                report::lift_payload(inp, k, args.seed, args.z.as_deref()),
            )
        }
        Err(msg) => (
            serde_json::Value::Null,
            args.precision,
            report::schema_error(msg.clone()),
        ),
    };
    if let Some(e) = &payload.error {
        eprintln!("error: {name}: {}", e.message);
    }
    let body = if args.output.text {
        report::lift_text(&name, &payload)
    } else {
        let env = ReportEnvelope {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: "lift",
            input: json!({ "name": name, "precision": k, "z": args.z, "rep": echo }),
            seed: Some(args.seed),
            timing_ms: args.output.timing.then(|| start.elapsed().as_millis()),
            exit_code: code,
            payload,
        };
        env.to_json()
    };
    Rendered { name, body, code }
}

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors, which means something else here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match &cli.command {
        Command::RootDatum(args) => emit(vec![root_datum(args)]),
        Command::Lift(args) => {
            let outputs: Vec<Rendered> = args.input.par_iter().map(|p| lift_one(p, args)).collect();
            emit(outputs)
        }
    };
    ExitCode::from(code as u8)
}
