//! `spinor-kummer`: command-line front end for the spinor Kummer library.
//!
//! Every subcommand parses its inputs, calls the library, and prints a JSON
//! document (or a plain table with `--table`).  Exit codes: 0 success, 2
//! malformed input, 3 violated mathematical precondition, 4 internal failure
//! (including a failing `verify` run).

mod commands;
mod job;
mod parse;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use spinor_kummer::{Error, ErrorKind};

/// Exact Kummer embeddings, duplication and heights for odd hyperelliptic
/// Jacobians.
#[derive(Debug, Parser)]
#[command(name = "spinor-kummer", version)]
pub struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct OutputArgs {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<std::path::PathBuf>,
}

/// A curve and one divisor on it.
#[derive(Debug, Args, Clone)]
pub struct CurvePoint {
    /// Curve: JSON or shorthand such as "x^5+3x+1 over Q".
    #[arg(long)]
    pub curve: String,
    /// Divisor: JSON {"u","v","r"}, a point "(a, b)", or "0".
    #[arg(long)]
    pub point: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kummer coordinates Ψ(P) of a divisor class.
    Embed(CurvePoint),
    /// Sum of two divisor classes.
    Add {
        /// Curve specification.
        #[arg(long)]
        curve: String,
        /// The two summands (give the flag twice).
        #[arg(long, required = true)]
        point: Vec<String>,
    },
    /// Double of a divisor class.
    Double(CurvePoint),
    /// Multiple [k]P of a divisor class.
    Mul {
        #[command(flatten)]
        target: CurvePoint,
        /// The multiplier (may be negative).
        #[arg(long, short = 'k', allow_negative_numbers = true)]
        k: i64,
    },
    /// The duplication quartics δ_1, ..., δ_{2^g}.
    DupPolys {
        /// Curve specification (over F_p, or split over Q).
        #[arg(long)]
        curve: String,
        /// Root labeling over F_p: label i+1 is Frobenius-orbit position labeling[i].
        #[arg(long, value_delimiter = ',')]
        labeling: Option<Vec<usize>>,
    },
    /// Heights of a rational divisor class.
    Heights {
        #[command(flatten)]
        target: CurvePoint,
        /// Number of doublings for the canonical height (and terms of μ_v).
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Places for local terms: comma-separated primes and/or "inf", or "all-bad".
        #[arg(long)]
        places: Option<String>,
    },
    /// Whether projective coordinates lie on the Kummer and lift to J(k).
    Membership {
        /// Curve specification.
        #[arg(long)]
        curve: String,
        /// Coordinates: JSON array or "[a:b:...]".
        #[arg(long)]
        coords: String,
    },
    /// Every point of J(F_p) with its Kummer image.
    Enumerate {
        /// Curve specification over a prime field.
        #[arg(long)]
        curve: String,
    },
    /// The quartic equation of the genus-two Kummer surface.
    KummerEq {
        /// Curve specification of genus two.
        #[arg(long)]
        curve: String,
    },
    /// Run the seeded property suite over a random curve.
    Verify {
        /// Seed for curve and sample selection.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Genus.
        #[arg(long, default_value_t = 2)]
        g: usize,
        /// Odd prime.
        #[arg(long, default_value_t = 13)]
        p: u64,
        /// Samples per check.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Worker threads (default: SPINOR_KUMMER_THREADS or available cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a JSON job specification (file path, or "-" for standard input).
    Job {
        /// Path of the job file.
        spec: String,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e.kind() {
            ErrorKind::Schema => (2, "schema"),
            ErrorKind::Precondition => (3, "precondition"),
            ErrorKind::Internal => (4, "internal"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl Failure {
    fn schema(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "schema", message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { code: 4, kind: "io", message: message.into() }
    }
}

/// Result of a subcommand: the document and whether it reports success.
pub struct Outcome {
    pub doc: Value,
    pub ok: bool,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let outcome = match cli.command {
        Command::Job { spec } => {
            let text = if spec == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::io(e.to_string()))?
            } else {
                std::fs::read_to_string(&spec).map_err(|e| Failure::io(format!("{spec}: {e}")))?
            };
            let (argv, output) = job::job_to_argv(&text)?;
            let inner = Cli::try_parse_from(argv).map_err(|e| Failure::schema(e.to_string().trim().to_string()))?;
            if matches!(inner.command, Command::Job { .. }) {
                return Err(Failure::schema("a job may not run another job"));
            }
            let mut out = inner.output.clone();
            out.output = out.output.or(output);
            out.table |= cli.output.table;
            return emit(&out, commands::dispatch(inner.command)?);
        }
        command => commands::dispatch(command)?,
    };
    emit(&cli.output, outcome)
}

fn emit(args: &OutputArgs, outcome: Outcome) -> Result<u8, Failure> {
    let mut text = if args.table {
        render::table(&outcome.doc)
    } else {
        serde_json::to_string_pretty(&outcome.doc).expect("JSON values serialize")
    };
    text.push('\n');
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(if outcome.ok { 0 } else { 4 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let diag = json!({"error": {"kind": "usage", "message": e.to_string().trim()}});
            eprintln!("{diag}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let diag = json!({"error": {"kind": f.kind, "message": f.message}});
            eprintln!("{diag}");
            ExitCode::from(f.code)
        }
    }
}
