//! Command-line front end. [`run`] returns the exit code and the text to
//! print so that it can be driven from tests.

mod commands;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value as Json;

pub use verify::{check_criterion, run_suite, CheckResult, Suite, SuiteReport, COVERAGE};

#[derive(Parser, Debug)]
#[command(
    name = "extpow",
    version,
    about = "Exterior powers of matrix groups, computed exactly"
)]
struct Cli {
    /// Render results as aligned text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Ring: z, zmod:k, fp:p, poly or poly:VARS@BASE.
    #[arg(long, default_value = "z")]
    ring: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ∧^m of an n×n matrix read from a JSON file (`-` for stdin).
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
    },
    /// Decomposition of ∧^m t_{i,j}(ξ) into transvections of size C(n,m).
    Transvection {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value = "xi")]
        arg: String,
    },
    /// Classifies [t_{I,J}(ξ), ∧^m t_{i,j}(ζ)].
    Commutator {
        #[command(flatten)]
        common: Common,
        #[arg(long = "I")]
        row: String,
        #[arg(long = "J")]
        col: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value = "xi")]
        xi: String,
        #[arg(long, default_value = "zeta")]
        zeta: String,
    },
    /// Level ideal generated by hypotheses `I:J:ξ`.
    Level {
        #[command(flatten)]
        common: Common,
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Witness derivations and factorizations.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// The invariant form f_{n,m}.
    Form {
        #[command(flatten)]
        common: Common,
    },
    /// The Plücker quadric system.
    Pluecker {
        #[command(flatten)]
        common: Common,
    },
    /// Stabilizer membership of a C(n,m)×C(n,m) matrix.
    Stab {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "canonical")]
        system: SystemKind,
    },
    /// Congruence membership modulo the ideal (d).
    Congr {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
        #[arg(long = "mod")]
        modulus: i64,
    },
    /// Randomized and exhaustive self-verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessKind {
    /// t_{I,J}(ξ) ∈ H ⟹ t_{K,L}(±ξ) ∈ H at equal height.
    Equalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "xi")]
        xi: String,
    },
    /// From height k to height k+1.
    Raise {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "xi")]
        xi: String,
        #[arg(long, default_value = "1")]
        zeta: String,
        #[arg(long, default_value = "1")]
        zeta1: String,
        #[arg(long, value_enum, default_value = "row")]
        variant: VariantArg,
        /// Fresh indices F, comma separated.
        #[arg(long)]
        fresh: Option<String>,
        #[arg(long)]
        c: Option<usize>,
    },
    /// From a larger height to a smaller one.
    Lower {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "xi")]
        xi: String,
    },
    /// Factorization of z_{I,J}(ξ,ζ).
    Zfactor {
        #[command(flatten)]
        common: Common,
        #[arg(long = "I")]
        row: String,
        #[arg(long = "J")]
        col: String,
        #[arg(long, default_value = "xi")]
        xi: String,
        #[arg(long, default_value = "zeta")]
        zeta: String,
        /// Generator of the declared ideal containing ξ.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// A generator written as a single commutator of generators.
    Perfect {
        #[command(flatten)]
        common: Common,
        #[arg(long = "I")]
        row: Option<String>,
        #[arg(long = "J")]
        col: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value = "xi")]
        arg: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SystemKind {
    Canonical,
    Form,
    Partition,
    Pluecker,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Row,
    Column,
}

/// What a command produced: JSON, plus an optional text rendering that
/// replaces the generic one under `--pretty`.
pub(crate) struct Output {
    json: Json,
    text: Option<String>,
    /// Set when the command ran but reports failed checks.
    pub(crate) failed: bool,
}

impl Output {
    pub(crate) fn json(json: Json) -> Self {
        Output {
            json,
            text: None,
            failed: false,
        }
    }

    pub(crate) fn with_text(json: Json, text: String) -> Self {
        Output {
            json,
            text: Some(text),
            failed: false,
        }
    }
}

/// Aligned `key  value` lines for the top level of a JSON object.
fn render_text(v: &Json) -> String {
    let Json::Object(map) = v else {
        return v.to_string();
    };
    let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| {
            let val = match v {
                Json::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("{k:<width$}  {val}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses `argv` (including the program name) and executes the command.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match commands::dispatch(cli.command) {
        Ok(out) => {
            let text = if cli.pretty {
                out.text.unwrap_or_else(|| render_text(&out.json))
            } else {
                out.json.to_string()
            };
            (if out.failed { 1 } else { 0 }, text)
        }
        Err(e) => (1, format!("error: {e}")),
    }
}
