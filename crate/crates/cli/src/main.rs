mod commands;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "qga",
    version,
    about = "Graded quadratic monomial and gentle algebras"
)]
struct Cli {
    /// Emit canonical JSON documents instead of text reports.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for batches of input files.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Default truncation bound for infinite objects.
    #[arg(long, global = true, env = "QGA_MAX_LEN", default_value_t = 64)]
    max_len: usize,

    /// Refuse to truncate: infinite objects are an error (exit 2).
    #[arg(long, global = true)]
    unbounded: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Inputs {
    /// Algebra documents; `-` reads standard input.
    #[arg(required = true)]
    files: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Check the gentle conditions.
    Validate(Inputs),
    /// Quadratic dual A^!.
    Dual(Inputs),
    /// Idempotent cut A_e, removing the listed vertices.
    Cut {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "V1,V2")]
        remove: String,
    },
    /// Corner algebra eAe, keeping the listed vertices.
    Corner {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "V1,V2")]
        keep: String,
        /// Compute as the dual of the cut of the dual.
        #[arg(long)]
        via_dual: bool,
    },
    /// Partial cofibrant dg resolution A_J.
    Resolve {
        #[command(flatten)]
        inputs: Inputs,
        /// Relations to resolve, e.g. `α.β,β.δ`; all relations by default.
        #[arg(long = "J", value_name = "RELATIONS")]
        j: Option<String>,
    },
    /// Check d'² = 0, the projection to A, and the contracting homotopy.
    CheckResolution {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long = "J", value_name = "RELATIONS")]
        j: Option<String>,
        /// Letter-length bound for the homotopy check.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Surface invariants.
    Invariants(Inputs),
    /// Ribbon graph of the surface.
    Surface {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_parser = ["dot"])]
        emit: Option<String>,
    },
    /// Graded dimensions of Hom(S_i, S_j[l]).
    Ext {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, allow_hyphen_values = true)]
        min_shift: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        max_shift: Option<i64>,
    },
    /// Is eA pre-silting?
    Presilting {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "V1,V2")]
        keep: String,
    },
    /// Do the simples at the listed vertices form a pre-simple-minded collection?
    Presmc {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "V1,V2")]
        keep: String,
    },
    /// Exceptional sequences and silting objects.
    Classify(Inputs),
    /// The triple (A_e, A, eAe) with smooth/proper flags.
    Recollement {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "V1,V2")]
        remove: String,
    },
    /// Graded isomorphism between two algebras.
    Iso { left: String, right: String },
}

/// Global settings every command sees.
struct Settings {
    json: bool,
    bound: Option<usize>,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        json: cli.json,
        bound: (!cli.unbounded).then_some(cli.max_len),
    };

    let outcome = match &cli.command {
        Command::Iso { left, right } => match (read_input(left), read_input(right)) {
            (Ok(l), Ok(r)) => commands::iso(&settings, &l, &r),
            (Err(e), _) | (_, Err(e)) => Outcome::io_error(e),
        },
        cmd => {
            let files = inputs_of(cmd);
            let run = |path: &String| match read_input(path) {
                Ok(text) => commands::run(cmd, &settings, &text),
                Err(e) => Outcome::io_error(e),
            };
            let results: Vec<Outcome> = if cli.jobs > 1 && files.len() > 1 {
                match rayon::ThreadPoolBuilder::new()
                    .num_threads(cli.jobs)
                    .build()
                {
                    Ok(pool) => pool.install(|| files.par_iter().map(run).collect()),
                    Err(_) => files.iter().map(run).collect(),
                }
            } else {
                files.iter().map(run).collect()
            };
            if results.len() == 1 {
                results.into_iter().next().expect("one result")
            } else {
                merge_batch(&settings, files, results)
            }
        }
    };

    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.stdout.as_bytes());
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}

fn inputs_of(cmd: &Command) -> &[String] {
    match cmd {
        Command::Validate(i) | Command::Dual(i) | Command::Invariants(i) | Command::Classify(i) => {
            &i.files
        }
        Command::Cut { inputs, .. }
        | Command::Corner { inputs, .. }
        | Command::Resolve { inputs, .. }
        | Command::CheckResolution { inputs, .. }
        | Command::Surface { inputs, .. }
        | Command::Ext { inputs, .. }
        | Command::Presilting { inputs, .. }
        | Command::Presmc { inputs, .. }
        | Command::Recollement { inputs, .. } => &inputs.files,
        Command::Iso { .. } => &[],
    }
}

/// Several inputs: sections in input order; the exit code is the worst one.
fn merge_batch(settings: &Settings, files: &[String], results: Vec<Outcome>) -> Outcome {
    let code = results.iter().map(|r| r.code).max().unwrap_or(0);
    let mut stderr = String::new();
    let stdout = if settings.json {
        let items: Vec<Value> = files
            .iter()
            .zip(&results)
            .map(|(f, r)| {
                let output = serde_json::from_str::<Value>(&r.stdout).unwrap_or(Value::Null);
                serde_json::json!({"input": f, "exit": r.code, "output": output})
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(items)).expect("json");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for (f, r) in files.iter().zip(&results) {
            s.push_str(&format!("== {f} ==\n{}", r.stdout));
        }
        s
    };
    for (f, r) in files.iter().zip(&results) {
        if !r.stderr.is_empty() {
            stderr.push_str(&format!("{f}: {}", r.stderr));
        }
    }
    Outcome {
        stdout,
        stderr,
        code,
    }
}
