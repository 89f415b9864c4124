//! Command-line front end for the cgv checks.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cgv_core::suites::{eval_expr, run_suite, RunConfig, SUITES};
use cgv_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "cgv",
    version,
    about = "Exact checks for the tricanonical cubics and the quotient-genus argument"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite: sigma, cubics, base-locus, quadric-independence,
    /// tangent, divisors, genus, pencil or all.
    Check {
        suite: String,
        /// Value of the parameter m, as an expression in r.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random points in the tangent rank survey.
        #[arg(long, default_value_t = 100)]
        survey: usize,
        /// Search bound for the pencil witness scan.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an expression in X, Y, Z, T, m, r and print it canonically.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("usage: cgv check <{}|all> [--m <expr>] [--seed <u64>] [--survey <n>] [--bound <n>] [--format text|json] [--out <path>]", SUITES.join("|"));
    eprintln!("       cgv eval <expr>");
    ExitCode::from(2)
}

fn diagnostic(text: &str, e: &Error) -> String {
    match e {
        Error::Syntax { offset, .. } | Error::UnknownIdentifier { offset, .. } => {
            format!("{e}\n  {text}\n  {}^", " ".repeat(*offset))
        }
        _ => e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval { expr } => match eval_expr(&expr) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}", diagnostic(&expr, &e));
                ExitCode::from(2)
            }
        },
        Command::Check {
            suite,
            m,
            seed,
            survey,
            bound,
            format,
            out,
        } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return usage_error(&format!("unknown suite '{suite}'"));
            }
            let cfg = RunConfig {
                m: m.clone(),
                seed,
                survey,
                bound,
                timings: std::env::var_os("CGV_TIMINGS").is_some(),
            };
            if let Err(e) = cfg.validate() {
                let msg = match &m {
                    Some(text) => diagnostic(text, &e),
                    None => e.to_string(),
                };
                return usage_error(&msg);
            }
            let report = match run_suite(&suite, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("internal error: {e}");
                    return ExitCode::from(1);
                }
            };
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if report.error_count() > 0 {
                eprintln!("{} check(s) failed with internal errors", report.error_count());
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
