//! Command-line front end of `instanton-lab`. [`run`] parses an argument vector,
//! runs one verification and returns the exit code with the rendered report.

pub mod args;
mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

pub use args::Cli;
pub use report::{canonical_json, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    /// The report as written: canonical JSON, or CSV for `modescan --out csv`.
    pub rendered: Option<String>,
    pub output: Option<std::path::PathBuf>,
    /// Usage text, help or error messages.
    pub message: String,
    /// Whether `message` belongs on standard output (help, version).
    pub message_to_stdout: bool,
}

impl Outcome {
    fn message(code: i32, message: String, to_stdout: bool) -> Self {
        Outcome {
            code,
            report: None,
            rendered: None,
            output: None,
            message,
            message_to_stdout: to_stdout,
        }
    }
}

#[derive(Debug)]
pub(crate) enum Failure {
    /// Bad flags or parameters; exit 2 without a report.
    Usage(String),
    /// The computation itself failed; exit 1 with an error report.
    Compute(String),
}

impl From<instanton_lab::Error> for Failure {
    fn from(e: instanton_lab::Error) -> Self {
        use instanton_lab::Error as E;
        match e {
            E::InvalidInput(_) | E::OffLattice(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// What a command produced, before the envelope is added.
pub(crate) struct Body {
    pub results: Value,
    pub residuals: Value,
    pub verdict: String,
    pub passed: bool,
    /// CSV columns and rows, for commands with tabular output.
    pub table: Option<(Vec<&'static str>, Vec<Value>)>,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let code = if info { EXIT_OK } else { EXIT_USAGE };
            return Outcome::message(code, e.render().to_string(), info);
        }
    };
    let common = commands::common(&cli.command).clone();
    let name = commands::name(&cli.command);
    if common.out == args::OutputFormat::Csv && !commands::tabular(&cli.command) {
        return Outcome::message(
            EXIT_USAGE,
            format!("error: --out csv is only available for tabular output (modescan), not {name}\n"),
            false,
        );
    }
    let start = Instant::now();
    let (params, body) = match commands::dispatch(&cli.command) {
        Ok(p) => p,
        Err(Failure::Usage(msg)) => {
            return Outcome::message(EXIT_USAGE, format!("error: {msg}\n"), false);
        }
        Err(Failure::Compute(msg)) => {
            return Outcome::message(EXIT_FAILED, format!("error: {msg}\n"), false);
        }
    };
    let produced = match body {
        Ok(b) => b,
        Err(Failure::Usage(msg)) => {
            return Outcome::message(EXIT_USAGE, format!("error: {msg}\n"), false);
        }
        Err(Failure::Compute(msg)) => Body {
            results: serde_json::json!({ "error": msg }),
            residuals: Value::Null,
            verdict: "error".into(),
            passed: false,
            table: None,
        },
    };
    let report = Report {
        command: name.to_string(),
        params,
        results: produced.results,
        residuals: produced.residuals,
        verdict: produced.verdict,
        runtime_ms: common
            .record_runtime
            .then(|| start.elapsed().as_secs_f64() * 1e3),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let rendered = match (&common.out, &produced.table) {
        (args::OutputFormat::Csv, Some((cols, rows))) => match report::to_csv(cols, rows) {
            Ok(s) => s,
            Err(e) => return Outcome::message(EXIT_FAILED, format!("error: csv: {e}\n"), false),
        },
        _ => report.to_json(),
    };
    let code = if produced.passed { EXIT_OK } else { EXIT_FAILED };
    Outcome {
        code,
        message: format!("{name}: {}\n", report.verdict),
        report: Some(report),
        rendered: Some(rendered),
        output: common.output.clone(),
        message_to_stdout: false,
    }
}

/// Write an outcome to its destinations and return the process exit code.
pub fn emit(outcome: &Outcome, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(text) = &outcome.rendered {
        match &outcome.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
                let _ = stdout.write_all(outcome.message.as_bytes());
            }
            None => {
                let _ = stdout.write_all(text.as_bytes());
                let _ = stderr.write_all(outcome.message.as_bytes());
            }
        }
    } else if outcome.message_to_stdout {
        let _ = stdout.write_all(outcome.message.as_bytes());
    } else {
        let _ = stderr.write_all(outcome.message.as_bytes());
    }
    outcome.code
}
