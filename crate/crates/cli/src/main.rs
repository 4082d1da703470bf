use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kummer_core::classify::{classify, parse_ratfunc, parse_ratfunc_in, render_report, verify_identities, Format};
use kummer_core::Error;
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "kummer", version, about = "Classify the Kummer groupoid of S(τ) = R(λ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one rational function R.
    Classify {
        /// R as an expression in one variable, e.g. "-4/x^2".
        #[arg(long = "R", value_name = "EXPR", allow_hyphen_values = true)]
        r: String,
        /// Variable name; defaults to the first identifier in the expression.
        #[arg(long)]
        var: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify one expression per input line, one JSON object per output line.
    Batch {
        /// Read expressions from this file instead of stdin.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the symbolic identity suite.
    Selfcheck {
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::MultipleVariables { .. } | Error::DivisionByZero => 1,
        Error::UnsupportedPoles { .. } | Error::AlgebraicExtensionRequired { .. } => 2,
        _ => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::MultipleVariables { .. } => "multiple_variables",
        Error::DivisionByZero => "division_by_zero",
        Error::UnsupportedPoles { .. } => "unsupported_poles",
        Error::AlgebraicExtensionRequired { .. } => "algebraic_extension_required",
        Error::Verification(_) => "verification",
        _ => "internal",
    }
}

fn emit(out: Option<&PathBuf>, stdout: &mut dyn Write, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn classify_line(line: &str) -> (String, u8) {
    let result = parse_ratfunc(line).and_then(|r| classify(&r));
    match result {
        Ok(rep) => (render_report(&rep, Format::Json), 0),
        Err(e) => {
            let code = exit_code(&e);
            let obj = json!({
                "input": line,
                "error": { "kind": error_kind(&e), "message": e.to_string(), "exit_code": code },
            });
            (obj.to_string(), code)
        }
    }
}

fn run(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> io::Result<u8> {
    match cli.command {
        Command::Classify { r, var, format, out } => {
            let parsed = match &var {
                Some(v) => parse_ratfunc_in(&r, v),
                None => parse_ratfunc(&r),
            };
            match parsed.and_then(|f| classify(&f)) {
                Ok(rep) => {
                    emit(out.as_ref(), stdout, &with_newline(render_report(&rep, format.into())))?;
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(exit_code(&e))
                }
            }
        }
        Command::Batch { input, out } => {
            let lines: Vec<String> = match input {
                Some(path) => fs::read_to_string(path)?.lines().map(str::to_owned).collect(),
                None => stdin.lines().collect::<io::Result<_>>()?,
            };
            let exprs: Vec<&str> = lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty()).collect();
            let results: Vec<(String, u8)> = exprs.par_iter().map(|l| classify_line(l)).collect();
            let mut text = String::new();
            for (line, _) in &results {
                text.push_str(line);
                text.push('\n');
            }
            emit(out.as_ref(), stdout, &text)?;
            Ok(results.iter().map(|(_, c)| *c).max().unwrap_or(0))
        }
        Command::Selfcheck { format } => {
            let suite = verify_identities();
            let text = match format {
                OutputFormat::Json => serde_json::to_string(&suite).expect("suite serializes"),
                OutputFormat::Text => suite
                    .results
                    .iter()
                    .map(|r| format!("[{}] {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(None, stdout, &with_newline(text))?;
            Ok(if suite.all_passed() { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let mut stdout = io::stdout().lock();
    match run(Cli::parse(), &mut io::stdin().lock(), &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
