//! The `dss` command line.
//!
//! Exit codes: 0 on success, 1 when input produced error diagnostics, 2 for
//! usage errors and unreadable files. Diagnostics go to stderr as
//! `<line>:<col>: <severity> <code>: <message>`.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use crate::model::Diagnostic;
use crate::prompt::{PromptBundle, PromptLabels, GRAMMAR};
use crate::tokens::{compare, Heuristic};
use crate::{emit, from_full_spec_text, parse, parse_with_diagnostics, to_full_spec, to_json_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dss", version, about = "Visualization shorthand toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse shorthand and report diagnostics.
    Parse {
        /// Input file, or `-` for stdin.
        input: String,
    },
    /// Convert shorthand to a full-spec JSON document.
    ToJson { input: String },
    /// Convert a full-spec JSON document to canonical shorthand.
    FromJson { input: String },
    /// Check that shorthand reaches a fixed point under parse and emit.
    Roundtrip { input: String },
    /// Compare token and character counts of shorthand and full spec.
    Stats {
        #[arg(long)]
        shorthand: String,
        #[arg(long)]
        full: String,
    },
    /// Print the bundled grammar.
    Grammar,
    /// Render an LLM prompt from the grammar, a field extract and a request.
    Prompt {
        /// File holding the dataset field extract, or `-` for stdin.
        #[arg(long)]
        schema: String,
        #[arg(long)]
        query: String,
        #[arg(long, default_value = "GRAMMAR:")]
        grammar_label: String,
        #[arg(long, default_value = "DATASET FIELDS:")]
        schema_label: String,
        #[arg(long, default_value = "REQUEST:")]
        request_label: String,
    },
}

/// Streams a command runs against; the binary passes the process streams.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

struct Failure(i32);

type Outcome = Result<(), Failure>;

fn read_input(path: &str, io: &mut Io<'_>) -> Result<String, Failure> {
    let result = if path == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    result.map_err(|e| {
        let _ = writeln!(io.stderr, "error: cannot read {path}: {e}");
        Failure(EXIT_USAGE)
    })
}

fn report(io: &mut Io<'_>, diagnostics: &[Diagnostic]) {
    for d in diagnostics {
        let _ = writeln!(io.stderr, "{d}");
    }
}

fn write_out(io: &mut Io<'_>, text: &str) -> Outcome {
    io.stdout.write_all(text.as_bytes()).map_err(|e| {
        let _ = writeln!(io.stderr, "error: cannot write output: {e}");
        Failure(EXIT_USAGE)
    })
}

/// Runs one command. `args` excludes the program name.
pub fn run<S: AsRef<str>>(args: &[S], io: &mut Io<'_>) -> i32 {
    let argv = std::iter::once("dss").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = io.stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = io.stdout.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, io) {
        Ok(()) => EXIT_OK,
        Err(Failure(code)) => code,
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Outcome {
    match command {
        Command::Parse { input } => {
            let text = read_input(&input, io)?;
            let out = parse_with_diagnostics(&text);
            report(io, &out.diagnostics);
            out.spec.map(drop).ok_or(Failure(EXIT_DIAGNOSTICS))
        }
        Command::ToJson { input } => {
            let text = read_input(&input, io)?;
            let out = parse_with_diagnostics(&text);
            report(io, &out.diagnostics);
            let spec = out.spec.ok_or(Failure(EXIT_DIAGNOSTICS))?;
            let encoded = to_full_spec(&spec).map_err(|e| {
                let _ = writeln!(io.stderr, "error: {e}");
                Failure(EXIT_DIAGNOSTICS)
            })?;
            report(io, &encoded.warnings);
            write_out(io, &to_json_text(&encoded.document))
        }
        Command::FromJson { input } => {
            let text = read_input(&input, io)?;
            let decoded = from_full_spec_text(&text).map_err(|diags| {
                report(io, &diags);
                Failure(EXIT_DIAGNOSTICS)
            })?;
            report(io, &decoded.warnings);
            let shorthand = emit(&decoded.spec).map_err(|e| {
                let _ = writeln!(io.stderr, "error: {e}");
                Failure(EXIT_DIAGNOSTICS)
            })?;
            write_out(io, &shorthand)
        }
        Command::Roundtrip { input } => {
            let text = read_input(&input, io)?;
            let spec = parse(&text).map_err(|diags| {
                report(io, &diags);
                Failure(EXIT_DIAGNOSTICS)
            })?;
            let canonical = emit(&spec).map_err(|e| {
                let _ = writeln!(io.stderr, "error: {e}");
                Failure(EXIT_DIAGNOSTICS)
            })?;
            let fixed = match parse(&canonical) {
                Ok(again) => again == spec && emit(&again).as_deref() == Ok(canonical.as_str()),
                Err(_) => false,
            };
            if fixed {
                Ok(())
            } else {
                let _ = writeln!(
                    io.stderr,
                    "error: canonical form does not parse back to the same spec"
                );
                Err(Failure(EXIT_DIAGNOSTICS))
            }
        }
        Command::Stats { shorthand, full } => {
            let s = read_input(&shorthand, io)?;
            let f = read_input(&full, io)?;
            let stats = compare(&s, &f, &Heuristic);
            write_out(io, &format!("{}\n", stats.to_record()))
        }
        Command::Grammar => write_out(io, GRAMMAR),
        Command::Prompt {
            schema,
            query,
            grammar_label,
            schema_label,
            request_label,
        } => {
            let extract = read_input(&schema, io)?;
            let labels = PromptLabels {
                grammar: grammar_label,
                schema: schema_label,
                request: request_label,
            };
            write_out(io, &PromptBundle::new(extract, query).render(&labels))
        }
    }
}
