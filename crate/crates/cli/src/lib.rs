//! `toraut`: compute Demazure roots, fan automorphisms, product
//! decompositions and automorphism-group structure of complete toric
//! varieties given by fan documents.

pub mod document;
pub mod reports;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use toraut_core::structure::{aut_structure_report, decompose};
use toraut_core::{demazure_roots, product_fan, Error};

use document::{parse_fan, serialize_document, to_document, DocumentError, ParsedFan};
use reports::{AutosReport, CheckReport, DecomposeReport, RootsReport, StructureReport, ValidateReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "toraut", version, about = "Automorphisms of complete toric varieties from their fans")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan axioms.
    Validate { file: PathBuf },
    /// List Demazure roots with their distinguished rays.
    Roots { file: PathBuf },
    /// List the automorphisms of the fan.
    Autos { file: PathBuf },
    /// Split the fan into indecomposable factors.
    Decompose { file: PathBuf },
    /// Summarize the automorphism group.
    Report { file: PathBuf },
    /// Write the product of two or more fans as a new document.
    Product {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every certificate and report pass/fail for each.
    Check { file: PathBuf },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Failure {
        match e {
            DocumentError::Invalid(e) => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Math(e.to_string())
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<ParsedFan, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let parsed = parse_fan(&text).map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Math(m) => Failure::Math(format!("{}: {m}", path.display())),
    })?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {}: {w}", path.display());
    }
    Ok(parsed)
}

fn emit<T: Serialize + Display>(report: &T, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let text = if json {
        serde_json::to_string_pretty(report).expect("report serializes") + "\n"
    } else {
        report.to_string()
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            match parse_fan(&text) {
                Ok(parsed) => {
                    for w in &parsed.warnings {
                        let _ = writeln!(err, "warning: {}: {w}", file.display());
                    }
                    emit(&ValidateReport::valid(&parsed.fan), cli.json, out)?;
                    Ok(EXIT_OK)
                }
                Err(DocumentError::Invalid(Error::InvalidFan(report))) => {
                    emit(&ValidateReport::invalid(&report), cli.json, out)?;
                    Ok(EXIT_FAILURE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Roots { file } => {
            let fan = load(file, err)?.fan;
            emit(&RootsReport::new(&demazure_roots(&fan)?), cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Autos { file } => {
            let fan = load(file, err)?.fan;
            emit(&AutosReport::new(&fan)?, cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Decompose { file } => {
            let fan = load(file, err)?.fan;
            emit(&DecomposeReport::new(&decompose(&fan)?), cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Report { file } => {
            let fan = load(file, err)?.fan;
            emit(&StructureReport::new(&aut_structure_report(&fan)?), cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Product { files, output } => {
            let mut parsed = Vec::with_capacity(files.len());
            for f in files {
                parsed.push(load(f, err)?);
            }
            let fan = parsed[1..]
                .iter()
                .fold(parsed[0].fan.clone(), |acc, p| product_fan(&acc, &p.fan));
            let names: Option<Vec<String>> = parsed.iter().map(|p| p.document.name.clone()).collect();
            let doc = to_document(&fan, names.map(|n| n.join("x")));
            let text = serialize_document(&doc);
            match output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Usage(format!("write failed: {e}")))?,
            }
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let fan = load(file, err)?.fan;
            let report = CheckReport::new(&fan)?;
            emit(&report, cli.json, out)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Parse arguments and run one command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Math(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAILURE
        }
    }
}
