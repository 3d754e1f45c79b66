//! Command-line front end for the hcfam library.
//!
//! Every subcommand prints one JSON report (or its text rendering) on
//! stdout. Exit status is 0 on success, 1 when the mathematics rejects the
//! input and 2 when the input cannot be read.

mod commands;
mod render;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcfam::wire;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hcfam", version, about = "Exact computations with families of (sl2, SO(2)) pairs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// g(n)
    G,
    /// l(n) inside g(0)
    L,
    /// s(2k) inside g(0)
    S,
}

const MAX_INDEX: i64 = 4096;

fn index_arg() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(0..=MAX_INDEX)
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a catalog family file.
    Catalog {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(value_parser = index_arg())]
        n: u32,
    },
    /// Check a family file against the pair axioms.
    Validate { file: PathBuf },
    /// Normal form of a rank-3 extension.
    Classify { file: PathBuf },
    /// Structure constants and invariants of the fiber at x = t.
    Fiber { file: PathBuf, t: String },
    /// Shape and generators of Hom(g(m), g(n)).
    Hom {
        #[arg(value_parser = index_arg())]
        m: u32,
        #[arg(value_parser = index_arg())]
        n: u32,
        #[arg(long)]
        localized: bool,
        /// Generators listed for |k| <= W when k is unbounded.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=64))]
        k_window: u32,
    },
    /// Compose m,n,c,k,s then n,p,c,k,s (first applied first).
    Compose {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        localized: bool,
    },
    /// Apply a morphism (file or m,n,c,k,s) to an element file.
    Apply {
        #[arg(allow_hyphen_values = true)]
        morphism: String,
        element: PathBuf,
        /// Treat an m,n,c,k,s morphism as a map of localizations.
        #[arg(long)]
        localized: bool,
    },
    /// Pull a family back along x ↦ mu(x).
    Pullback {
        file: PathBuf,
        /// "x^k", a scalar, or a JSON array of coefficients.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Normal form of the Casimir element, optionally probing the center.
    Casimir {
        #[arg(value_parser = index_arg())]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4))]
        probe_pbw: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=32))]
        probe_coeff: Option<u32>,
    },
    /// Extensions over the projective line.
    P1 {
        #[command(subcommand)]
        command: P1Command,
    },
    #[command(name = "p1-classify", hide = true)]
    P1Classify(P1Args),
    #[command(name = "p1-sections", hide = true)]
    P1Sections(P1SectionArgs),
}

#[derive(Subcommand, Debug)]
pub enum P1Command {
    /// Splitting type and number of global sections.
    Classify(P1Args),
    /// Basis of global sections as chart pairs.
    Sections(P1SectionArgs),
}

#[derive(Args, Debug)]
pub struct P1Args {
    #[arg(value_parser = clap::value_parser!(u32).range(0..=64))]
    pub m: u32,
    #[arg(value_parser = clap::value_parser!(u32).range(0..=64))]
    pub n: u32,
    #[arg(allow_hyphen_values = true, value_parser = clap::value_parser!(i64).range(-64..=64))]
    pub k: i64,
}

#[derive(Args, Debug)]
pub struct P1SectionArgs {
    #[command(flatten)]
    pub triple: P1Args,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=512))]
    pub max_degree: Option<u32>,
}

/// Why a command failed, and with which exit status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the input was read but is mathematically rejected.
    Domain(hcfam::Error),
    /// Exit 2: the input could not be read or parsed.
    Input(Value),
}

impl From<hcfam::Error> for Failure {
    fn from(e: hcfam::Error) -> Self {
        if wire::is_input_error(&e) {
            Failure::Input(wire::error_to_json(&e))
        } else {
            Failure::Domain(e)
        }
    }
}

impl Failure {
    fn report(&self) -> (Value, u8) {
        match self {
            Failure::Domain(e) => (wire::error_to_json(e), 1),
            Failure::Input(v) => (v.clone(), 2),
        }
    }
}

/// Outcome of one invocation: exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn render(value: &Value, format: Format, color: bool) -> String {
    match format {
        Format::Json => wire::to_canonical_string(value),
        Format::Text => render::text(value, color),
    }
}

/// Runs one command line (including the program name) without touching the
/// process's own streams. Only `--out` writes files.
pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Response { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let report = json!({ "error": "UsageError", "message": e.kind().to_string() });
            return Response {
                code: 2,
                stdout: wire::to_canonical_string(&report),
                stderr: e.to_string(),
            };
        }
    };
    let color = cli.format == Format::Text && render::color_enabled();
    let (value, code) = match commands::run(&cli.command) {
        Ok(value) => (value, 0),
        Err(failure) => failure.report(),
    };
    if code == 0 {
        if let Some(path) = &cli.out {
            return match fs::write(path, render(&value, cli.format, false)) {
                Ok(()) => Response { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => {
                    let report = json!({ "error": "IoError", "message": format!("{}: {e}", path.display()) });
                    Response { code: 2, stdout: render(&report, cli.format, color), stderr: String::new() }
                }
            };
        }
    }
    Response { code, stdout: render(&value, cli.format, color), stderr: String::new() }
}
