//! Command-line front end.
//!
//! [`run`] takes the full argument vector and two output streams and returns
//! the process exit code: 0 on success, 1 on usage or domain errors, 2 when
//! `verify` finds a failing check.

mod cache;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::adjusted::atomic_second;
use crate::combo::{BasisLabel, Combination};
use crate::kostka::{atomic_to_standard, kostka_from_atomic, verify, VerifyReport};
use crate::lattice::{dominant_box, Weight};
use crate::precanonical::{atomic, defn_precanonical};

pub use cache::AtomicCache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Precanonical,
    Adjusted,
}

#[derive(Parser, Debug)]
#[command(name = "g2hecke", about = "Atomic decompositions and Kostka-Foulkes polynomials in affine type G2")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// JSON file of atomic expansions to reuse and extend.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Atomic expansion of the canonical basis element at (a,b).
    #[command(allow_negative_numbers = true)]
    Atomic {
        a: i64,
        b: i64,
        #[arg(long, value_enum, default_value_t = Method::Precanonical)]
        method: Method,
    },
    /// Kostka-Foulkes polynomial K_{(a,b),(c,d)}(q).
    #[command(allow_negative_numbers = true)]
    Kf { a: i64, b: i64, c: i64, d: i64 },
    /// Canonical basis element at (a,b) in the standard basis.
    #[command(allow_negative_numbers = true)]
    Standard { a: i64, b: i64 },
    /// Pre-canonical basis element of the given level in the canonical basis.
    #[command(allow_negative_numbers = true)]
    Expand {
        #[arg(long)]
        level: u8,
        a: i64,
        b: i64,
    },
    /// Run every consistency check on the dominant weights of a box.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_a: i64,
        #[arg(long, default_value_t = 8)]
        max_b: i64,
    },
}

enum Failure {
    Domain(String),
    Verify,
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify) => EXIT_VERIFY_FAILED,
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(|e| Failure::Domain(e.to_string()))
}

fn render_expansion(format: OutputFormat, lhs: BasisLabel, lam: Weight, c: &Combination) -> String {
    match format {
        OutputFormat::Text => render::expansion_text(lhs, lam, c),
        OutputFormat::Latex => render::expansion_latex(lhs, lam, c),
        OutputFormat::Json => render::expansion_json(lam, c),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let mut cache = match &cli.cache {
        Some(path) => Some(AtomicCache::load(path).map_err(Failure::Domain)?),
        None => None,
    };
    let mut atomic_of = |lam: Weight| -> crate::Result<Combination> {
        match cache.as_mut() {
            Some(c) => c.atomic(lam),
            None => atomic(lam),
        }
    };
    let format = cli.format;
    match cli.command {
        Command::Atomic { a, b, method } => {
            let lam = Weight::new(a, b);
            let c = match method {
                Method::Precanonical => atomic_of(lam)?,
                Method::Adjusted => atomic_second(lam)?,
            };
            emit(out, &render_expansion(format, BasisLabel::Canonical, lam, &c))?;
        }
        Command::Kf { a, b, c, d } => {
            let (lam, mu) = (Weight::new(a, b), Weight::new(c, d));
            mu.require_dominant()?;
            let k = kostka_from_atomic(&atomic_of(lam)?, mu)?;
            let s = match format {
                OutputFormat::Text => k.to_text(),
                OutputFormat::Latex => render::kostka_latex(lam, mu, &k),
                OutputFormat::Json => render::kostka_json(lam, mu, &k),
            };
            emit(out, &s)?;
        }
        Command::Standard { a, b } => {
            let lam = Weight::new(a, b);
            let c = atomic_of(lam)?.substitute(BasisLabel::Standard, atomic_to_standard)?;
            emit(out, &render_expansion(format, BasisLabel::Canonical, lam, &c))?;
        }
        Command::Expand { level, a, b } => {
            let lam = Weight::new(a, b);
            let c = defn_precanonical(level, lam)?;
            let lhs = BasisLabel::pre_canonical(level)?.normalized();
            emit(out, &render_expansion(format, lhs, lam, &c))?;
        }
        Command::Verify { max_a, max_b } => {
            if max_a < 0 || max_b < 0 {
                return Err(Failure::Domain(format!("verify bounds must be non-negative, got {max_a},{max_b}")));
            }
            let reports: Vec<VerifyReport> = dominant_box(max_a, max_b)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(verify)
                .collect::<crate::Result<_>>()?;
            let summary = VerifySummary::from_reports(&reports);
            let s = match format {
                OutputFormat::Json => serde_json::to_string(&summary).expect("summary serializes"),
                OutputFormat::Text | OutputFormat::Latex => summary.to_text(),
            };
            emit(out, &s)?;
            if !summary.failures.is_empty() {
                return Err(Failure::Verify);
            }
        }
    }
    if let Some(c) = &cache {
        c.save().map_err(Failure::Domain)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyFailure {
    weight: Weight,
    check: &'static str,
    message: String,
}

#[derive(Serialize)]
struct VerifySummary {
    weights: usize,
    checks: Vec<&'static str>,
    failures: Vec<VerifyFailure>,
}

impl VerifySummary {
    fn from_reports(reports: &[VerifyReport]) -> Self {
        let failures = reports
            .iter()
            .flat_map(|r| {
                r.checks.iter().filter_map(move |c| {
                    c.failure.as_ref().map(|m| VerifyFailure { weight: r.weight, check: c.name, message: m.clone() })
                })
            })
            .collect();
        VerifySummary {
            weights: reports.len(),
            checks: crate::kostka::CHECKS.iter().map(|(name, _)| *name).collect(),
            failures,
        }
    }

    fn to_text(&self) -> String {
        let mut lines: Vec<String> =
            self.failures.iter().map(|f| format!("FAIL {} {}: {}", f.weight, f.check, f.message)).collect();
        lines.push(format!(
            "{} weights, {} checks each, {} failures",
            self.weights,
            self.checks.len(),
            self.failures.len()
        ));
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("g2hecke").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn kf_trivial() {
        assert_eq!(call(&["kf", "0", "0", "0", "0"]), (0, "1\n".into(), String::new()));
        assert_eq!(call(&["kf", "1", "0", "0", "1"]).1, "0\n");
        assert_eq!(call(&["kf", "0", "1", "0", "0"]).1, "q^5 + q\n");
    }

    #[test]
    fn atomic_text() {
        let (code, out, _) = call(&["atomic", "2", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "Hbar(2,0) = N(2,0) + q*N(1,0) + q^2*N(0,0)\n");
        assert_eq!(call(&["atomic", "2", "0", "--method", "adjusted"]).1, out);
    }

    #[test]
    fn expand_and_standard() {
        assert_eq!(call(&["expand", "--level", "6", "1", "1"]).1, "Hbar(1,1) = Hbar(1,1)\n");
        assert_eq!(call(&["expand", "--level", "5", "0", "1"]).1, "N^5(0,1) = Hbar(0,1) - q*Hbar(0,0)\n");
        assert_eq!(call(&["standard", "1", "0"]).1, "Hbar(1,0) = H(1,0) + q^3*H(0,0)\n");
    }

    #[test]
    fn usage_and_domain_errors() {
        let (code, out, err) = call(&["atomic", "-1", "2"]);
        assert_eq!((code, out.as_str()), (1, ""));
        assert!(err.contains("not dominant"), "{err}");
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"), "{err}");
        assert_eq!(call(&["kf", "1", "x", "0", "0"]).0, 1);
        assert_eq!(call(&["expand", "--level", "7", "1", "1"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn verify_small_box() {
        let (code, out, _) = call(&["verify", "--max-a", "2", "--max-b", "1"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("6 weights, 12 checks each, 0 failures\n"), "{out}");
        let (code, out, _) = call(&["--format", "json", "verify", "--max-a", "1", "--max-b", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""failures":[]"#));
    }
}
