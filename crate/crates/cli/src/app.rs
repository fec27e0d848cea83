//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 when the command succeeded and every checked property
//! holds, 1 when a checked property fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use lefschetz_core::catalog::{lookup, CatalogError, ENTRIES};
use lefschetz_core::expr::ExprError;
use lefschetz_core::lefschetz::{
    check_hard_lefschetz, check_poincare_duality, check_symmetry, lefschetz_subalgebra, LefschetzError,
};
use lefschetz_core::{Element, GradedAlgebra};
use thiserror::Error;

use crate::build_file::{evaluate, parse_build_file, BuildError};
use crate::report::{build_report, join_counts, verdict_text, VerdictReport};
use crate::store::{decode_algebra, encode_algebra, write_algebra, StoreError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Exact Lefschetz subalgebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List built-in algebras.
    Catalog,
    /// Evaluate a .build.json file and write the algebra as .alg.json.
    Build {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Ambient dimensions per degree.
    Dims { alg: String },
    /// Dimensions of the subalgebra generated in degree one.
    LefDims {
        alg: String,
        /// Degree-one generators (default: the whole degree-one component).
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        gens: Vec<String>,
    },
    /// Check symmetry, Poincaré duality and/or hard Lefschetz.
    #[command(group(ArgGroup::new("predicate").required(true).multiple(true).args(["sym", "pd", "hl"])))]
    Check {
        alg: String,
        #[arg(long)]
        sym: bool,
        #[arg(long)]
        pd: bool,
        #[arg(long)]
        hl: bool,
        /// Degree-one class for --hl (default: the catalog's choice).
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        gens: Vec<String>,
    },
    /// Multiply two classes.
    Mul {
        alg: String,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Check the ring axioms and the pairing.
    Verify { alg: String },
    /// Dimensions and all verdicts.
    Report {
        alg: String,
        #[arg(long)]
        json: bool,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("cannot parse `{text}`: {source}")]
    Expr { text: String, source: ExprError },
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error("--hl needs --omega for `{0}` (no catalog default)")]
    NoOmega(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

struct Loaded {
    algebra: GradedAlgebra,
    default_omega: Option<String>,
}

// A path to an .alg.json or .build.json file, or a catalog name.
fn load(spec: &str) -> Result<Loaded, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: spec.to_string(),
            source,
        })?;
        let is_dump = spec.ends_with(".alg.json")
            || serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .is_some_and(|v| v.get("format").is_some());
        let algebra = if is_dump {
            decode_algebra(&text)?
        } else {
            evaluate(&parse_build_file(&text)?)?
        };
        return Ok(Loaded {
            algebra,
            default_omega: None,
        });
    }
    let entry = lookup(spec)?;
    Ok(Loaded {
        algebra: entry.algebra,
        default_omega: Some(entry.omega),
    })
}

fn parse<'a>(a: &'a GradedAlgebra, text: &str) -> Result<Element<'a>, CliError> {
    a.parse_element(text).map_err(|source| CliError::Expr {
        text: text.to_string(),
        source,
    })
}

fn parse_gens<'a>(a: &'a GradedAlgebra, gens: &[String]) -> Result<Option<Vec<Element<'a>>>, CliError> {
    if gens.is_empty() {
        return Ok(None);
    }
    gens.iter().map(|g| parse(a, g)).collect::<Result<Vec<_>, _>>().map(Some)
}

/// Runs the tool on `argv` (including the program name), writing to `out`
/// and `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".to_string(),
        source,
    })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Catalog => {
            let width = ENTRIES.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            let mut text = String::new();
            for (name, about) in ENTRIES {
                text.push_str(&format!("{name:width$}  {about}\n"));
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Build { file, output } => {
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let algebra = evaluate(&parse_build_file(&text)?)?;
            match output {
                Some(path) => {
                    write_algebra(&path, &algebra)?;
                    emit(out, &format!("wrote {} ({})\n", path.display(), algebra.name()))?;
                }
                None => emit(out, &encode_algebra(&algebra))?,
            }
            Ok(EXIT_OK)
        }
        Command::Dims { alg } => {
            let loaded = load(&alg)?;
            emit(out, &format!("{}\n", join_counts(&loaded.algebra.dims())))?;
            Ok(EXIT_OK)
        }
        Command::LefDims { alg, gens } => {
            let loaded = load(&alg)?;
            let a = &loaded.algebra;
            let gens = parse_gens(a, &gens)?;
            let l = lefschetz_subalgebra(a, gens.as_deref())?;
            emit(out, &format!("{}\n", join_counts(&l.dims())))?;
            Ok(EXIT_OK)
        }
        Command::Check {
            alg,
            sym,
            pd,
            hl,
            omega,
            gens,
        } => {
            let loaded = load(&alg)?;
            let a = &loaded.algebra;
            let gens = parse_gens(a, &gens)?;
            let l = lefschetz_subalgebra(a, gens.as_deref())?;
            let mut verdicts = Vec::new();
            if sym {
                verdicts.push(VerdictReport::from(&check_symmetry(&l)));
            }
            if pd {
                verdicts.push(VerdictReport::from(&check_poincare_duality(&l)));
            }
            if hl {
                let text = omega
                    .or(loaded.default_omega.clone())
                    .ok_or_else(|| CliError::NoOmega(alg.clone()))?;
                let w = parse(a, &text)?;
                verdicts.push(VerdictReport::from(&check_hard_lefschetz(&l, &w)?));
            }
            let text: String = verdicts.iter().map(verdict_text).collect();
            emit(out, &text)?;
            Ok(if verdicts.iter().all(|v| v.passed) { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Mul { alg, left, right } => {
            let loaded = load(&alg)?;
            let a = &loaded.algebra;
            let product = parse(a, &left)?
                .multiply(&parse(a, &right)?)
                .expect("both factors come from the same algebra");
            emit(out, &format!("{product}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Verify { alg } => {
            let loaded = load(&alg)?;
            let report = loaded.algebra.verify();
            if report.passed() {
                emit(out, "ok: unit, commutativity, associativity, pairing\n")?;
                Ok(EXIT_OK)
            } else {
                let text: String = report.violations.iter().map(|v| format!("{v}\n")).collect();
                emit(out, &text)?;
                Ok(EXIT_FAIL)
            }
        }
        Command::Report { alg, json, omega } => {
            let loaded = load(&alg)?;
            let a = &loaded.algebra;
            let omega_text = omega.or(loaded.default_omega.clone());
            let w = omega_text.as_deref().map(|t| parse(a, t)).transpose()?;
            // a point has no degree-one classes, so no ω
            let w = w.filter(|_| a.top_degree() > 0);
            let l = lefschetz_subalgebra(a, None)?;
            let report = build_report(a, &l, w.as_ref())?;
            emit(out, &if json { report.to_json() } else { report.to_text() })?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
