//! The `tnorm` command line.
//!
//! [`run`] takes the argument list and returns the exit status and the text
//! that would be printed, so the whole surface is testable in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cantor::{analyze_gap_order, expand, has_property_e, CantorRule, CantorSystem};
use crate::error::Error;
use crate::iso::{decide_iso_lazy, IsoVerdict};
use crate::numerics::UnitRational;
use crate::presentation::{parse_presentation, Presentation};
use crate::reduce_from_lo::{build_intervals, round_trip, LinearOrder};
use crate::reduce_to_l1::theta;
use crate::signature::compute_signature;
use crate::tnorm::{check_axioms, TNorm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

/// Depth used to locate points in lazy t-norms when none is given.
pub const DEFAULT_DEPTH: usize = 12;
/// Pieces kept when a lazy t-norm is evaluated on a truncation.
pub const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "tnorm", version, about = "Continuous t-norms as ordinal sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate x * y; lazy t-norms report a truncation value and error bound.
    Eval {
        file: PathBuf,
        x: String,
        y: String,
        /// Number of pieces kept for lazy t-norms.
        truncation: Option<usize>,
    },
    /// Check the t-norm axioms exactly on a rational grid.
    Axioms {
        file: PathBuf,
        /// Grid {0, 1/k, …, 1}.
        #[arg(long, default_value_t = 20)]
        grid: u64,
    },
    /// Print the labeled interval signature.
    Signature { file: PathBuf, depth: Option<usize> },
    /// Decide whether two t-norms are isomorphic.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        depth: Option<usize>,
    },
    /// Print the relational structure on the first N indices.
    Theta {
        file: PathBuf,
        n: u64,
        /// Locate depth for lazy t-norms.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Print the first N intervals built from a linear order.
    FromLo { order: String, n: usize },
    /// Expand a Cantor system and analyze its removed intervals.
    Cantor { system: String, depth: usize },
    /// Rebuild an order from the structure of its t-norm.
    Roundtrip { order: String, n: usize },
    /// Print x * y over the lattice {k/(grid−1)}² as comma-separated values.
    Surface { file: PathBuf, grid: u64 },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_status(status: i32, stdout: String) -> Self {
        Outcome {
            status,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let status = match e {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Outcome {
            status,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}

fn load(path: &PathBuf) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_presentation(&text)
}

fn unit(s: &str) -> Result<UnitRational, Error> {
    s.parse()
}

fn execute(command: Command) -> Result<Outcome, Error> {
    let mut out = String::new();
    match command {
        Command::Eval {
            file,
            x,
            y,
            truncation,
        } => {
            let (x, y) = (unit(&x)?, unit(&y)?);
            match load(&file)?.to_tnorm(DEFAULT_DEPTH)? {
                TNorm::Finite(p) => writeln!(out, "{}", p.eval(&x, &y)).unwrap(),
                TNorm::Lazy(l) => {
                    let a = l.eval_approx(&x, &y, truncation.unwrap_or(DEFAULT_TRUNCATION))?;
                    writeln!(out, "{} error_bound={}", a.value, a.error_bound).unwrap();
                }
            }
        }
        Command::Axioms { file, grid } => {
            if grid == 0 {
                return Err(Error::Precondition("grid must be positive".into()));
            }
            let samples = crate::corpus::grid(grid);
            let report = match load(&file)?.to_tnorm(DEFAULT_DEPTH)? {
                TNorm::Finite(p) => check_axioms(&p, &samples),
                TNorm::Lazy(l) => {
                    writeln!(out, "truncation={DEFAULT_TRUNCATION}").unwrap();
                    check_axioms(&l.truncation(DEFAULT_TRUNCATION), &samples)
                }
            };
            write!(out, "{report}").unwrap();
            if !report.is_clean() {
                return Ok(Outcome::with_status(EXIT_FAIL, out));
            }
        }
        Command::Signature { file, depth } => {
            let depth = depth.unwrap_or(DEFAULT_DEPTH);
            let t = load(&file)?.to_tnorm(depth)?;
            write!(out, "{}", compute_signature(&t, depth)).unwrap();
        }
        Command::Iso {
            file_a,
            file_b,
            depth,
        } => {
            let depth = depth.unwrap_or(DEFAULT_DEPTH);
            let a = load(&file_a)?.to_tnorm(depth)?;
            let b = load(&file_b)?.to_tnorm(depth)?;
            let verdict = decide_iso_lazy(&a, &b, depth);
            write!(out, "{verdict}").unwrap();
            if let IsoVerdict::Unknown(_) = verdict {
                return Ok(Outcome::with_status(EXIT_UNKNOWN, out));
            }
        }
        Command::Theta { file, n, depth } => {
            let t = load(&file)?.to_tnorm(depth)?;
            write!(out, "{}", theta(&t, n)).unwrap();
        }
        Command::FromLo { order, n } => {
            let order: LinearOrder = order.parse()?;
            write!(out, "{}", build_intervals(&order, n)?).unwrap();
        }
        Command::Cantor { system, depth } => {
            let system = CantorSystem::new(system.parse::<CantorRule>()?);
            write!(out, "{}", expand(&system, depth)?.gaps).unwrap();
            writeln!(out, "property_e={}", has_property_e(&system, depth)?).unwrap();
            write!(out, "{}", analyze_gap_order(&system, depth)?).unwrap();
        }
        Command::Roundtrip { order, n } => {
            let order: LinearOrder = order.parse()?;
            let r = round_trip(&order, n)?;
            write!(out, "{r}").unwrap();
            if !r.passed() {
                return Ok(Outcome::with_status(EXIT_FAIL, out));
            }
        }
        Command::Surface { file, grid } => {
            if grid < 2 {
                return Err(Error::Precondition("grid needs at least two points".into()));
            }
            let p = match load(&file)?.to_tnorm(DEFAULT_DEPTH)? {
                TNorm::Finite(p) => p,
                TNorm::Lazy(l) => l.truncation(DEFAULT_TRUNCATION),
            };
            let points: Vec<UnitRational> = (0..grid)
                .map(|k| UnitRational::ratio(k, grid - 1))
                .collect();
            let header: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            writeln!(out, "x\\y,{}", header.join(",")).unwrap();
            for x in &points {
                let row: Vec<String> = points.iter().map(|y| p.eval(x, y).to_string()).collect();
                writeln!(out, "{x},{}", row.join(",")).unwrap();
            }
        }
    }
    Ok(Outcome::ok(out))
}
