//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or parameter errors, 2 when a checked
//! assertion fails. Reports are printed as JSON; polynomials in text form use
//! descending exponents, e.g. `-3z^4 + 4z^3`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::belyi::{generate, mirror, verify_conservative};
use crate::error::{Error, Result};
use crate::heights::{height_belyi, sweep_grid, write_sweep_csv};
use crate::poly::Polynomial;
use crate::reduction::{
    classify_persistent_bad, pcf_obstruction_diagnostic, persistent_bad_primes,
    persistent_bad_witness, potential_good_reduction, verify_bicritical_good_reduction,
};
use crate::table::degree18_table;

#[derive(Parser, Debug)]
#[command(name = "dynbelyi", version, about = "Conservative dynamical Belyi polynomials: reduction, Newton polygons, heights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print B_{d,k}.
    Gen {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that B_{d,k}, or the polynomial in FILE, fixes its critical points 0 and 1.
    Verify {
        #[arg(short)]
        d: Option<usize>,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Print B_{d,d-1-k} after checking it is the conjugate of B_{d,k} by 1 - z.
    Mirror {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
    },
    /// Reduction report of B_{d,k} at p.
    Reduce {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        p: u64,
    },
    /// Whether some degree-d polynomial can have persistent bad reduction at p.
    Classify {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        p: u64,
    },
    /// The Belyi polynomial of degree d with persistent bad reduction at p.
    Witness {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        p: u64,
    },
    /// Primes at which B_{d,k} has persistent bad reduction.
    Badprimes {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
    },
    /// Regenerate the degree-18 witness table and list printed errata.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Good-reduction check for the bicritical family of degree d at p.
    Prop32 {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        p: u64,
    },
    /// Height report of B_{d,k}.
    Height {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        /// Minimum working precision in bits.
        #[arg(long)]
        bits: Option<usize>,
    },
    /// Height sweep over k in A..B and a list of degrees, written as CSV.
    SweepHeights {
        /// `A..B`, `A..=B`, a single value or a comma list.
        #[arg(long = "k")]
        k: String,
        /// Comma-separated degrees.
        #[arg(long = "d")]
        d: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        bits: Option<usize>,
    },
    /// Newton polygon counting diagnostic for a monic polynomial fixing 0.
    Diagnose {
        #[arg(short)]
        p: u64,
        /// Text (`z^3 - 1/3 z^2`) or JSON (`[[e, num, den], ...]`).
        #[arg(long)]
        poly: PathBuf,
    },
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Assertion(_) => 2,
                _ => 1,
            }
        }
    }
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn read_poly(path: &PathBuf) -> Result<Polynomial> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let trimmed = text.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        // Either the bare term list or an object with a "coefficients" field.
        let terms = value.get("coefficients").unwrap_or(&value);
        Polynomial::from_json(terms)
    } else {
        trimmed.parse()
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// `A..B` (inclusive, matching how ranges of k are written), `A..=B`, a
/// single value, or a comma list.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let bound = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (bound(a)?, bound(b)?);
        if a > b {
            return Err(Error::ParameterRange(format!("empty range {s}")));
        }
        return Ok((a..=b).collect());
    }
    parse_list(s)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen { d, k, format } => {
            let b = generate(d, k)?;
            match format {
                Format::Text => writeln!(out, "{b}").map_err(io_error),
                Format::Json => emit(
                    out,
                    &json!({
                        "d": d,
                        "k": k,
                        "polynomial": b.to_string(),
                        "coefficients": b.poly(),
                    }),
                ),
            }
        }
        Command::Verify { d, k, poly } => {
            let f = match (poly, d) {
                (Some(path), _) => read_poly(&path)?,
                (None, Some(d)) => generate(d, k)?.into_poly(),
                (None, None) => {
                    return Err(Error::ParameterRange("verify needs -d or --poly".into()))
                }
            };
            let check = verify_conservative(&f, k);
            match check.violated {
                None => writeln!(out, "conservative: {f}").map_err(io_error),
                Some(clause) => Err(Error::Assertion(format!("{f} violates {clause}"))),
            }
        }
        Command::Mirror { d, k } => {
            let b = generate(d, k)?;
            let m = mirror(&b)?;
            writeln!(out, "{m}").map_err(io_error)
        }
        Command::Reduce { d, k, p } => {
            let b = generate(d, k)?;
            emit(out, &potential_good_reduction(&b, p)?)
        }
        Command::Classify { d, p } => emit(out, &classify_persistent_bad(d, p)?),
        Command::Witness { d, p } => {
            let (b, report) = persistent_bad_witness(d, p)?;
            emit(
                out,
                &json!({
                    "d": d,
                    "p": p,
                    "k": b.k(),
                    "polynomial": b.to_string(),
                    "coefficients": b.poly(),
                    "report": report,
                }),
            )
        }
        Command::Badprimes { d, k } => {
            let b = generate(d, k)?;
            emit(out, &persistent_bad_primes(&b)?)
        }
        Command::Table1 { format } => {
            let (rows, errata, text) = degree18_table()?;
            match format {
                Format::Text => write!(out, "{text}").map_err(io_error),
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "p": r.class.p,
                                "n": r.class.n,
                                "l": r.class.l,
                                "r": r.class.r,
                                "k": r.k(),
                                "polynomial": r.polynomial.to_string(),
                                "coefficients": r.polynomial.poly(),
                            })
                        })
                        .collect();
                    emit(out, &json!({ "d": 18, "rows": rows, "errata": errata }))
                }
            }
        }
        Command::Prop32 { d, p } => {
            let report = verify_bicritical_good_reduction(d, p)?;
            emit(out, &report)?;
            if report.shape_ok {
                Ok(())
            } else {
                Err(Error::Assertion(format!(
                    "bicritical construction fails its shape check at d = {d}, p = {p}"
                )))
            }
        }
        Command::Height { d, k, bits } => emit(out, &height_belyi(d, k, bits)?),
        Command::SweepHeights { k, d, out: path, bits } => {
            let ks = parse_k_range(&k)?;
            let ds = parse_list(&d)?;
            if ks.is_empty() || ds.is_empty() {
                return Err(Error::ParameterRange("need at least one k and one d".into()));
            }
            if let Some(&bad) = ks.iter().find(|&&k| k == 0) {
                return Err(Error::ParameterRange(format!("k must be at least 1, got {bad}")));
            }
            let rows = sweep_grid(&ks, &ds, bits)?;
            match path {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let mut w = std::io::BufWriter::new(file);
                    write_sweep_csv(&rows, &mut w).map_err(io_error)?;
                    w.flush().map_err(io_error)?;
                    writeln!(out, "wrote {} rows to {}", rows.len(), path.display()).map_err(io_error)
                }
                None => write_sweep_csv(&rows, out).map_err(io_error),
            }
        }
        Command::Diagnose { p, poly } => {
            let f = read_poly(&poly)?;
            emit(out, &pcf_obstruction_diagnostic(&f, p)?)
        }
    }
}
