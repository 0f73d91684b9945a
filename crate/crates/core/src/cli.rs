//! Command-line front end.
//!
//! ```text
//! lah lah --n N --k K
//! lah stirling1 --n N --k K
//! lah table (lah|stirling1) --max-n N [--format text|csv]
//! lah verify --k-min A --k-max B --n-min C --n-max D
//!            [--routes LIST|all] [--format text|json|csv] [--jobs J]
//! ```
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::comb::{lah, lah_triangle, stirling1, stirling1_triangle};
use crate::report::{emit_report, emit_triangle, Format};
use crate::verify::{grid, verify_instances, NamedRoute, Route};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lah",
    version,
    about = "Exact Lah/Stirling numbers and a six-route identity checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Lah number L(n, k)
    Lah {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Print the signed Stirling number of the first kind s(n, k)
    Stirling1 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Print rows 0..=max-n of a triangle
    Table {
        kind: TableKind,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Check the alternating Lah sum over a (k, n) grid
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        k_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        k_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        n_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        n_max: i64,
        #[arg(long, default_value = "all")]
        routes: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Lah,
    Stirling1,
}

/// Settings of a `verify` run after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub k_min: i64,
    pub k_max: i64,
    pub n_min: i64,
    pub n_max: i64,
    pub routes: Vec<Route>,
    pub format: Format,
    pub jobs: usize,
}

/// A fully parsed and validated command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunConfig {
    Lah {
        n: u64,
        k: u64,
    },
    Stirling1 {
        n: u64,
        k: u64,
    },
    Table {
        kind: TableKind,
        max_n: usize,
        format: Format,
    },
    Verify(VerifyConfig),
}

/// Result of argument parsing that does not lead to a run.
#[derive(Debug)]
pub enum ParseOutcome {
    /// `--help` or `--version`; print to stdout and exit 0.
    Info(String),
    /// One-line diagnostic; exit 2.
    Usage(String),
}

fn parse_routes(spec: &str, k_max: i64, n_max: i64) -> Result<Vec<Route>, String> {
    if spec.trim() == "all" {
        return Ok(Route::default_set(k_max, n_max));
    }
    let mut routes = spec
        .split(',')
        .map(|s| s.parse::<Route>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    routes.sort();
    routes.dedup();
    Ok(routes)
}

impl RunConfig {
    pub fn parse<I, T>(args: I) -> Result<RunConfig, ParseOutcome>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    ParseOutcome::Info(e.to_string())
                }
                _ => {
                    let msg = e.to_string();
                    ParseOutcome::Usage(msg.lines().next().unwrap_or("error: bad usage").to_owned())
                }
            }
        })?;
        let usage = |m: String| ParseOutcome::Usage(format!("error: {m}"));
        Ok(match cli.command {
            Command::Lah { n, k } => RunConfig::Lah { n, k },
            Command::Stirling1 { n, k } => RunConfig::Stirling1 { n, k },
            Command::Table {
                kind,
                max_n,
                format,
            } => {
                let format = format.parse::<Format>().map_err(usage)?;
                if format == Format::Json {
                    return Err(usage("table supports --format text or csv".into()));
                }
                RunConfig::Table {
                    kind,
                    max_n,
                    format,
                }
            }
            Command::Verify {
                k_min,
                k_max,
                n_min,
                n_max,
                routes,
                format,
                jobs,
            } => {
                if k_min < 2 {
                    return Err(usage(format!("--k-min must be at least 2, got {k_min}")));
                }
                if n_min < 0 {
                    return Err(usage(format!("--n-min must be non-negative, got {n_min}")));
                }
                if k_min > k_max {
                    return Err(usage(format!("empty k range {k_min}..={k_max}")));
                }
                if n_min > n_max {
                    return Err(usage(format!("empty n range {n_min}..={n_max}")));
                }
                if jobs == 0 {
                    return Err(usage("--jobs must be positive".into()));
                }
                let routes = parse_routes(&routes, k_max, n_max).map_err(usage)?;
                let format = format.parse::<Format>().map_err(usage)?;
                RunConfig::Verify(VerifyConfig {
                    k_min,
                    k_max,
                    n_min,
                    n_max,
                    routes,
                    format,
                    jobs,
                })
            }
        })
    }
}

/// Runs a `verify` configuration with optional extra routes appended after
/// the built-in ones, writes the report, and returns the exit code.
pub fn run_verify(
    cfg: &VerifyConfig,
    extra: &[NamedRoute],
    out: &mut dyn Write,
) -> std::io::Result<i32> {
    let instances = match grid(cfg.k_min..=cfg.k_max, cfg.n_min..=cfg.n_max) {
        Ok(i) => i,
        Err(_) => return Ok(EXIT_USAGE),
    };
    let routes: Vec<NamedRoute> = cfg
        .routes
        .iter()
        .map(|r| r.named())
        .chain(extra.iter().cloned())
        .collect();
    let names: Vec<String> = routes.iter().map(|r| r.name.clone()).collect();
    let reports = verify_instances(&instances, &routes, cfg.jobs);
    out.write_all(emit_report(&reports, &names, cfg.format).as_bytes())?;
    Ok(if reports.iter().all(|r| r.all_match) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn execute(cfg: &RunConfig, out: &mut dyn Write) -> std::io::Result<i32> {
    match cfg {
        RunConfig::Lah { n, k } => writeln!(out, "{}", lah(*n, *k))?,
        RunConfig::Stirling1 { n, k } => writeln!(out, "{}", stirling1(*n, *k))?,
        RunConfig::Table {
            kind,
            max_n,
            format,
        } => {
            let t = match kind {
                TableKind::Lah => lah_triangle(*max_n),
                TableKind::Stirling1 => stirling1_triangle(*max_n),
            };
            out.write_all(emit_triangle(&t, *format).as_bytes())?;
        }
        RunConfig::Verify(v) => return run_verify(v, &[], out),
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse(args) {
        Ok(cfg) => cfg,
        Err(ParseOutcome::Info(text)) => {
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
        Err(ParseOutcome::Usage(line)) => {
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
