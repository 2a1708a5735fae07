//! The `berge` command line: verify, extract, search, shadow-dump, stress.
//!
//! Exit codes: 0 success / pass, 1 verification failure or verified
//! counterexample, 2 unresolved (budget exhausted), 3 usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::certificate::{verify_berge_certificate, BergeCertificate, VerificationReport};
use crate::hamiltonicity::{SearchConfig, DEFAULT_BUDGET};
use crate::harness::{stress_theorem, Generator, StressConfig};
use crate::hypergraph::{ColoredHypergraph, Params};
use crate::r4::{r4_find, R4Config, R4Error, MIN_N};
use crate::search::{generic_search, GenericOutcome};
use crate::shadow::build_shadow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "berge", version, about = "Monochromatic Hamiltonian Berge-cycles in colored complete hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct SearchArgs {
    /// Node-expansion budget per search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig { budget: self.budget, seed: self.seed, ..SearchConfig::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a certificate against a coloring.
    Verify {
        certificate: PathBuf,
        coloring: PathBuf,
        /// Tightness; the certificate's own value wins unless --force.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Find a certificate and write it with a construction trace.
    Extract {
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Certificate path (default: <coloring>.cert.json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace path (default: <coloring>.trace.json).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Directory for breach reproducers.
        #[arg(long)]
        reproducers: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Generic search (shadow tight cycle, then core-sequence search).
    Search {
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Certificate path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the shadow multi-coloring.
    ShadowDump {
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded stress run over generated colorings.
    Stress {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "random")]
        generator: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Worker threads (0: all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for counterexample colorings.
        #[arg(long)]
        reproducers: Option<PathBuf>,
        /// Report path (default: stdout).
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// An error with the exit code it maps to.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn read_coloring(path: &Path) -> Result<ColoredHypergraph, Failure> {
    let f = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ColoredHypergraph::read_text(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(|e| usage(e.to_string())),
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Verify { certificate, coloring, t, force } => {
            let text = std::fs::read_to_string(&certificate).map_err(|e| usage(format!("{}: {e}", certificate.display())))?;
            let cert = BergeCertificate::from_json(&text).map_err(|e| usage(format!("{}: {e}", certificate.display())))?;
            let h = read_coloring(&coloring)?;
            let t = match (t, force) {
                (Some(t), true) => t,
                _ => cert.t,
            };
            match verify_berge_certificate(&cert, &h, t) {
                VerificationReport::Pass => {
                    let _ = writeln!(out, "pass");
                    Ok(EXIT_OK)
                }
                VerificationReport::Fail(v) => {
                    let _ = writeln!(out, "fail: {v}");
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Extract { coloring, t, out: cert_path, trace, reproducers, search } => {
            let h = read_coloring(&coloring)?;
            let cert_path = cert_path.unwrap_or_else(|| with_suffix(&coloring, ".cert.json"));
            let trace_path = trace.unwrap_or_else(|| with_suffix(&coloring, ".trace.json"));
            let cfg = search.config();
            let (cert, trace_json) = if h.r() == 4 && h.c() == 3 && t == 2 && h.n() >= MIN_N {
                match r4_find(&h, &R4Config { search: cfg, reproducer_dir: reproducers }) {
                    Ok((cert, trace)) => (Some(cert), serde_json::to_value(&trace).expect("trace serializes")),
                    Err(R4Error::Unresolved(trace)) => (None, serde_json::to_value(&*trace).expect("trace serializes")),
                    Err(e) => return Err(Failure(EXIT_UNRESOLVED, e.to_string())),
                }
            } else {
                let mut log = Vec::new();
                let found = match generic_search(&h, t, &cfg, &mut log) {
                    GenericOutcome::Found(c) => Some(c),
                    GenericOutcome::Unresolved => None,
                };
                (found, json!({ "branch": "generic-search", "subcase": "", "fallbacks": log }))
            };
            let trace_text = serde_json::to_string_pretty(&trace_json).expect("json");
            write_or_print(Some(&trace_path), &trace_text, out)?;
            match cert {
                Some(cert) => {
                    write_or_print(Some(&cert_path), &cert.to_json(), out)?;
                    let _ = writeln!(out, "certificate: {} (color {})", cert_path.display(), cert.color);
                    let _ = writeln!(out, "trace: {}", trace_path.display());
                    Ok(EXIT_OK)
                }
                None => {
                    let _ = writeln!(err, "unresolved: no certificate within budget (trace: {})", trace_path.display());
                    Ok(EXIT_UNRESOLVED)
                }
            }
        }
        Command::Search { coloring, t, out: path, search } => {
            let h = read_coloring(&coloring)?;
            if t < 2 || t > h.r() {
                return Err(usage(format!("t = {t} outside 2..={}", h.r())));
            }
            let mut log = Vec::new();
            match generic_search(&h, t, &search.config(), &mut log) {
                GenericOutcome::Found(cert) => {
                    write_or_print(path.as_deref(), &cert.to_json(), out)?;
                    Ok(EXIT_OK)
                }
                GenericOutcome::Unresolved => {
                    for a in &log {
                        let _ = writeln!(err, "{}: {}", a.what, a.outcome);
                    }
                    let _ = writeln!(err, "unresolved");
                    Ok(EXIT_UNRESOLVED)
                }
            }
        }
        Command::ShadowDump { coloring, t, out: path } => {
            let h = read_coloring(&coloring)?;
            let s = build_shadow(&h, t).map_err(|e| usage(e.to_string()))?;
            write_or_print(path.as_deref(), s.dump().trim_end(), out)?;
            Ok(EXIT_OK)
        }
        Command::Stress { r, t, c, n, generator, trials, jobs, reproducers, report, search } => {
            let params = Params::new(n, r, t, c).map_err(|e| usage(e.to_string()))?;
            let generator: Generator = generator.parse().map_err(|e: crate::harness::GeneratorError| usage(e.to_string()))?;
            let cfg = StressConfig {
                params,
                generator,
                trials,
                master_seed: search.seed,
                budget: search.budget,
                jobs,
                reproducer_dir: reproducers,
            };
            let rep = stress_theorem(&cfg);
            let _ = writeln!(err, "{}", rep.summary());
            write_or_print(report.as_deref(), &rep.to_json(), out)?;
            if !rep.errors.is_empty() {
                return Err(usage(rep.errors[0].clone()));
            }
            Ok(if !rep.counterexamples.is_empty() {
                EXIT_FAIL
            } else if rep.unresolved > 0 {
                EXIT_UNRESOLVED
            } else {
                EXIT_OK
            })
        }
    }
}
