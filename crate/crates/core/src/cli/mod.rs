//! Command-line front end: `certify`, `detect-ip`, `exponents`, `profile`,
//! `residual`.
//!
//! Exit codes: 0 pass/accepted, 1 fail/rejected, 2 invalid parameters,
//! 3 inconclusive.

mod commands;
pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, run_certify, run_detect_ip, run_exponents, run_profile, run_residual};
pub use config::{Command, RunConfig};
pub use report::{exit, Report, Summary};

use crate::error::LabError;

#[derive(Debug, Parser)]
#[command(name = "quadlab", version, about = "Quadratic functional-equation laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Certify a map against the restricted-domain stability bound.
    Certify(Flags),
    /// Test whether a norm comes from an inner product.
    DetectIp(Flags),
    /// Scan exponent tuples of the generalized norm identity.
    Exponents(Flags),
    /// Shell-wise defect profile and asymptotic verdict.
    Profile(Flags),
    /// Residuals and derivation-chain defects at one point.
    Residual(Flags),
}

/// Shared flags. Values stay textual so that flags and config files go
/// through the same parser.
#[derive(Debug, Args, Default)]
struct Flags {
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    codim: Option<String>,
    /// euclidean | p:<v> | sup | weighted
    #[arg(long)]
    norm: Option<String>,
    /// Norm of the codomain: euclidean | p:<v> | sup
    #[arg(long = "codomain-norm")]
    codomain_norm: Option<String>,
    /// Gram matrix rows for the weighted norm, e.g. "2,0;0,3"
    #[arg(long)]
    gram: Option<String>,
    /// Decimal or exact fraction p/q
    #[arg(long = "r", allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long = "d")]
    d: Option<String>,
    /// Analytic δ used instead of the sampled estimate
    #[arg(long)]
    delta: Option<String>,
    /// none | constant:<c> | uniform:<δ>[:<seed>] | decay:<c>,<α> | sine:<c>
    #[arg(long, allow_hyphen_values = true)]
    noise: Option<String>,
    /// identity | random:<seed> | matrix rows ("1,0;0,1"), '|' between outputs
    #[arg(long, allow_hyphen_values = true)]
    form: Option<String>,
    /// form | cube | linear
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long = "radius-max")]
    radius_max: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    iters: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long = "decay-tol")]
    decay_tol: Option<String>,
    #[arg(long = "n-min")]
    n_min: Option<String>,
    #[arg(long = "n-max")]
    n_max: Option<String>,
    /// Exponent tuples "p,q,u,v;p,q,u,v"
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "x", allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long = "y", allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long = "emit-samples")]
    emit_samples: bool,
    /// key=value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn into_map(self) -> (BTreeMap<String, String>, Option<PathBuf>) {
        let mut m = BTreeMap::new();
        let entries = [
            ("dim", self.dim),
            ("codim", self.codim),
            ("norm", self.norm),
            ("codomain-norm", self.codomain_norm),
            ("gram", self.gram),
            ("r", self.r),
            ("d", self.d),
            ("delta", self.delta),
            ("noise", self.noise),
            ("form", self.form),
            ("map", self.map),
            ("samples", self.samples),
            ("radius-max", self.radius_max),
            ("seed", self.seed),
            ("iters", self.iters),
            ("tol", self.tol),
            ("decay-tol", self.decay_tol),
            ("n-min", self.n_min),
            ("n-max", self.n_max),
            ("grid", self.grid),
            ("x", self.x),
            ("y", self.y),
            ("out", self.out),
        ];
        for (k, v) in entries {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        }
        if self.emit_samples {
            m.insert("emit-samples".into(), "true".into());
        }
        (m, self.config)
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: i32,
    /// Human-readable error, for standard error.
    pub message: Option<String>,
}

/// Parses arguments (program name first) and runs the subcommand. Usage
/// errors come back as exit code 2 with clap's message.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID } else { exit::PASS };
            return Outcome { report: None, exit_code: code, message: Some(e.to_string()) };
        }
    };
    let (command, flags) = match cli.command {
        Sub::Certify(f) => (Command::Certify, f),
        Sub::DetectIp(f) => (Command::DetectIp, f),
        Sub::Exponents(f) => (Command::Exponents, f),
        Sub::Profile(f) => (Command::Profile, f),
        Sub::Residual(f) => (Command::Residual, f),
    };
    let (flags, config_path) = flags.into_map();
    let resolved = config_path
        .as_deref()
        .map(config::read_config_file)
        .transpose()
        .and_then(|file| RunConfig::resolve(command, file.unwrap_or_default(), flags));
    let result = resolved.and_then(|cfg| execute(&cfg));
    match result {
        Ok(report) => Outcome { exit_code: report.summary.exit_code, report: Some(report), message: None },
        Err(e) => Outcome { report: None, exit_code: exit_code_for(&e), message: Some(format!("error: {e}")) },
    }
}

fn exit_code_for(e: &LabError) -> i32 {
    match e {
        LabError::NonFinite { .. } => exit::INCONCLUSIVE,
        _ => exit::INVALID,
    }
}

/// Entry point of the binary: prints the report (unless written to
/// `--out`) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run_from_args(args);
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    if let Some(report) = &outcome.report {
        let wrote_file = report.config.contains_key("out");
        if !wrote_file {
            println!("{}", report.to_json());
        } else {
            eprintln!("{}: {}", report.command, report.summary.status);
        }
    }
    outcome.exit_code
}
