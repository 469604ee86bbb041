//! Driving the command-line layer from code, with a config file.
//!
//! run with `cargo run --example cli_config`

use std::collections::BTreeMap;

use quadlab::cli::config::parse_config_text;
use quadlab::cli::{execute, Command, RunConfig};

fn main() -> quadlab::Result<()> {
    let file = parse_config_text("# shifted square\ndim = 2\nr = 1/2\nnoise = constant:0.05\nsamples = 2000\nseed = 42\n")?;
    let mut flags = BTreeMap::new();
    flags.insert("d".to_string(), "1".to_string());
    let cfg = RunConfig::resolve(Command::Certify, file, flags)?;
    let report = execute(&cfg)?;
    println!("status {} exit {}", report.summary.status, report.summary.exit_code);
    println!("C_approx {} delta_hat {}", report.constants.C_approx, report.results["delta_hat"]);
    Ok(())
}
