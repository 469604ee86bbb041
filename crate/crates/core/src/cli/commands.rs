use std::time::Instant;

use serde_json::json;

use super::config::{Command, RunConfig};
use super::report::{self, exit, Report, Summary};
use crate::asymptotics::{asymptotic_verdict, shell_delta_profile, Verdict};
use crate::error::{LabError, Result};
use crate::geometry::{detect_inner_product, exponent_scan, Exponents};
use crate::quadratic::{derivation_defects_at, residual_gq, residual_q};
use crate::space::Sampler;
use crate::stability::{
    certify, restricted_residuals, CertificateStatus, CertifyOptions, ExtractOptions, StabilityConstants,
};

/// Runs the configured subcommand and writes any requested files.
pub fn execute(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let mut report = match config.command {
        Command::Certify => run_certify(config)?,
        Command::DetectIp => run_detect_ip(config)?,
        Command::Exponents => run_exponents(config)?,
        Command::Profile => run_profile(config)?,
        Command::Residual => run_residual(config)?,
    };
    report.runtime_ms = start.elapsed().as_millis() as u64;
    if let Some(out) = &config.out {
        report::write_file(out, &report.to_json())?;
    }
    Ok(report)
}

fn sampler(config: &RunConfig) -> Sampler {
    Sampler::ball(config.seed, config.samples, config.radius_max)
}

fn base_warnings(config: &RunConfig) -> Vec<String> {
    let mut w = Vec::new();
    if config.form_symmetrized {
        w.push("form coefficients were not symmetric; used (B + Bᵀ)/2".to_string());
    }
    if config.spaces.domain.is_quasi_norm() {
        w.push("domain p-norm with p < 1 is only a quasi-norm".to_string());
    }
    if config.params.small_rs_warning() {
        w.push(format!("|rs| = {:e} < 1e-2", config.params.rs().abs()));
    }
    w
}

fn report(config: &RunConfig, constants: StabilityConstants, results: serde_json::Value, summary: Summary) -> Report {
    Report {
        schema_version: report::SCHEMA_VERSION,
        command: config.command.name().to_string(),
        config: config.effective.clone(),
        constants,
        results,
        summary,
        runtime_ms: 0,
    }
}

fn fallback_constants(config: &RunConfig, delta: f64) -> Result<StabilityConstants> {
    StabilityConstants::compute(&config.params, config.d, config.delta_override.unwrap_or(delta))
}

pub fn run_certify(config: &RunConfig) -> Result<Report> {
    let f = config.build_map()?;
    let opts = CertifyOptions {
        extract: ExtractOptions { max_iters: config.iters, tol: config.tol },
        delta_override: config.delta_override,
        ..CertifyOptions::default()
    };
    let cert = certify(&f, &config.params, config.d, &config.spaces, &sampler(config), &opts)?;
    if config.emit_samples {
        let samples = restricted_residuals(&f, &config.params, config.d, &config.spaces, &sampler(config))?;
        let path = report::sidecar_path(config.out.as_deref(), "samples.csv");
        report::write_file(&path, &report::samples_csv(&samples))?;
    }
    let (status, exit_code) = match cert.status {
        CertificateStatus::Pass => ("pass", exit::PASS),
        CertificateStatus::Fail => ("fail", exit::FAIL),
        CertificateStatus::Inconclusive => ("inconclusive", exit::INCONCLUSIVE),
    };
    let mut warnings = base_warnings(config);
    warnings.extend(cert.warnings.iter().cloned());
    warnings.dedup();
    let summary = Summary { status: status.into(), pass: cert.pass, exit_code, warnings };
    Ok(report(config, cert.constants, serde_json::to_value(&cert).expect("serializable"), summary))
}

pub fn run_detect_ip(config: &RunConfig) -> Result<Report> {
    let verdict = detect_inner_product(&config.spaces.domain, &sampler(config), config.tol)?;
    let (status, exit_code) = if verdict.accepted { ("accepted", exit::PASS) } else { ("rejected", exit::FAIL) };
    let summary = Summary { status: status.into(), pass: verdict.accepted, exit_code, warnings: base_warnings(config) };
    Ok(report(config, fallback_constants(config, 0.0)?, serde_json::to_value(&verdict).expect("serializable"), summary))
}

pub fn run_exponents(config: &RunConfig) -> Result<Report> {
    let grid = config.grid.clone().unwrap_or_else(Exponents::default_grid);
    let scan = exponent_scan(&config.spaces.domain, &config.params, &grid, &sampler(config), config.tol)?;
    let mut warnings = base_warnings(config);
    if scan.r_outside_unit_interval {
        warnings.push("r outside (0, 1): the exponent-forcing argument assumes 0 < r < 1".to_string());
    }
    let summary = Summary {
        status: format!("{} of {} tuples flagged", scan.flagged.len(), scan.rows.len()),
        pass: true,
        exit_code: exit::PASS,
        warnings,
    };
    Ok(report(config, fallback_constants(config, 0.0)?, serde_json::to_value(&scan).expect("serializable"), summary))
}

pub fn run_profile(config: &RunConfig) -> Result<Report> {
    if config.n_min >= config.n_max {
        return Err(LabError::InvalidParameter(format!(
            "need n-min < n-max, got [{}, {}]",
            config.n_min, config.n_max
        )));
    }
    let f = config.build_map()?;
    let profile = shell_delta_profile(
        &f,
        &config.params,
        &config.spaces,
        config.n_min,
        config.n_max,
        config.samples,
        config.seed,
    )?;
    let verdict = asymptotic_verdict(&profile, config.decay_tol)?;
    if config.emit_samples {
        let rows: Vec<(u32, f64)> = profile.shells.iter().map(|s| (s.n, s.delta_n)).collect();
        let path = report::sidecar_path(config.out.as_deref(), "profile.csv");
        report::write_file(&path, &report::profile_csv(&rows))?;
    }
    let (status, pass, exit_code) = match verdict.verdict {
        Verdict::AsymptoticallyQuadratic => ("asymptotically_quadratic", true, exit::PASS),
        Verdict::PersistentDefect => ("persistent_defect", false, exit::FAIL),
        Verdict::Inconclusive => ("inconclusive", false, exit::INCONCLUSIVE),
    };
    let sup = profile.deltas().into_iter().fold(0.0, f64::max);
    let constants = StabilityConstants::compute(
        &config.params,
        config.n_min as f64,
        config.delta_override.unwrap_or(sup),
    )?;
    let summary = Summary { status: status.into(), pass, exit_code, warnings: base_warnings(config) };
    Ok(report(config, constants, json!({ "profile": profile, "verdict": verdict }), summary))
}

pub fn run_residual(config: &RunConfig) -> Result<Report> {
    let (x, y) = match (&config.x, &config.y) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(LabError::InvalidParameter("residual needs --x and --y".into())),
    };
    let f = config.build_map()?;
    let rq = residual_q(&f, x, y)?;
    let rgq = residual_gq(&f, &config.params, x, y)?;
    let chain = derivation_defects_at(&f, &config.params, x, y)?;
    let ny = &config.spaces.codomain;
    let gq_norm = ny.norm(&rgq)?;
    let results = json!({
        "x": x,
        "y": y,
        "residual_q": rq,
        "residual_q_norm": ny.norm(&rq)?,
        "residual_gq": rgq,
        "residual_gq_norm": gq_norm,
        "rational_r": config.params.rational_r(),
        "derivation_chain": chain,
    });
    let summary = Summary { status: "evaluated".into(), pass: true, exit_code: exit::PASS, warnings: base_warnings(config) };
    Ok(report(config, fallback_constants(config, gq_norm)?, results, summary))
}
