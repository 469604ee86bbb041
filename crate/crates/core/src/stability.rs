//! Stability constants, the direct-method extractor and certificates.
//!
//! A map whose generalized-equation defect is at most `δ` on the restricted
//! region `‖x‖ + ‖y‖ ≥ d` lies within
//!
//! ```text
//! C_approx = 19(2 + |r| + |s|) / (2|rs|) · δ
//! ```
//!
//! of the quadratic map `Q(x) = lim 4⁻ⁿ f(2ⁿx)`. [`certify`] estimates `δ`
//! from samples, extracts `Q` at probe points and compares.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};
use crate::quadratic::{self, EquationParams, MapHandle, MapKind};
use crate::space::{self, sample_pairs_restricted, sample_vectors, Sampler, Spaces};

/// Default iteration cap: `‖2²⁶x‖²` stays inside the exact-integer range of
/// `f64` for moderate `‖x‖`.
pub const DEFAULT_MAX_ITERS: usize = 26;
/// Default relative convergence tolerance of the extractor.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Relative slack on the certificate comparison.
pub const CERT_SLACK: f64 = 1e-9;

/// Radial thresholds and bound constants for given `(r, s)`, `d`, `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct StabilityConstants {
    pub d: f64,
    pub delta: f64,
    /// `4d(1/|r| + |1 − 1/|r||)`.
    pub M: f64,
    /// `4M`: beyond `‖x‖+‖y‖ ≥ K` the classical defect is at most `C_restricted`.
    pub K: f64,
    /// `4(2+|r|+|s|)/|rs| · δ`.
    pub C_restricted: f64,
    /// `19(2+|r|+|s|)/|rs| · δ`.
    pub C_global: f64,
    /// `C_global / 2`.
    pub C_approx: f64,
}

impl StabilityConstants {
    pub fn compute(params: &EquationParams, d: f64, delta: f64) -> Result<Self> {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(LabError::InvalidParameter(format!("d must be ≥ 0, got {d}")));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(LabError::InvalidParameter(format!("delta must be ≥ 0, got {delta}")));
        }
        let (r, s) = (params.r().abs(), params.s().abs());
        let rs = r * s;
        if rs == 0.0 {
            return Err(LabError::InvalidParameter("rs must be nonzero".into()));
        }
        let m = 4.0 * d * (1.0 / r + (1.0 - 1.0 / r).abs());
        let weight = (2.0 + r + s) / rs;
        let c_global = 19.0 * weight * delta;
        Ok(Self {
            d,
            delta,
            M: m,
            K: 4.0 * m,
            C_restricted: 4.0 * weight * delta,
            C_global: c_global,
            C_approx: c_global / 2.0,
        })
    }
}

/// See [`StabilityConstants::compute`].
pub fn stability_constants(params: &EquationParams, d: f64, delta: f64) -> Result<StabilityConstants> {
    StabilityConstants::compute(params, d, delta)
}

/// Iteration limits for [`extract_quadratic`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractOptions {
    pub max_iters: usize,
    /// Stop once `‖Δₙ‖ ≤ tol·(1 + ‖Qₙ‖)`.
    pub tol: f64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self { max_iters: DEFAULT_MAX_ITERS, tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionDiagnostics {
    pub iterations: usize,
    /// `‖4⁻ⁿf(2ⁿx) − 4⁻⁽ⁿ⁻¹⁾f(2ⁿ⁻¹x)‖₂` for `n = 1, 2, …`.
    pub deviations: Vec<f64>,
    pub converged: bool,
    /// Geometric tail `Δₙ/3`, the remaining change if deviations keep
    /// shrinking by 4 per step.
    pub tail_estimate: f64,
}

/// Extraction that hit a non-finite value; carries the partial diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionAborted {
    pub error: LabError,
    pub diagnostics: ExtractionDiagnostics,
}

/// Direct-method limit `4⁻ⁿ f(2ⁿx)` at one point.
pub fn extract_quadratic(
    f: &MapHandle,
    x: &[f64],
    opts: &ExtractOptions,
) -> Result<(Vec<f64>, ExtractionDiagnostics)> {
    extract_with_diagnostics(f, x, opts).map_err(|a| a.error)
}

/// As [`extract_quadratic`], keeping diagnostics when the iteration aborts.
pub fn extract_with_diagnostics(
    f: &MapHandle,
    x: &[f64],
    opts: &ExtractOptions,
) -> std::result::Result<(Vec<f64>, ExtractionDiagnostics), ExtractionAborted> {
    let mut diag = ExtractionDiagnostics {
        iterations: 0,
        deviations: Vec::new(),
        converged: false,
        tail_estimate: f64::INFINITY,
    };
    let abort = |error: LabError, diagnostics: ExtractionDiagnostics| ExtractionAborted { error, diagnostics };
    if f.kind() == MapKind::Tabulated {
        return Err(abort(LabError::TabulatedMap(f.label().to_string()), diag));
    }
    if opts.max_iters == 0 {
        return Err(abort(LabError::InvalidParameter("max_iters must be ≥ 1".into()), diag));
    }
    if let Err(e) = check_dim(f.domain_dim(), x.len()) {
        return Err(abort(e, diag));
    }
    let mut point = x.to_vec();
    let mut prev = f.call(&point);
    if prev.iter().any(|v| !v.is_finite()) {
        return Err(abort(LabError::NonFinite { iteration: 0 }, diag));
    }
    let mut weight = 1.0_f64;
    for n in 1..=opts.max_iters {
        for c in point.iter_mut() {
            *c *= 2.0;
        }
        weight *= 0.25;
        let next: Vec<f64> = f.call(&point).into_iter().map(|v| v * weight).collect();
        diag.iterations = n;
        if next.iter().any(|v| !v.is_finite()) || point.iter().any(|v| !v.is_finite()) {
            return Err(abort(LabError::NonFinite { iteration: n }, diag));
        }
        let dev = space::euclidean_norm(&space::sub(&next, &prev));
        if !dev.is_finite() {
            return Err(abort(LabError::NonFinite { iteration: n }, diag));
        }
        diag.deviations.push(dev);
        diag.tail_estimate = dev / 3.0;
        prev = next;
        if dev <= opts.tol * (1.0 + space::euclidean_norm(&prev)) {
            diag.converged = true;
            break;
        }
    }
    Ok((prev, diag))
}

/// Empirical sup of `‖residual_gq‖` over restricted pairs. A lower bound on
/// the true supremum.
pub fn estimate_delta_restricted(
    f: &MapHandle,
    params: &EquationParams,
    d: f64,
    spaces: &Spaces,
    sampler: &Sampler,
) -> Result<f64> {
    Ok(restricted_residuals(f, params, d, spaces, sampler)?
        .iter()
        .fold(0.0_f64, |m, s| m.max(s.residual_norm)))
}

/// One sampled pair and the norm of its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub residual_norm: f64,
}

/// Generalized-equation residual norms on `‖x‖+‖y‖ ≥ d`, in sample order.
pub fn restricted_residuals(
    f: &MapHandle,
    params: &EquationParams,
    d: f64,
    spaces: &Spaces,
    sampler: &Sampler,
) -> Result<Vec<ResidualSample>> {
    check_maps(f, spaces)?;
    let pairs = sample_pairs_restricted(&spaces.domain, d, sampler)?;
    Ok(pairs
        .into_par_iter()
        .map(|(x, y)| {
            let res = quadratic::residual_gq_unchecked(f, params, &x, &y);
            let residual_norm = spaces.codomain.norm_unchecked(&res);
            ResidualSample { x, y, residual_norm }
        })
        .collect())
}

fn check_maps(f: &MapHandle, spaces: &Spaces) -> Result<()> {
    check_dim(spaces.domain.dim(), f.domain_dim())?;
    check_dim(spaces.codomain.dim(), f.codomain_dim())
}

/// Extraction outcome at one probe point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    /// Extracted `Q(x)`; absent when extraction aborted.
    pub q: Option<Vec<f64>>,
    pub deviation: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub error: Option<String>,
}

fn probe(f: &MapHandle, x: Vec<f64>, spaces: &Spaces, opts: &ExtractOptions) -> ProbeResult {
    let fx = f.call(&x);
    match extract_with_diagnostics(f, &x, opts) {
        Ok((q, diag)) => {
            let deviation = spaces.codomain.norm_unchecked(&space::sub(&fx, &q));
            ProbeResult {
                x,
                f: fx,
                q: Some(q),
                deviation: Some(deviation),
                iterations: diag.iterations,
                converged: diag.converged,
                error: None,
            }
        }
        Err(a) => ProbeResult {
            x,
            f: fx,
            q: None,
            deviation: None,
            iterations: a.diagnostics.iterations,
            converged: false,
            error: Some(a.error.to_string()),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// Knobs for [`certify`] beyond the sampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub extract: ExtractOptions,
    /// Analytic `δ` used for the bound in place of the sampled `δ̂`.
    pub delta_override: Option<f64>,
    /// Probes on the unit sphere.
    pub unit_probes: usize,
    /// Probes taken from the first restricted sample points.
    pub restricted_probes: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { extract: ExtractOptions::default(), delta_override: None, unit_probes: 32, restricted_probes: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub params: EquationParams,
    pub d: f64,
    /// Constants evaluated at the `δ` the bound was built from.
    pub constants: StabilityConstants,
    /// Sampled sup of the generalized defect on the restricted region.
    pub delta_hat: f64,
    /// `"observed"` or `"override"`.
    pub delta_source: String,
    pub probes: Vec<ProbeResult>,
    pub max_deviation: f64,
    pub bound_used: f64,
    /// Sup of `‖f(x) − f(−x)‖` over probes; nonzero means `f` is not even.
    pub evenness_defect: f64,
    pub warnings: Vec<String>,
    pub status: CertificateStatus,
    pub pass: bool,
    pub seed: u64,
    pub samples: usize,
}

/// Sample `δ̂`, compute the constants, extract `Q` at the probes and check
/// `max ‖f − Q‖ ≤ C_approx(δ)`.
pub fn certify(
    f: &MapHandle,
    params: &EquationParams,
    d: f64,
    spaces: &Spaces,
    sampler: &Sampler,
    opts: &CertifyOptions,
) -> Result<StabilityCertificate> {
    let residuals = restricted_residuals(f, params, d, spaces, sampler)?;
    let delta_hat = residuals.iter().fold(0.0_f64, |m, s| m.max(s.residual_norm));
    let (delta, delta_source) = match opts.delta_override {
        Some(v) => (v, "override"),
        None => (delta_hat, "observed"),
    };
    let constants = StabilityConstants::compute(params, d, delta)?;

    let mut points = if opts.unit_probes > 0 {
        let unit = Sampler::annulus(sampler.seed ^ 0xC3A5_C85C_97CB_3127, opts.unit_probes, 1.0, 1.0);
        sample_vectors(&spaces.domain, &unit)?
    } else {
        Vec::new()
    };
    points.extend(residuals.iter().take(opts.restricted_probes).map(|s| s.x.clone()));
    let probes: Vec<ProbeResult> = points
        .into_par_iter()
        .map(|x| probe(f, x, spaces, &opts.extract))
        .collect();

    let max_deviation = probes.iter().filter_map(|p| p.deviation).fold(0.0_f64, f64::max);
    let evenness_defect = probes
        .iter()
        .map(|p| spaces.codomain.norm_unchecked(&space::sub(&p.f, &f.call(&space::scale(-1.0, &p.x)))))
        .fold(0.0_f64, f64::max);
    let f_scale = probes.iter().map(|p| spaces.codomain.norm_unchecked(&p.f)).fold(0.0_f64, f64::max);

    let mut warnings = Vec::new();
    if evenness_defect > 1e-12 * (1.0 + f_scale) {
        warnings.push(format!("map is not even: sup ‖f(x) − f(−x)‖ = {evenness_defect:e} over probes"));
    }
    if params.small_rs_warning() {
        warnings.push(format!("|rs| = {:e} < 1e-2: the bound grows like 1/|rs| and is likely vacuous", params.rs().abs()));
    }
    if delta_source == "observed" {
        warnings.push("bound computed from observed δ̂, a lower bound on the true δ".to_string());
    }
    if spaces.domain.is_quasi_norm() {
        warnings.push("domain carries a quasi-norm (p < 1)".to_string());
    }

    let bound_used = constants.C_approx;
    let extraction_ok = probes.iter().all(|p| p.error.is_none() && p.converged);
    let status = if !extraction_ok {
        warnings.push("extraction failed or did not converge at some probe".to_string());
        CertificateStatus::Inconclusive
    } else if max_deviation <= bound_used + CERT_SLACK * (1.0 + bound_used) {
        CertificateStatus::Pass
    } else {
        CertificateStatus::Fail
    };
    Ok(StabilityCertificate {
        params: *params,
        d,
        constants,
        delta_hat,
        delta_source: delta_source.to_string(),
        probes,
        max_deviation,
        bound_used,
        evenness_defect,
        warnings,
        status,
        pass: status == CertificateStatus::Pass,
        seed: sampler.seed,
        samples: sampler.count,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CzerwikReport {
    /// Sampled sup of the classical defect over unrestricted pairs.
    pub delta: f64,
    pub bound: f64,
    pub max_deviation: f64,
    pub probes: Vec<ProbeResult>,
    pub within_bound: bool,
    /// Max over probes and `t ∈ {2, 3, 1/2}` of `‖Q(tx) − t²Q(x)‖/(1 + t²‖Q(x)‖)`.
    pub homogeneity_defect: f64,
    pub homogeneous: bool,
    pub converged: bool,
}

/// Scalars used for the homogeneity check.
pub const HOMOGENEITY_SCALES: [f64; 3] = [2.0, 3.0, 0.5];

/// Checks the classical-equation bound `‖f − Q‖ ≤ δ/2` and `Q(tx) = t²Q(x)`.
pub fn verify_czerwik(
    f: &MapHandle,
    spaces: &Spaces,
    sampler: &Sampler,
    opts: &ExtractOptions,
) -> Result<CzerwikReport> {
    check_maps(f, spaces)?;
    let pairs = sample_pairs_restricted(&spaces.domain, 0.0, sampler)?;
    let delta = pairs
        .par_iter()
        .map(|(x, y)| spaces.codomain.norm_unchecked(&quadratic::residual_q_unchecked(f, x, y)))
        .reduce(|| 0.0, f64::max);
    let bound = delta / 2.0;

    let unit = Sampler::annulus(sampler.seed ^ 0xC3A5_C85C_97CB_3127, 32, 1.0, 1.0);
    let mut points = sample_vectors(&spaces.domain, &unit)?;
    points.extend(pairs.iter().take(32).map(|(x, _)| x.clone()));

    let probes: Vec<ProbeResult> = points.into_par_iter().map(|x| probe(f, x, spaces, opts)).collect();
    if let Some(p) = probes.iter().find(|p| p.error.is_some()) {
        return Err(LabError::NonFinite { iteration: p.iterations });
    }
    let max_deviation = probes.iter().filter_map(|p| p.deviation).fold(0.0_f64, f64::max);

    let homogeneity_defect = probes
        .par_iter()
        .map(|p| -> Result<f64> {
            let q = p.q.as_ref().expect("checked above");
            let qn = spaces.codomain.norm_unchecked(q);
            let mut worst = 0.0_f64;
            for t in HOMOGENEITY_SCALES {
                let (qt, _) = extract_quadratic(f, &space::scale(t, &p.x), opts)?;
                let diff = space::lin_comb(1.0, &qt, -t * t, q);
                worst = worst.max(spaces.codomain.norm_unchecked(&diff) / (1.0 + t * t * qn));
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    Ok(CzerwikReport {
        delta,
        bound,
        max_deviation,
        within_bound: max_deviation <= bound + opts.tol.max(CERT_SLACK) * (1.0 + bound),
        homogeneity_defect,
        homogeneous: homogeneity_defect <= opts.tol.max(CERT_SLACK),
        converged: probes.iter().all(|p| p.converged),
        probes,
    })
}
