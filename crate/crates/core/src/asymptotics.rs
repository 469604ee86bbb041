//! Shell-wise defect profiles and the asymptotic-quadraticity verdict.
//!
//! Shell `n` holds pairs with `‖x‖ + ‖y‖ ∈ [n, n+1)`. Pairs are drawn by
//! picking `t` uniformly in the shell, splitting it uniformly between `‖x‖`
//! and `‖y‖`, and choosing independent random directions, so membership is
//! exact up to rounding (re-drawn when rounding leaves the shell).

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};
use crate::perturb::mix64;
use crate::quadratic::{self, EquationParams, MapHandle};
use crate::space::{self, point_at_radius, Spaces};

/// Fewest shells [`asymptotic_verdict`] will judge.
pub const MIN_SHELLS: usize = 4;
/// Relative drop between consecutive tail shells still read as "flat".
pub const SAMPLING_JITTER: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub n: u32,
    /// Sampled sup of `‖residual_gq‖` in the shell.
    pub delta_n: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellProfile {
    pub n_min: u32,
    pub n_max: u32,
    pub shells: Vec<Shell>,
    pub seed: u64,
}

impl ShellProfile {
    pub fn deltas(&self) -> Vec<f64> {
        self.shells.iter().map(|s| s.delta_n).collect()
    }
}

/// Draws one pair in shell `n`; also returns its exact `‖x‖ + ‖y‖`.
pub fn shell_pair<R: Rng>(spaces: &Spaces, n: u32, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let lo = n as f64;
    let hi = lo + 1.0;
    loop {
        let t = lo + rng.random::<f64>();
        let a = rng.random::<f64>() * t;
        let x = point_at_radius(&spaces.domain, a, rng);
        let y = point_at_radius(&spaces.domain, t - a, rng);
        let sum = spaces.domain.norm_unchecked(&x) + spaces.domain.norm_unchecked(&y);
        if sum >= lo && sum < hi {
            return (x, y);
        }
    }
}

/// Sup of the generalized defect on each shell `n_min ..= n_max`.
pub fn shell_delta_profile(
    f: &MapHandle,
    params: &EquationParams,
    spaces: &Spaces,
    n_min: u32,
    n_max: u32,
    per_shell_count: usize,
    seed: u64,
) -> Result<ShellProfile> {
    check_dim(spaces.domain.dim(), f.domain_dim())?;
    check_dim(spaces.codomain.dim(), f.codomain_dim())?;
    if n_max <= n_min {
        return Err(LabError::InvalidParameter(format!("need n_max > n_min, got [{n_min}, {n_max}]")));
    }
    if per_shell_count == 0 {
        return Err(LabError::InvalidParameter("per_shell_count must be ≥ 1".into()));
    }
    let shells = (n_min..=n_max)
        .map(|n| {
            let shell_seed = mix64(seed ^ mix64(n as u64 + 1));
            let delta_n = (0..per_shell_count as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = space::stream(shell_seed, i);
                    let (x, y) = shell_pair(spaces, n, &mut rng);
                    spaces.codomain.norm_unchecked(&quadratic::residual_gq_unchecked(f, params, &x, &y))
                })
                .reduce(|| 0.0, f64::max);
            Shell { n, delta_n, samples: per_shell_count }
        })
        .collect();
    Ok(ShellProfile { n_min, n_max, shells, seed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AsymptoticallyQuadratic,
    PersistentDefect,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticVerdict {
    pub verdict: Verdict,
    /// Max `δₙ` over the last quarter of shells.
    pub tail_max: f64,
    pub tail_window: usize,
    pub half_window: usize,
    /// Last half of the profile never drops by more than the jitter allowance.
    pub tail_non_decreasing: bool,
    pub decay_tol: f64,
    pub jitter: f64,
}

/// Tail-window decision rule:
///
/// * tail max over the last quarter `≤ decay_tol` → asymptotically quadratic;
/// * tail max `≥ 10·decay_tol` and the last half non-decreasing (up to
///   [`SAMPLING_JITTER`]) → persistent defect;
/// * otherwise inconclusive.
pub fn asymptotic_verdict(profile: &ShellProfile, decay_tol: f64) -> Result<AsymptoticVerdict> {
    let k = profile.shells.len();
    if k < MIN_SHELLS {
        return Err(LabError::TooFewShells { got: k, min: MIN_SHELLS });
    }
    if !(decay_tol >= 0.0) {
        return Err(LabError::InvalidParameter(format!("decay_tol must be ≥ 0, got {decay_tol}")));
    }
    let deltas = profile.deltas();
    let tail_window = k.div_ceil(4);
    let half_window = k.div_ceil(2);
    let tail_max = deltas[k - tail_window..].iter().copied().fold(0.0, f64::max);
    let tail_non_decreasing = deltas[k - half_window..]
        .windows(2)
        .all(|w| w[1] >= (1.0 - SAMPLING_JITTER) * w[0]);
    let verdict = if tail_max <= decay_tol {
        Verdict::AsymptoticallyQuadratic
    } else if tail_max >= 10.0 * decay_tol && tail_non_decreasing {
        Verdict::PersistentDefect
    } else {
        Verdict::Inconclusive
    };
    Ok(AsymptoticVerdict {
        verdict,
        tail_max,
        tail_window,
        half_window,
        tail_non_decreasing,
        decay_tol,
        jitter: SAMPLING_JITTER,
    })
}
