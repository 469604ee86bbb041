//! Norm identities: the parallelogram law, the generalized norm identity
//! with free exponents, inner-product detection and exponent scans.
//!
//! A norm comes from an inner product exactly when the parallelogram law
//! holds. The generalized identity
//!
//! ```text
//! ‖rx+sy‖ᵖ + rs‖x−y‖^q = r‖x‖ᵘ + s‖y‖ᵛ
//! ```
//!
//! holding for all `x, y` forces `p = q = u = v = 2`; the deterministic
//! witnesses `y = 0`, `y = x` and `x = 0` expose every other tuple.
//! Acceptance here is always a statement about a finite sample.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};
use crate::quadratic::EquationParams;
use crate::space::{self, basis, sample_pairs, sample_vectors, Sampler, SamplerMode, SpaceSpec};

/// Four nonzero exponents `(p, q, u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub p: f64,
    pub q: f64,
    pub u: f64,
    pub v: f64,
}

impl Exponents {
    pub fn new(p: f64, q: f64, u: f64, v: f64) -> Result<Self> {
        for e in [p, q, u, v] {
            if e == 0.0 || !e.is_finite() {
                return Err(LabError::InvalidParameter(format!(
                    "exponents must be finite and nonzero, got ({p}, {q}, {u}, {v})"
                )));
            }
        }
        Ok(Self { p, q, u, v })
    }

    pub const QUADRATIC: Exponents = Exponents { p: 2.0, q: 2.0, u: 2.0, v: 2.0 };

    pub fn has_negative(&self) -> bool {
        [self.p, self.q, self.u, self.v].iter().any(|e| *e < 0.0)
    }

    /// `{1, 2, 3}⁴` in lexicographic order.
    pub fn default_grid() -> Vec<Exponents> {
        let vals = [1.0, 2.0, 3.0];
        let mut grid = Vec::with_capacity(81);
        for p in vals {
            for q in vals {
                for u in vals {
                    for v in vals {
                        grid.push(Exponents { p, q, u, v });
                    }
                }
            }
        }
        grid
    }
}

/// `‖x+y‖² + ‖x−y‖² − 2‖x‖² − 2‖y‖²`.
pub fn parallelogram_defect(space: &SpaceSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(space.dim(), x.len())?;
    check_dim(space.dim(), y.len())?;
    Ok(parallelogram_unchecked(space, x, y))
}

fn parallelogram_unchecked(space: &SpaceSpec, x: &[f64], y: &[f64]) -> f64 {
    let sq = |v: &[f64]| {
        let n = space.norm_unchecked(v);
        n * n
    };
    sq(&space::add(x, y)) + sq(&space::sub(x, y)) - 2.0 * sq(x) - 2.0 * sq(y)
}

fn power(base: f64, e: f64, what: &str) -> Result<f64> {
    if base == 0.0 && e < 0.0 {
        return Err(LabError::UndefinedValue(format!("‖{what}‖ = 0 raised to negative exponent {e}")));
    }
    Ok(base.powf(e))
}

/// `‖rx+sy‖ᵖ + rs‖x−y‖^q − r‖x‖ᵘ − s‖y‖ᵛ`.
///
/// Meant for `0 < r < 1`; other `r` are evaluated all the same.
pub fn gq_norm_defect(
    space: &SpaceSpec,
    params: &EquationParams,
    exps: &Exponents,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    check_dim(space.dim(), x.len())?;
    check_dim(space.dim(), y.len())?;
    let (r, s) = (params.r(), params.s());
    let n = |v: &[f64]| space.norm_unchecked(v);
    Ok(power(n(&space::lin_comb(r, x, s, y)), exps.p, "rx+sy")?
        + params.rs() * power(n(&space::sub(x, y)), exps.q, "x−y")?
        - r * power(n(x), exps.u, "x")?
        - s * power(n(y), exps.v, "y")?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerProductVerdict {
    pub accepted: bool,
    /// Largest `|parallelogram defect|` seen.
    pub max_parallelogram_defect: f64,
    /// Largest `|defect| / (1 + ‖x‖² + ‖y‖²)`, the quantity compared with `tol`.
    pub max_normalized_defect: f64,
    /// Pair attaining `max_parallelogram_defect`.
    pub witness: (Vec<f64>, Vec<f64>),
    /// Largest `|defect|` over basis pairs `(eᵢ, eⱼ)`, `i < j`; absent in dimension 1.
    pub basis_defect: Option<f64>,
    /// Polarization of `‖·‖²` on the basis, rows of `G`.
    pub recovered_gram: Option<Vec<Vec<f64>>>,
    /// `max |‖x‖² − xᵀGx| / (1 + ‖x‖²)` over sampled `x`.
    pub bilinearity_defect: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Parallelogram-law test on sampled pairs plus basis pairs; on acceptance
/// recovers the Gram matrix and checks that it reproduces the norm.
pub fn detect_inner_product(space: &SpaceSpec, sampler: &Sampler, tol: f64) -> Result<InnerProductVerdict> {
    let n = space.dim();
    let mut pairs = sample_pairs(space, sampler)?;
    let mut basis_defect: Option<f64> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let (ei, ej) = (basis(n, i), basis(n, j));
            let d = parallelogram_unchecked(space, &ei, &ej).abs();
            basis_defect = Some(basis_defect.map_or(d, |m| m.max(d)));
            pairs.push((ei, ej));
        }
    }
    let (max_abs, max_norm, wi) = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (x, y))| {
            let d = parallelogram_unchecked(space, x, y).abs();
            let scale = 1.0 + space.norm_unchecked(x).powi(2) + space.norm_unchecked(y).powi(2);
            (d, d / scale, i)
        })
        .reduce(
            || (0.0, 0.0, usize::MAX),
            |a, b| {
                let (abs, idx) = if b.0 > a.0 || (b.0 == a.0 && b.2 < a.2) { (b.0, b.2) } else { (a.0, a.2) };
                (abs, a.1.max(b.1), idx)
            },
        );
    let witness = pairs.get(wi).cloned().unwrap_or_else(|| pairs[0].clone());
    let mut verdict = InnerProductVerdict {
        accepted: false,
        max_parallelogram_defect: max_abs,
        max_normalized_defect: max_norm,
        witness,
        basis_defect,
        recovered_gram: None,
        bilinearity_defect: None,
        samples: pairs.len(),
        seed: sampler.seed,
        tol,
    };
    if max_norm > tol {
        return Ok(verdict);
    }

    let sq = |v: &[f64]| space.norm_unchecked(v).powi(2);
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (basis(n, i), basis(n, j));
            gram[i][j] = (sq(&space::add(&ei, &ej)) - sq(&space::sub(&ei, &ej))) / 4.0;
        }
    }
    let flat: Vec<f64> = gram.iter().flatten().copied().collect();
    let symmetric = (0..n).all(|i| (0..n).all(|j| (gram[i][j] - gram[j][i]).abs() <= tol * (1.0 + gram[i][j].abs())));
    let positive = DMatrix::from_row_slice(n, n, &flat).cholesky().is_some();

    let probe = match sampler.mode {
        SamplerMode::RestrictedPairs { .. } => sampler.with_mode(SamplerMode::Ball),
        _ => *sampler,
    };
    let xs = sample_vectors(space, &probe)?;
    let bilinearity = xs
        .par_iter()
        .map(|x| {
            let gx: f64 = (0..n).map(|i| x[i] * space::dot(&gram[i], x)).sum();
            let nx = sq(x);
            (nx - gx).abs() / (1.0 + nx)
        })
        .reduce(|| 0.0, f64::max);

    verdict.accepted = symmetric && positive && bilinearity <= tol;
    verdict.recovered_gram = Some(gram);
    verdict.bilinearity_defect = Some(bilinearity);
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub exps: Exponents,
    /// Sup of `|gq_norm_defect|`; absent when evaluation was undefined.
    pub sup_defect: Option<f64>,
    pub error: Option<String>,
    /// Zero-vector witnesses were skipped because an exponent is negative.
    pub excluded_zero_witnesses: bool,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentScan {
    pub rows: Vec<ScanRow>,
    /// Tuples with `sup_defect ≤ tol`, in grid order.
    pub flagged: Vec<Exponents>,
    /// Set when `r ∉ (0, 1)`.
    pub r_outside_unit_interval: bool,
    pub witness_pairs: usize,
    pub sampled_pairs: usize,
    pub tol: f64,
}

/// Scales of the deterministic witness vectors `t·eᵢ`.
pub const WITNESS_SCALES: [f64; 3] = [0.5, 1.0, 2.0];

/// Witness pairs `(w, 0)`, `(w, w)`, `(0, w)` for `w = t·eᵢ`; these touch a
/// zero vector. Basis pairs `(eᵢ, eⱼ)` never do.
fn witness_pairs(n: usize) -> (Vec<(Vec<f64>, Vec<f64>)>, Vec<(Vec<f64>, Vec<f64>)>) {
    let zero = vec![0.0; n];
    let mut touching = Vec::new();
    let mut clean = Vec::new();
    for i in 0..n {
        for t in WITNESS_SCALES {
            let w = space::scale(t, &basis(n, i));
            touching.push((w.clone(), zero.clone()));
            touching.push((w.clone(), w.clone()));
            touching.push((zero.clone(), w));
        }
        for j in 0..n {
            if i != j {
                clean.push((basis(n, i), basis(n, j)));
            }
        }
    }
    (touching, clean)
}

/// Sup of the generalized norm-identity defect per exponent tuple, over
/// sampled pairs and the deterministic witness set.
pub fn exponent_scan(
    space: &SpaceSpec,
    params: &EquationParams,
    grid: &[Exponents],
    sampler: &Sampler,
    tol: f64,
) -> Result<ExponentScan> {
    if grid.is_empty() {
        return Err(LabError::InvalidParameter("exponent grid is empty".into()));
    }
    for e in grid {
        Exponents::new(e.p, e.q, e.u, e.v)?;
    }
    let sampled = sample_pairs(space, sampler)?;
    let (touching, clean) = witness_pairs(space.dim());
    let rows: Vec<ScanRow> = grid
        .par_iter()
        .map(|exps| {
            let exclude = exps.has_negative();
            let mut pairs: Vec<&(Vec<f64>, Vec<f64>)> = clean.iter().chain(sampled.iter()).collect();
            if !exclude {
                pairs.extend(touching.iter());
            }
            let sup = pairs.iter().try_fold(0.0_f64, |m, (x, y)| {
                gq_norm_defect(space, params, exps, x, y).map(|d| m.max(d.abs()))
            });
            match sup {
                Ok(s) => ScanRow { exps: *exps, sup_defect: Some(s), error: None, excluded_zero_witnesses: exclude, flagged: s <= tol },
                Err(e) => ScanRow {
                    exps: *exps,
                    sup_defect: None,
                    error: Some(e.to_string()),
                    excluded_zero_witnesses: exclude,
                    flagged: false,
                },
            }
        })
        .collect();
    Ok(ExponentScan {
        flagged: rows.iter().filter(|r| r.flagged).map(|r| r.exps).collect(),
        rows,
        r_outside_unit_interval: !(params.r() > 0.0 && params.r() < 1.0),
        witness_pairs: touching.len() + clean.len(),
        sampled_pairs: sampled.len(),
        tol,
    })
}
