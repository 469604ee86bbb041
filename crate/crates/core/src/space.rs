//! Finite-dimensional normed spaces and seeded samplers.
//!
//! Vectors are plain `Vec<f64>` / `&[f64]`. Every sample index owns an
//! independent ChaCha stream derived from `(seed, index)`, so generation is
//! order-independent and may run on any number of threads.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};

/// Upper bound on rejection attempts per restricted pair.
const MAX_REJECTIONS: usize = 100_000;

/// Which norm a [`SpaceSpec`] carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormKind {
    Euclidean,
    /// `(Σ|xᵢ|ᵖ)^(1/p)`; a quasi-norm when `p < 1`.
    PNorm { p: f64 },
    /// `sqrt(xᵀAx)` for a symmetric positive-definite `A` (row-major).
    WeightedQuadratic { gram: Vec<f64> },
    SupNorm,
}

/// A real vector space `ℝⁿ` with a chosen norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    dim: usize,
    norm: NormKind,
}

impl SpaceSpec {
    pub fn new(dim: usize, norm: NormKind) -> Result<Self> {
        if dim == 0 {
            return Err(LabError::InvalidParameter("dim must be at least 1".into()));
        }
        let norm = match norm {
            NormKind::PNorm { p } if p == f64::INFINITY => NormKind::SupNorm,
            NormKind::PNorm { p } if !(p > 0.0) || p.is_nan() => {
                return Err(LabError::InvalidParameter(format!(
                    "p-norm exponent must be positive, got {p}"
                )))
            }
            NormKind::WeightedQuadratic { gram } => {
                check_gram(dim, &gram)?;
                NormKind::WeightedQuadratic { gram }
            }
            other => other,
        };
        Ok(Self { dim, norm })
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(dim, NormKind::Euclidean)
    }

    pub fn p_norm(dim: usize, p: f64) -> Result<Self> {
        Self::new(dim, NormKind::PNorm { p })
    }

    pub fn sup(dim: usize) -> Result<Self> {
        Self::new(dim, NormKind::SupNorm)
    }

    /// Weighted quadratic norm from the rows of `A`.
    pub fn weighted(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut gram = Vec::with_capacity(dim * dim);
        for row in rows {
            check_dim(dim, row.len())?;
            gram.extend_from_slice(row);
        }
        Self::new(dim, NormKind::WeightedQuadratic { gram })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_kind(&self) -> &NormKind {
        &self.norm
    }

    /// True for `p_norm` with `0 < p < 1`, which violates the triangle inequality.
    pub fn is_quasi_norm(&self) -> bool {
        matches!(self.norm, NormKind::PNorm { p } if p < 1.0)
    }

    /// `‖x‖`, with a dimension check.
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(self.norm_unchecked(x))
    }

    pub(crate) fn norm_unchecked(&self, x: &[f64]) -> f64 {
        match &self.norm {
            NormKind::Euclidean => euclidean_norm(x),
            NormKind::SupNorm => x.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
            NormKind::PNorm { p } => {
                let p = *p;
                if p == 1.0 {
                    return x.iter().map(|v| v.abs()).sum();
                }
                // Scale by the largest entry to keep |xᵢ|ᵖ in range.
                let big = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                if big == 0.0 {
                    return 0.0;
                }
                let s: f64 = x.iter().map(|v| (v.abs() / big).powf(p)).sum();
                big * s.powf(1.0 / p)
            }
            NormKind::WeightedQuadratic { gram } => {
                let n = self.dim;
                let mut acc = 0.0;
                for i in 0..n {
                    let row = &gram[i * n..(i + 1) * n];
                    acc += x[i] * dot(row, x);
                }
                acc.max(0.0).sqrt()
            }
        }
    }
}

/// Domain `X` and codomain `Y` of a map under study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spaces {
    pub domain: SpaceSpec,
    pub codomain: SpaceSpec,
}

impl Spaces {
    pub fn new(domain: SpaceSpec, codomain: SpaceSpec) -> Self {
        Self { domain, codomain }
    }

    /// Euclidean `ℝⁿ → ℝᵐ`.
    pub fn euclidean(n: usize, m: usize) -> Result<Self> {
        Ok(Self::new(SpaceSpec::euclidean(n)?, SpaceSpec::euclidean(m)?))
    }
}

/// Convenience wrapper matching the operation name used throughout the docs.
pub fn norm_eval(space: &SpaceSpec, x: &[f64]) -> Result<f64> {
    space.norm(x)
}

fn check_gram(dim: usize, gram: &[f64]) -> Result<()> {
    check_dim(dim * dim, gram.len())?;
    if gram.iter().any(|v| !v.is_finite()) {
        return Err(LabError::InvalidParameter("Gram matrix has non-finite entries".into()));
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            if gram[i * dim + j] != gram[j * dim + i] {
                return Err(LabError::InvalidParameter(format!(
                    "Gram matrix is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    if DMatrix::from_row_slice(dim, dim, gram).cholesky().is_none() {
        return Err(LabError::InvalidParameter("Gram matrix is not positive-definite".into()));
    }
    Ok(())
}

/// Sampling region of a [`Sampler`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerMode {
    Ball,
    Annulus { r_min: f64, r_max: f64 },
    RestrictedPairs { d: f64 },
}

/// Deterministic sample generator.
///
/// Ball samples are a normalized Gaussian direction scaled to a radius drawn
/// uniformly from `[0, radius_max]`. This is not uniform in volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampler {
    pub seed: u64,
    pub count: usize,
    pub radius_max: f64,
    pub mode: SamplerMode,
}

impl Sampler {
    pub fn ball(seed: u64, count: usize, radius_max: f64) -> Self {
        Self { seed, count, radius_max, mode: SamplerMode::Ball }
    }

    pub fn annulus(seed: u64, count: usize, r_min: f64, r_max: f64) -> Self {
        Self { seed, count, radius_max: r_max, mode: SamplerMode::Annulus { r_min, r_max } }
    }

    pub fn restricted(seed: u64, count: usize, radius_max: f64, d: f64) -> Self {
        Self { seed, count, radius_max, mode: SamplerMode::RestrictedPairs { d } }
    }

    /// Same sampler with another mode.
    pub fn with_mode(self, mode: SamplerMode) -> Self {
        Self { mode, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_count(self, count: usize) -> Self {
        Self { count, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(LabError::InvalidParameter("sample count must be positive".into()));
        }
        if !(self.radius_max > 0.0) || !self.radius_max.is_finite() {
            return Err(LabError::InvalidParameter(format!(
                "radius_max must be positive and finite, got {}",
                self.radius_max
            )));
        }
        Ok(())
    }
}

/// Per-index random stream.
pub(crate) fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A point with `‖x‖ = radius` in the norm of `space` along a random direction.
pub(crate) fn point_at_radius<R: Rng>(space: &SpaceSpec, radius: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..space.dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = space.norm_unchecked(&v);
        if n > 0.0 && n.is_finite() {
            let k = radius / n;
            return v.into_iter().map(|c| c * k).collect();
        }
    }
}

fn ball_point<R: Rng>(space: &SpaceSpec, radius_max: f64, rng: &mut R) -> Vec<f64> {
    let radius = rng.random::<f64>() * radius_max;
    point_at_radius(space, radius, rng)
}

/// Vectors from the sampler's ball or annulus.
pub fn sample_vectors(space: &SpaceSpec, sampler: &Sampler) -> Result<Vec<Vec<f64>>> {
    sampler.validate()?;
    let (lo, hi) = match sampler.mode {
        SamplerMode::Ball => (0.0, sampler.radius_max),
        SamplerMode::Annulus { r_min, r_max } => {
            if r_min > r_max {
                return Err(LabError::InvalidParameter(format!(
                    "annulus r_min {r_min} exceeds r_max {r_max}"
                )));
            }
            if r_min < 0.0 || !r_max.is_finite() {
                return Err(LabError::InvalidParameter("annulus radii out of range".into()));
            }
            (r_min, r_max)
        }
        SamplerMode::RestrictedPairs { .. } => {
            return Err(LabError::InvalidParameter(
                "restricted_pairs mode produces pairs; use sample_pairs_restricted".into(),
            ))
        }
    };
    Ok((0..sampler.count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(sampler.seed, i);
            let radius = lo + rng.random::<f64>() * (hi - lo);
            point_at_radius(space, radius, &mut rng)
        })
        .collect())
}

/// Pairs `(x, y)` with `‖x‖ + ‖y‖ ≥ d`, by rejection from independent ball samples.
pub fn sample_pairs_restricted(
    space: &SpaceSpec,
    d: f64,
    sampler: &Sampler,
) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    sampler.validate()?;
    if !(d >= 0.0) {
        return Err(LabError::InvalidParameter(format!("d must be nonnegative, got {d}")));
    }
    if 2.0 * sampler.radius_max < d {
        return Err(LabError::InfeasibleDomain { d, radius_max: sampler.radius_max });
    }
    (0..sampler.count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(sampler.seed, i);
            for _ in 0..MAX_REJECTIONS {
                let x = ball_point(space, sampler.radius_max, &mut rng);
                let y = ball_point(space, sampler.radius_max, &mut rng);
                if space.norm_unchecked(&x) + space.norm_unchecked(&y) >= d {
                    return Ok((x, y));
                }
            }
            Err(LabError::InfeasibleDomain { d, radius_max: sampler.radius_max })
        })
        .collect()
}

/// Pairs for any sampler mode: ball and annulus modes pair two independent
/// draws, restricted mode delegates to [`sample_pairs_restricted`].
pub fn sample_pairs(space: &SpaceSpec, sampler: &Sampler) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    match sampler.mode {
        SamplerMode::RestrictedPairs { d } => sample_pairs_restricted(space, d, sampler),
        _ => {
            let xs = sample_vectors(space, sampler)?;
            // Second coordinate uses a shifted seed so x and y are independent.
            let ys = sample_vectors(space, &sampler.with_seed(sampler.seed ^ 0x9E37_79B9_7F4A_7C15))?;
            Ok(xs.into_iter().zip(ys).collect())
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub fn euclidean_norm(x: &[f64]) -> f64 {
    let big = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if big == 0.0 || !big.is_finite() {
        return big;
    }
    if (1e-150..1e150).contains(&big) {
        return x.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    big * x.iter().map(|v| (v / big) * (v / big)).sum::<f64>().sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u - v).collect()
}

pub fn scale(t: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|v| t * v).collect()
}

/// `a·x + b·y`.
pub fn lin_comb(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// Unit coordinate vector `eᵢ` in `ℝⁿ`.
pub fn basis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}
