//! Test-map generators: exact quadratic forms, perturbations of them, and
//! odd linear witnesses.
//!
//! Noise is a fixed function of the input, never of call order, so a
//! perturbed map is a genuine mapping and the direct-method iteration sees
//! the same values on every evaluation.
//!
//! `uniform_bounded` noise in coordinate `k` is computed as
//!
//! ```text
//! h  = mix64(seed ^ mix64(k + 0x9E3779B97F4A7C15))
//! h  = mix64(h ^ bits(xᵢ))          for each coordinate xᵢ (−0.0 read as 0.0)
//! η  = delta · (2·(h >> 11)·2⁻⁵³ − 1)
//! ```
//!
//! with `mix64` the SplitMix64 finalizer (shifts 30/27/31, multipliers
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`). Values lie in
//! `[−delta, delta)`. Bit-exact reproduction holds on IEEE-754 binary64
//! targets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};
use crate::quadratic::{MapHandle, QuadraticForm};
use crate::space::{self, SpaceSpec};

/// Perturbation `η` added to a quadratic form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    None,
    /// `η(x) = c` in every coordinate.
    Constant { c: f64 },
    /// Hash noise in `[−delta, delta)` per coordinate.
    UniformBounded { delta: f64, seed: u64 },
    /// `η(x) = c / (1 + ‖x‖₂^alpha)` in every coordinate.
    Decay { c: f64, alpha: f64 },
    /// `η(x) = c·sin(w·x)` in every coordinate.
    Sine { c: f64, w: Vec<f64> },
}

impl NoiseModel {
    /// Coordinate-wise magnitude bound (`sup` over `x`), if any.
    pub fn sup_bound(&self) -> f64 {
        match self {
            NoiseModel::None => 0.0,
            NoiseModel::Constant { c } => c.abs(),
            NoiseModel::UniformBounded { delta, .. } => *delta,
            NoiseModel::Decay { c, .. } => c.abs(),
            NoiseModel::Sine { c, .. } => c.abs(),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            NoiseModel::UniformBounded { delta, .. } if !(*delta >= 0.0) || !delta.is_finite() => {
                Err(LabError::InvalidParameter(format!("noise bound must be ≥ 0, got {delta}")))
            }
            NoiseModel::Decay { alpha, .. } if !(*alpha > 0.0) => {
                Err(LabError::InvalidParameter(format!("decay exponent must be > 0, got {alpha}")))
            }
            NoiseModel::Sine { w, .. } => check_dim(n, w.len()),
            _ => Ok(()),
        }
    }

    /// `η(x)` as `m` values.
    pub fn sample_at(&self, x: &[f64], m: usize) -> Vec<f64> {
        match self {
            NoiseModel::None => vec![0.0; m],
            NoiseModel::Constant { c } => vec![*c; m],
            NoiseModel::UniformBounded { delta, seed } => {
                (0..m).map(|k| delta * hash_unit(*seed, k as u64, x)).collect()
            }
            NoiseModel::Decay { c, alpha } => {
                vec![c / (1.0 + space::euclidean_norm(x).powf(*alpha)); m]
            }
            NoiseModel::Sine { c, w } => vec![c * space::dot(w, x).sin(); m],
        }
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic value in `[−1, 1)` from the bits of `x`.
fn hash_unit(seed: u64, coord: u64, x: &[f64]) -> f64 {
    let mut h = mix64(seed ^ mix64(coord.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    for v in x {
        let bits = if *v == 0.0 { 0 } else { v.to_bits() };
        h = mix64(h ^ bits);
    }
    let u = (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * u - 1.0
}

/// Builds a form from `m` matrices given by rows. Non-symmetric input is
/// replaced by `(B + Bᵀ)/2`; the flag reports whether that happened.
pub fn make_quadratic(
    space_in: &SpaceSpec,
    space_out: &SpaceSpec,
    coeffs: &[Vec<Vec<f64>>],
) -> Result<(QuadraticForm, bool)> {
    let n = space_in.dim();
    check_dim(space_out.dim(), coeffs.len())?;
    let mut symmetrized = false;
    let mut flat = Vec::with_capacity(coeffs.len());
    for rows in coeffs {
        check_dim(n, rows.len())?;
        for row in rows {
            check_dim(n, row.len())?;
        }
        let mut b = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (rows[i][j], rows[j][i]);
                if u != v {
                    symmetrized = true;
                }
                b[i * n + j] = if u == v { u } else { (u + v) / 2.0 };
            }
        }
        flat.push(b);
    }
    Ok((QuadraticForm::new(n, flat)?, symmetrized))
}

/// Random symmetric form with entries uniform in `[−1, 1]`.
pub fn random_quadratic(n: usize, m: usize, seed: u64) -> QuadraticForm {
    let mut rng = space::stream(seed, u64::MAX);
    let coeffs = (0..m)
        .map(|_| {
            let mut b = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let v = rng.random_range(-1.0..=1.0);
                    b[i * n + j] = v;
                    b[j * n + i] = v;
                }
            }
            b
        })
        .collect();
    QuadraticForm::new(n, coeffs).expect("symmetric by construction")
}

/// Random `m×n` matrix with entries uniform in `[−1, 1]`, row-major rows.
pub fn random_matrix(m: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = space::stream(seed, u64::MAX - 1);
    (0..m).map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect()
}

/// `f(x) = Q(x) + η(x)`.
pub fn make_perturbed(q: &QuadraticForm, noise: &NoiseModel) -> Result<MapHandle> {
    noise.validate(q.domain_dim())?;
    let (n, m) = (q.domain_dim(), q.codomain_dim());
    let q = q.clone();
    let noise = noise.clone();
    let label = format!("quadratic+{}", noise_label(&noise));
    Ok(MapHandle::from_fn(label, n, m, move |x| {
        let mut v = q.eval_unchecked(x);
        for (a, e) in v.iter_mut().zip(noise.sample_at(x, m)) {
            *a += e;
        }
        v
    }))
}

fn noise_label(noise: &NoiseModel) -> &'static str {
    match noise {
        NoiseModel::None => "none",
        NoiseModel::Constant { .. } => "constant",
        NoiseModel::UniformBounded { .. } => "uniform",
        NoiseModel::Decay { .. } => "decay",
        NoiseModel::Sine { .. } => "sine",
    }
}

/// Odd additive witness `f(x) = Lx` for an `m×n` matrix given by rows.
pub fn make_odd_witness(l: &[Vec<f64>]) -> Result<MapHandle> {
    if l.is_empty() || l[0].is_empty() {
        return Err(LabError::InvalidParameter("witness matrix must be nonempty".into()));
    }
    let n = l[0].len();
    for row in l {
        check_dim(n, row.len())?;
    }
    let l = l.to_vec();
    Ok(MapHandle::from_fn("odd_linear", n, l.len(), move |x| {
        l.iter().map(|row| space::dot(row, x)).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{residual_gq, residual_q, EquationParams};

    fn square() -> QuadraticForm {
        QuadraticForm::new(1, vec![vec![1.0]]).unwrap()
    }

    #[test]
    fn make_quadratic_examples() {
        let (s1, s2) = (SpaceSpec::euclidean(1).unwrap(), SpaceSpec::euclidean(1).unwrap());
        let (q, sym) = make_quadratic(&s1, &s2, &[vec![vec![1.0]]]).unwrap();
        assert!(!sym);
        assert_eq!(q.eval(&[3.0]).unwrap(), vec![9.0]);

        let s2d = SpaceSpec::euclidean(2).unwrap();
        let (q, sym) = make_quadratic(&s2d, &s1, &[vec![vec![0.0, 1.0], vec![1.0, 0.0]]]).unwrap();
        assert!(!sym);
        assert_eq!(q.eval(&[3.0, 5.0]).unwrap(), vec![30.0]);

        let (q, sym) = make_quadratic(&s2d, &s1, &[vec![vec![0.0, 2.0], vec![0.0, 0.0]]]).unwrap();
        assert!(sym);
        assert_eq!(q.coeffs()[0], vec![0.0, 1.0, 1.0, 0.0]);

        assert!(make_quadratic(&s2d, &s1, &[vec![vec![1.0]]]).is_err());
    }

    #[test]
    fn perturbed_examples() {
        let f = make_perturbed(&square(), &NoiseModel::Constant { c: 5.0 }).unwrap();
        assert_eq!(f.eval(&[1.0]).unwrap(), vec![6.0]);

        let f = make_perturbed(&square(), &NoiseModel::UniformBounded { delta: 0.1, seed: 9 }).unwrap();
        for i in 0..2000 {
            let x = i as f64 * 0.37 - 300.0;
            assert!((f.eval(&[x]).unwrap()[0] - x * x).abs() <= 0.1);
        }

        let f = make_perturbed(&square(), &NoiseModel::Decay { c: 1.0, alpha: 1.0 }).unwrap();
        for x in [0.0, 0.5, -2.0, 10.0] {
            let got = f.eval(&[x]).unwrap()[0] - x * x;
            assert!((got - 1.0 / (1.0 + f64::abs(x))).abs() < 1e-12);
        }
    }

    #[test]
    fn noise_is_a_function_of_x() {
        let noise = NoiseModel::UniformBounded { delta: 1.0, seed: 3 };
        let a = noise.sample_at(&[0.25, -1.5], 3);
        let b = noise.sample_at(&[0.25, -1.5], 3);
        assert_eq!(a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), b.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
        assert_ne!(a, noise.sample_at(&[0.25, -1.25], 3));
        assert_eq!(noise.sample_at(&[-0.0], 1), noise.sample_at(&[0.0], 1));
    }

    #[test]
    fn constant_shift_residual_closed_forms() {
        let p = EquationParams::parse("1/3").unwrap();
        let q = random_quadratic(3, 2, 4);
        for c in [0.05, 1.0, -3.0, 12.5] {
            let f = make_perturbed(&q, &NoiseModel::Constant { c }).unwrap();
            for (x, y) in [([0.1, 0.2, -0.3], [1.0, 0.0, 0.5]), ([-1.0, 2.0, 0.0], [0.3, 0.3, 0.3])] {
                for v in residual_q(&f, &x, &y).unwrap() {
                    assert!((v + 2.0 * c).abs() <= 1e-12 * (1.0 + c.abs()) * 10.0, "{v} {c}");
                }
                for v in residual_gq(&f, &p, &x, &y).unwrap() {
                    assert!((v - p.rs() * c).abs() <= 1e-12 * (1.0 + c.abs()) * 10.0);
                }
            }
        }
    }

    #[test]
    fn odd_witness_examples() {
        let half = EquationParams::parse("1/2").unwrap();
        let f = make_odd_witness(&[vec![1.0]]).unwrap();
        assert_eq!(residual_gq(&f, &half, &[1.0], &[0.0]).unwrap(), vec![0.25]);
        let f = make_odd_witness(&[vec![0.0, 0.0]]).unwrap();
        assert_eq!(residual_gq(&f, &half, &[1.0, -4.0], &[2.0, 3.0]).unwrap(), vec![0.0]);
        let f = make_odd_witness(&[vec![2.0]]).unwrap();
        assert_eq!(residual_gq(&f, &half, &[3.0], &[0.0]).unwrap(), vec![1.5]);
    }

    #[test]
    fn random_forms_are_deterministic() {
        assert_eq!(random_quadratic(4, 2, 11), random_quadratic(4, 2, 11));
        assert_ne!(random_quadratic(4, 2, 11), random_quadratic(4, 2, 12));
    }
}
