//! Quadratic maps and the two functional-equation residuals.
//!
//! The classical quadratic equation
//!
//! ```text
//! f(x+y) + f(x-y) = 2f(x) + 2f(y)
//! ```
//!
//! and its generalization with weights `r + s = 1`, `rs ≠ 0`
//!
//! ```text
//! f(rx+sy) + rs·f(x-y) = r·f(x) + s·f(y)
//! ```
//!
//! are evaluated pointwise as residual vectors. Every solution of the
//! classical equation has the form `f(x) = B(x, x)` for a symmetric
//! bi-additive `B`, which [`polarize`] recovers from `f`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, LabError, Result};
use crate::space::{self, lin_comb, sample_pairs, Sampler, Spaces};

/// Below this `|rs|` the stability constants become too large to be useful.
pub const SMALL_RS: f64 = 1e-2;

/// Weights `(r, s)` of the generalized equation, `s = 1 − r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationParams {
    r: f64,
    s: f64,
    /// `(p, q)` when `r` was given as the exact fraction `p/q`.
    fraction: Option<(i64, u64)>,
}

impl EquationParams {
    /// Decimal `r`; the rationality flag stays off.
    pub fn new(r: f64) -> Result<Self> {
        Self::build(r, None)
    }

    /// `r = p/q` exactly.
    pub fn from_fraction(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(LabError::InvalidParameter("fraction denominator is zero".into()));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let g = gcd(p.unsigned_abs(), q as u64).max(1);
        let (p, q) = (p / g as i64, q as u64 / g);
        Self::build(p as f64 / q as f64, Some((p, q)))
    }

    fn build(r: f64, fraction: Option<(i64, u64)>) -> Result<Self> {
        if !r.is_finite() {
            return Err(LabError::InvalidParameter(format!("r must be finite, got {r}")));
        }
        let s = 1.0 - r;
        let exact_zero = fraction.map_or(false, |(p, q)| p == 0 || p as i128 == q as i128);
        if r == 0.0 || s == 0.0 || exact_zero {
            return Err(LabError::InvalidParameter(format!(
                "r and s = 1 - r must both be nonzero (r = {r})"
            )));
        }
        Ok(Self { r, s, fraction })
    }

    /// Parses `"p/q"` as an exact fraction, anything else as a decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((p, q)) = text.split_once('/') {
            let bad = || LabError::InvalidParameter(format!("cannot parse fraction `{text}`"));
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            Self::from_fraction(p, q)
        } else {
            let r: f64 = text
                .parse()
                .map_err(|_| LabError::InvalidParameter(format!("cannot parse r = `{text}`")))?;
            Self::new(r)
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn rs(&self) -> f64 {
        self.r * self.s
    }

    pub fn fraction(&self) -> Option<(i64, u64)> {
        self.fraction
    }

    pub fn rational_r(&self) -> bool {
        self.fraction.is_some()
    }

    /// `r` is `p/2ᵏ`, so `r`, `s` and `rs` are exact binary floats.
    pub fn is_dyadic(&self) -> bool {
        self.fraction.map_or(false, |(_, q)| q.is_power_of_two())
    }

    /// `|rs| < 1e-2`.
    pub fn small_rs_warning(&self) -> bool {
        self.rs().abs() < SMALL_RS
    }
}

impl fmt::Display for EquationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fraction {
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.r),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Vector-valued quadratic form `x ↦ (xᵀB⁽ᵏ⁾x)ₖ` with symmetric `B⁽ᵏ⁾`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    n: usize,
    m: usize,
    /// `m` row-major `n×n` matrices.
    coeffs: Vec<Vec<f64>>,
}

impl QuadraticForm {
    /// Fails unless every matrix is exactly symmetric.
    pub fn new(n: usize, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 || coeffs.is_empty() {
            return Err(LabError::InvalidParameter("quadratic form needs n, m ≥ 1".into()));
        }
        for b in &coeffs {
            check_dim(n * n, b.len())?;
            for i in 0..n {
                for j in (i + 1)..n {
                    if b[i * n + j] != b[j * n + i] {
                        return Err(LabError::InvalidParameter(format!(
                            "coefficient matrix not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        Ok(Self { n, m: coeffs.len(), coeffs })
    }

    /// `m` copies of the `n×n` identity: `x ↦ ‖x‖₂²` in each coordinate.
    pub fn identity(n: usize, m: usize) -> Self {
        let mut b = vec![0.0; n * n];
        for i in 0..n {
            b[i * n + i] = 1.0;
        }
        Self { n, m, coeffs: vec![b; m] }
    }

    pub fn domain_dim(&self) -> usize {
        self.n
    }

    pub fn codomain_dim(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// `B⁽ᵏ⁾(x, y) = xᵀB⁽ᵏ⁾y` for every `k`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x.len())?;
        check_dim(self.n, y.len())?;
        Ok(self.coeffs.iter().map(|b| bilinear(self.n, b, x, y)).collect())
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> Vec<f64> {
        self.coeffs.iter().map(|b| bilinear(self.n, b, x, x)).collect()
    }
}

fn bilinear(n: usize, b: &[f64], x: &[f64], y: &[f64]) -> f64 {
    (0..n).map(|i| x[i] * space::dot(&b[i * n..(i + 1) * n], y)).sum()
}

/// `Q(x)` for a [`QuadraticForm`].
pub fn quad_eval(q: &QuadraticForm, x: &[f64]) -> Result<Vec<f64>> {
    q.eval(x)
}

/// Whether a map can be evaluated anywhere or only reproduces a finite table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Callable,
    Tabulated,
}

type Evaluator = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A deterministic map `ℝⁿ → ℝᵐ`.
#[derive(Clone)]
pub struct MapHandle {
    label: String,
    n: usize,
    m: usize,
    kind: MapKind,
    eval: Evaluator,
}

impl fmt::Debug for MapHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapHandle")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("kind", &self.kind)
            .finish()
    }
}

impl MapHandle {
    /// Wraps a closure. The closure receives inputs of length `n` and must
    /// return `m` values.
    pub fn from_fn<F>(label: impl Into<String>, n: usize, m: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self { label: label.into(), n, m, kind: MapKind::Callable, eval: Arc::new(f) }
    }

    /// Scalar map on `ℝ`.
    pub fn scalar<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_fn(label, 1, 1, move |x| vec![f(x[0])])
    }

    pub fn from_quadratic(q: &QuadraticForm) -> Self {
        let q = q.clone();
        Self::from_fn("quadratic_form", q.n, q.m, move |x| q.eval_unchecked(x))
    }

    /// A map known only on a finite table, extended by nearest neighbour
    /// (Euclidean) so that it stays total.
    pub fn tabulated(
        label: impl Into<String>,
        points: Vec<Vec<f64>>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if points.is_empty() || points.len() != values.len() {
            return Err(LabError::InvalidParameter("table needs matching, nonempty points and values".into()));
        }
        let n = points[0].len();
        let m = values[0].len();
        for (p, v) in points.iter().zip(&values) {
            check_dim(n, p.len())?;
            check_dim(m, v.len())?;
        }
        let eval = move |x: &[f64]| {
            let best = points
                .iter()
                .enumerate()
                .map(|(i, p)| (i, space::euclidean_norm(&space::sub(p, x))))
                .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
            values[best.0].clone()
        };
        Ok(Self { label: label.into(), n, m, kind: MapKind::Tabulated, eval: Arc::new(eval) })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain_dim(&self) -> usize {
        self.n
    }

    pub fn codomain_dim(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x.len())?;
        let y = (self.eval)(x);
        check_dim(self.m, y.len())?;
        Ok(y)
    }

    pub(crate) fn call(&self, x: &[f64]) -> Vec<f64> {
        (self.eval)(x)
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn check_args(&self, x: &[f64], y: &[f64]) -> Result<()> {
        check_dim(self.n, x.len())?;
        check_dim(self.n, y.len())
    }
}

/// `f(x+y) + f(x−y) − 2f(x) − 2f(y)`.
pub fn residual_q(f: &MapHandle, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    f.check_args(x, y)?;
    Ok(residual_q_unchecked(f, x, y))
}

pub(crate) fn residual_q_unchecked(f: &MapHandle, x: &[f64], y: &[f64]) -> Vec<f64> {
    let a = f.call(&space::add(x, y));
    let b = f.call(&space::sub(x, y));
    let fx = f.call(x);
    let fy = f.call(y);
    (0..f.m).map(|k| a[k] + b[k] - 2.0 * fx[k] - 2.0 * fy[k]).collect()
}

/// `f(rx+sy) + rs·f(x−y) − r·f(x) − s·f(y)`.
pub fn residual_gq(f: &MapHandle, params: &EquationParams, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    f.check_args(x, y)?;
    Ok(residual_gq_unchecked(f, params, x, y))
}

pub(crate) fn residual_gq_unchecked(
    f: &MapHandle,
    params: &EquationParams,
    x: &[f64],
    y: &[f64],
) -> Vec<f64> {
    let (r, s) = (params.r, params.s);
    let a = f.call(&lin_comb(r, x, s, y));
    let b = f.call(&space::sub(x, y));
    let fx = f.call(x);
    let fy = f.call(y);
    let rs = params.rs();
    (0..f.m).map(|k| a[k] + rs * b[k] - r * fx[k] - s * fy[k]).collect()
}

/// Even and odd parts `(f_e, f_o)` with `f_e(x) = (f(x)+f(−x))/2` and
/// `f_o(x) = (f(x)−f(−x))/2`.
pub fn parity_decompose(f: &MapHandle) -> (MapHandle, MapHandle) {
    let g = f.clone();
    let even = MapHandle::from_fn(format!("{}_even", f.label), f.n, f.m, move |x| {
        let a = g.call(x);
        let b = g.call(&space::scale(-1.0, x));
        a.iter().zip(&b).map(|(u, v)| (u + v) / 2.0).collect()
    });
    let g = f.clone();
    let odd = MapHandle::from_fn(format!("{}_odd", f.label), f.n, f.m, move |x| {
        let a = g.call(x);
        let b = g.call(&space::scale(-1.0, x));
        a.iter().zip(&b).map(|(u, v)| (u - v) / 2.0).collect()
    });
    (even, odd)
}

/// `(f(x+y) − f(x−y)) / 4`, the symmetric bilinear form behind a quadratic `f`.
pub fn polarize(f: &MapHandle, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    f.check_args(x, y)?;
    let a = f.call(&space::add(x, y));
    let b = f.call(&space::sub(x, y));
    Ok(a.iter().zip(&b).map(|(u, v)| (u - v) / 4.0).collect())
}

/// Identity defects at one point; each entry is a vector in `Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDefects {
    /// `f_o(rx) − r²f_o(x)`.
    pub odd_scaling_r: Vec<f64>,
    /// `f_o(sy) − s(1+r)f_o(y)`.
    pub odd_scaling_s: Vec<f64>,
    /// `f_e(2x) − 4f_e(x)`.
    pub even_doubling: Vec<f64>,
    /// `f_e(2x+y) + 2f_e(x) + f_e(y) − 2f_e(x+y) − f_e(2x)`.
    pub even_expansion: Vec<f64>,
}

/// Evaluates the intermediate identities used to derive the classical
/// equation from the generalized one, at a single `(x, y)`.
pub fn derivation_defects_at(
    f: &MapHandle,
    params: &EquationParams,
    x: &[f64],
    y: &[f64],
) -> Result<ChainDefects> {
    f.check_args(x, y)?;
    let (even, odd) = parity_decompose(f);
    Ok(chain_defects(&even, &odd, params, x, y))
}

fn chain_defects(
    even: &MapHandle,
    odd: &MapHandle,
    params: &EquationParams,
    x: &[f64],
    y: &[f64],
) -> ChainDefects {
    let (r, s) = (params.r, params.s);
    let comb = |a: Vec<f64>, ka: f64, b: Vec<f64>, kb: f64| -> Vec<f64> {
        a.iter().zip(&b).map(|(u, v)| ka * u + kb * v).collect()
    };
    let odd_scaling_r = comb(odd.call(&space::scale(r, x)), 1.0, odd.call(x), -r * r);
    let odd_scaling_s = comb(odd.call(&space::scale(s, y)), 1.0, odd.call(y), -s * (1.0 + r));
    let x2 = space::scale(2.0, x);
    let fe_2x = even.call(&x2);
    let fe_x = even.call(x);
    let even_doubling = comb(fe_2x.clone(), 1.0, fe_x.clone(), -4.0);
    let a = even.call(&space::add(&x2, y));
    let fe_y = even.call(y);
    let fe_xy = even.call(&space::add(x, y));
    let even_expansion = (0..even.m)
        .map(|k| a[k] + 2.0 * fe_x[k] + fe_y[k] - 2.0 * fe_xy[k] - fe_2x[k])
        .collect();
    ChainDefects { odd_scaling_r, odd_scaling_s, even_doubling, even_expansion }
}

/// Maximum norm of each identity defect over a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainTable {
    pub odd_scaling_r: f64,
    pub odd_scaling_s: f64,
    pub even_doubling: f64,
    pub even_expansion: f64,
    pub samples: usize,
}

/// Sample-wise maxima of the derivation identities. Reports maxima only.
pub fn derivation_chain_check(
    f: &MapHandle,
    params: &EquationParams,
    spaces: &Spaces,
    sampler: &Sampler,
) -> Result<ChainTable> {
    check_dim(spaces.domain.dim(), f.n)?;
    check_dim(spaces.codomain.dim(), f.m)?;
    let pairs = sample_pairs(&spaces.domain, sampler)?;
    let (even, odd) = parity_decompose(f);
    let ny = &spaces.codomain;
    let maxima = pairs
        .par_iter()
        .map(|(x, y)| {
            let c = chain_defects(&even, &odd, params, x, y);
            [
                ny.norm_unchecked(&c.odd_scaling_r),
                ny.norm_unchecked(&c.odd_scaling_s),
                ny.norm_unchecked(&c.even_doubling),
                ny.norm_unchecked(&c.even_expansion),
            ]
        })
        .reduce(|| [0.0; 4], |a, b| [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2]), a[3].max(b[3])]);
    Ok(ChainTable {
        odd_scaling_r: maxima[0],
        odd_scaling_s: maxima[1],
        even_doubling: maxima[2],
        even_expansion: maxima[3],
        samples: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> MapHandle {
        MapHandle::scalar("x^2", |x| x * x)
    }

    #[test]
    fn params_parse() {
        let p = EquationParams::parse("1/3").unwrap();
        assert!(p.rational_r());
        assert_eq!(p.fraction(), Some((1, 3)));
        assert_eq!(p.s(), 1.0 - 1.0 / 3.0);
        let p = EquationParams::parse("2/-4").unwrap();
        assert_eq!(p.fraction(), Some((-1, 2)));
        assert!(p.is_dyadic());
        let p = EquationParams::parse("0.25").unwrap();
        assert!(!p.rational_r());
        assert_eq!(p.s(), 0.75);
        assert!(EquationParams::parse("1/1").is_err());
        assert!(EquationParams::parse("0").is_err());
        assert!(EquationParams::parse("1").is_err());
        assert!(EquationParams::parse("1/0").is_err());
        assert!(EquationParams::parse("abc").is_err());
        assert!(EquationParams::new(0.005).unwrap().small_rs_warning());
        assert!(!EquationParams::new(0.5).unwrap().small_rs_warning());
    }

    #[test]
    fn quad_eval_examples() {
        let q = QuadraticForm::new(1, vec![vec![1.0]]).unwrap();
        assert_eq!(quad_eval(&q, &[3.0]).unwrap(), vec![9.0]);
        let q = QuadraticForm::identity(2, 1);
        assert_eq!(quad_eval(&q, &[3.0, 4.0]).unwrap(), vec![25.0]);
        assert_eq!(quad_eval(&q, &[0.0, 0.0]).unwrap(), vec![0.0]);
        assert!(quad_eval(&q, &[1.0]).is_err());
        assert!(QuadraticForm::new(2, vec![vec![0.0, 2.0, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn residual_q_examples() {
        assert_eq!(residual_q(&square(), &[1.0], &[2.0]).unwrap(), vec![0.0]);
        let shifted = MapHandle::scalar("x^2+5", |x| x * x + 5.0);
        for (x, y) in [(0.0, 0.0), (1.5, -2.0), (7.0, 3.0)] {
            assert_eq!(residual_q(&shifted, &[x], &[y]).unwrap(), vec![-10.0]);
        }
        let cube = MapHandle::scalar("x^3", |x| x * x * x);
        assert_eq!(residual_q(&cube, &[1.0], &[1.0]).unwrap(), vec![4.0]);
    }

    #[test]
    fn residual_gq_examples() {
        let p = EquationParams::parse("1/3").unwrap();
        let v = residual_gq(&square(), &p, &[3.0], &[0.0]).unwrap()[0];
        assert!(v.abs() < 1e-14, "{v}");

        // Independent route: constant part contributes c·(1 + rs − r − s) = c·rs.
        let shifted = MapHandle::scalar("x^2+5", |x| x * x + 5.0);
        let v = residual_gq(&shifted, &p, &[3.0], &[0.0]).unwrap()[0];
        let direct = (1.0 + 5.0) + (2.0 / 9.0) * (9.0 + 5.0) - (9.0 + 5.0) / 3.0 - (2.0 / 3.0) * 5.0;
        assert!((v - 10.0 / 9.0).abs() < 1e-14);
        assert!((v - direct).abs() < 1e-14);
        assert!((v - 5.0 * p.rs()).abs() < 1e-14);

        let id = MapHandle::scalar("x", |x| x);
        let v = residual_gq(&id, &p, &[1.0], &[0.0]).unwrap()[0];
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn parity_examples() {
        let f = MapHandle::scalar("x^2+x", |x| x * x + x);
        let (e, o) = parity_decompose(&f);
        for x in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            assert_eq!(e.eval(&[x]).unwrap(), vec![x * x]);
            assert_eq!(o.eval(&[x]).unwrap(), vec![x]);
        }
        let (_, o) = parity_decompose(&square());
        let (e, o3) = parity_decompose(&MapHandle::scalar("x^3", |x| x * x * x));
        for x in [-2.0, 0.3, 1.7] {
            assert_eq!(o.eval(&[x]).unwrap(), vec![0.0]);
            assert_eq!(e.eval(&[x]).unwrap(), vec![0.0]);
            assert_eq!(o3.eval(&[x]).unwrap(), vec![x * x * x]);
        }
    }

    #[test]
    fn polarize_examples() {
        assert_eq!(polarize(&square(), &[1.0], &[2.0]).unwrap(), vec![2.0]);
        assert_eq!(polarize(&square(), &[1.0], &[1.0]).unwrap(), vec![1.0]);
        let q = QuadraticForm::new(2, vec![vec![2.0, 0.0, 0.0, 3.0]]).unwrap();
        let f = MapHandle::from_quadratic(&q);
        assert_eq!(polarize(&f, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), vec![0.0]);
        assert!(polarize(&f, &[1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn chain_examples() {
        let p = EquationParams::parse("1/3").unwrap();
        let c = derivation_defects_at(&square(), &p, &[3.0], &[0.0]).unwrap();
        assert_eq!(c.even_doubling, vec![0.0]);
        let c = derivation_defects_at(&square(), &p, &[1.0], &[1.0]).unwrap();
        assert_eq!(c.even_expansion, vec![0.0]);
        let id = MapHandle::scalar("x", |x| x);
        let c = derivation_defects_at(&id, &p, &[1.0], &[0.0]).unwrap();
        assert!((c.odd_scaling_r[0] - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn chain_table_for_forms_and_odd_maps() {
        let spaces = Spaces::euclidean(3, 2).unwrap();
        let p = EquationParams::parse("1/3").unwrap();
        let q = QuadraticForm::new(
            3,
            vec![
                vec![1.0, 0.5, 0.0, 0.5, 2.0, -1.0, 0.0, -1.0, 0.3],
                vec![0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, -2.0],
            ],
        )
        .unwrap();
        let t = derivation_chain_check(&MapHandle::from_quadratic(&q), &p, &spaces, &Sampler::ball(5, 500, 2.0)).unwrap();
        assert_eq!(t.samples, 500);
        assert!(t.odd_scaling_r == 0.0 && t.odd_scaling_s == 0.0);
        assert!(t.even_doubling < 1e-12 && t.even_expansion < 1e-12, "{t:?}");

        let spaces = Spaces::euclidean(1, 1).unwrap();
        let id = MapHandle::scalar("x", |x| x);
        let t = derivation_chain_check(&id, &p, &spaces, &Sampler::ball(5, 500, 2.0)).unwrap();
        assert_eq!(t.even_doubling, 0.0);
        assert!(t.odd_scaling_r > 0.0);
    }

    #[test]
    fn tabulated_map_is_nearest_neighbour() {
        let f = MapHandle::tabulated("t", vec![vec![0.0], vec![1.0]], vec![vec![5.0], vec![7.0]]).unwrap();
        assert_eq!(f.kind(), MapKind::Tabulated);
        assert_eq!(f.eval(&[0.9]).unwrap(), vec![7.0]);
        assert_eq!(f.eval(&[-3.0]).unwrap(), vec![5.0]);
    }
}
