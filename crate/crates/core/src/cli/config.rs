//! Run configuration: flat `key=value` files, command-line flags on top.
//!
//! Keys are the long flag names without dashes (`radius-max=2`). Unknown keys
//! are errors. The effective key map, defaults included, is echoed into
//! every report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::geometry::Exponents;
use crate::perturb::{self, NoiseModel};
use crate::quadratic::{EquationParams, MapHandle, QuadraticForm};
use crate::space::{NormKind, SpaceSpec, Spaces};

/// Subcommands of the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Certify,
    DetectIp,
    Exponents,
    Profile,
    Residual,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Certify => "certify",
            Command::DetectIp => "detect-ip",
            Command::Exponents => "exponents",
            Command::Profile => "profile",
            Command::Residual => "residual",
        }
    }

    fn default_tol(&self) -> &'static str {
        match self {
            Command::Certify | Command::Profile | Command::Residual => "1e-10",
            Command::DetectIp | Command::Exponents => "1e-9",
        }
    }
}

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "codim",
    "codomain-norm",
    "d",
    "decay-tol",
    "delta",
    "dim",
    "emit-samples",
    "form",
    "gram",
    "grid",
    "iters",
    "map",
    "n-max",
    "n-min",
    "noise",
    "norm",
    "out",
    "r",
    "radius-max",
    "samples",
    "seed",
    "tol",
    "x",
    "y",
];

fn defaults(command: Command) -> BTreeMap<String, String> {
    [
        ("codim", "1"),
        ("codomain-norm", "euclidean"),
        ("d", "1"),
        ("decay-tol", "1e-2"),
        ("dim", "2"),
        ("emit-samples", "false"),
        ("form", "identity"),
        ("iters", "26"),
        ("map", "form"),
        ("n-max", "16"),
        ("n-min", "1"),
        ("noise", "none"),
        ("norm", "euclidean"),
        ("r", "1/2"),
        ("radius-max", "2"),
        ("samples", "1000"),
        ("seed", "0"),
        ("tol", command.default_tol()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| LabError::Config(format!("line {}: expected key=value", i + 1)))?;
        let k = k.trim().to_string();
        if !KEYS.contains(&k.as_str()) {
            return Err(LabError::Config(format!("line {}: unknown key `{k}`", i + 1)));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Norm selector as written on the command line.
pub fn parse_norm(text: &str, dim: usize, gram: Option<&str>) -> Result<SpaceSpec> {
    let t = text.trim();
    match t {
        "euclidean" => SpaceSpec::euclidean(dim),
        "sup" | "inf" => SpaceSpec::sup(dim),
        "weighted" => {
            let g = gram.ok_or_else(|| LabError::InvalidParameter("norm `weighted` needs --gram".into()))?;
            let rows = parse_rows(g)?;
            if rows.len() != dim {
                return Err(LabError::DimensionMismatch { expected: dim, got: rows.len() });
            }
            SpaceSpec::weighted(&rows)
        }
        _ => {
            let p = t
                .strip_prefix("p:")
                .ok_or_else(|| LabError::InvalidParameter(format!("unknown norm `{t}`")))?;
            let p = match p {
                "inf" => f64::INFINITY,
                v => parse_f64("norm exponent", v)?,
            };
            SpaceSpec::new(dim, NormKind::PNorm { p })
        }
    }
}

/// `"a,b;c,d"` → rows.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';').map(parse_vector).collect()
}

/// `"1,-2.5,3"` → vector.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(|v| parse_f64("vector entry", v)).collect()
}

fn parse_f64(what: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| LabError::InvalidParameter(format!("cannot parse {what} `{}`", v.trim())))?;
    if x.is_nan() {
        return Err(LabError::InvalidParameter(format!("{what} is NaN")));
    }
    Ok(x)
}

fn parse_usize(what: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| LabError::InvalidParameter(format!("cannot parse {what} `{}`", v.trim())))
}

/// `none | constant:<c> | uniform:<δ>[:<seed>] | decay:<c>,<α> | sine:<c>`.
/// Uniform noise without its own seed uses `seed`; sine uses `w = (1, …, 1)`.
pub fn parse_noise(text: &str, dim: usize, seed: u64) -> Result<NoiseModel> {
    let t = text.trim();
    if t == "none" {
        return Ok(NoiseModel::None);
    }
    let (kind, arg) = t
        .split_once(':')
        .ok_or_else(|| LabError::InvalidParameter(format!("unknown noise `{t}`")))?;
    match kind {
        "constant" => Ok(NoiseModel::Constant { c: parse_f64("noise constant", arg)? }),
        "uniform" => {
            let (delta, seed) = match arg.split_once(':') {
                Some((d, s)) => (
                    parse_f64("noise bound", d)?,
                    s.trim().parse().map_err(|_| LabError::InvalidParameter(format!("bad noise seed `{s}`")))?,
                ),
                None => (parse_f64("noise bound", arg)?, seed),
            };
            if delta < 0.0 {
                return Err(LabError::InvalidParameter("uniform noise bound must be ≥ 0".into()));
            }
            Ok(NoiseModel::UniformBounded { delta, seed })
        }
        "decay" => {
            let (c, alpha) = arg
                .split_once(',')
                .ok_or_else(|| LabError::InvalidParameter("decay noise needs <c>,<alpha>".into()))?;
            let alpha = parse_f64("decay exponent", alpha)?;
            if !(alpha > 0.0) {
                return Err(LabError::InvalidParameter("decay exponent must be > 0".into()));
            }
            Ok(NoiseModel::Decay { c: parse_f64("decay constant", c)?, alpha })
        }
        "sine" => Ok(NoiseModel::Sine { c: parse_f64("sine amplitude", arg)?, w: vec![1.0; dim] }),
        _ => Err(LabError::InvalidParameter(format!("unknown noise `{t}`"))),
    }
}

/// `identity | random:<seed> | <rows>[|<rows>...]` with one matrix per
/// output coordinate.
pub fn parse_form(text: &str, dim: usize, codim: usize) -> Result<(QuadraticForm, bool)> {
    let t = text.trim();
    if t == "identity" {
        return Ok((QuadraticForm::identity(dim, codim), false));
    }
    if let Some(seed) = t.strip_prefix("random:") {
        let seed = seed
            .trim()
            .parse()
            .map_err(|_| LabError::InvalidParameter(format!("bad form seed `{seed}`")))?;
        return Ok((perturb::random_quadratic(dim, codim, seed), false));
    }
    let mats = t.split('|').map(parse_rows).collect::<Result<Vec<_>>>()?;
    perturb::make_quadratic(&SpaceSpec::euclidean(dim)?, &SpaceSpec::euclidean(codim)?, &mats)
}

/// `"p,q,u,v;p,q,u,v"`.
pub fn parse_grid(text: &str) -> Result<Vec<Exponents>> {
    text.split(';')
        .map(|tuple| {
            let v = parse_vector(tuple)?;
            if v.len() != 4 {
                return Err(LabError::InvalidParameter(format!("exponent tuple `{tuple}` needs 4 entries")));
            }
            Exponents::new(v[0], v[1], v[2], v[3])
        })
        .collect()
}

/// Which map the run studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapChoice {
    /// Quadratic form plus noise.
    Form,
    /// `f(x)ₖ = Σᵢ xᵢ³`.
    Cube,
    /// `f(x)ₖ = Σᵢ xᵢ`, odd and additive.
    Linear,
}

/// Typed view of the effective configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Effective key/value map, defaults included.
    pub effective: BTreeMap<String, String>,
    pub spaces: Spaces,
    pub params: EquationParams,
    pub d: f64,
    pub delta_override: Option<f64>,
    pub noise: NoiseModel,
    pub form: QuadraticForm,
    pub form_symmetrized: bool,
    pub map: MapChoice,
    pub samples: usize,
    pub radius_max: f64,
    pub seed: u64,
    pub iters: usize,
    pub tol: f64,
    pub decay_tol: f64,
    pub n_min: u32,
    pub n_max: u32,
    pub grid: Option<Vec<Exponents>>,
    pub x: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub emit_samples: bool,
}

impl RunConfig {
    /// Merges defaults, then `file`, then `flags`.
    pub fn resolve(
        command: Command,
        file: BTreeMap<String, String>,
        flags: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut effective = defaults(command);
        for (k, v) in file.into_iter().chain(flags) {
            if !KEYS.contains(&k.as_str()) {
                return Err(LabError::Config(format!("unknown key `{k}`")));
            }
            effective.insert(k, v);
        }
        Self::from_map(command, effective)
    }

    fn from_map(command: Command, effective: BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| effective.get(k).map(String::as_str);
        let req = |k: &str| get(k).expect("defaulted key");
        let dim = parse_usize("dim", req("dim"))?;
        let codim = parse_usize("codim", req("codim"))?;
        let domain = parse_norm(req("norm"), dim, get("gram"))?;
        let codomain = parse_norm(req("codomain-norm"), codim, None)?;
        let params = EquationParams::parse(req("r"))?;
        let d = parse_f64("d", req("d"))?;
        if d < 0.0 {
            return Err(LabError::InvalidParameter("d must be ≥ 0".into()));
        }
        let delta_override = get("delta").map(|v| parse_f64("delta", v)).transpose()?;
        if delta_override.is_some_and(|v| v < 0.0) {
            return Err(LabError::InvalidParameter("delta must be ≥ 0".into()));
        }
        let seed: u64 = req("seed")
            .trim()
            .parse()
            .map_err(|_| LabError::InvalidParameter(format!("bad seed `{}`", req("seed"))))?;
        let noise = parse_noise(req("noise"), dim, seed)?;
        let (form, form_symmetrized) = parse_form(req("form"), dim, codim)?;
        let map = match req("map").trim() {
            "form" => MapChoice::Form,
            "cube" => MapChoice::Cube,
            "linear" => MapChoice::Linear,
            other => return Err(LabError::InvalidParameter(format!("unknown map `{other}`"))),
        };
        let samples = parse_usize("samples", req("samples"))?;
        if samples == 0 {
            return Err(LabError::InvalidParameter("samples must be ≥ 1".into()));
        }
        let radius_max = parse_f64("radius-max", req("radius-max"))?;
        let iters = parse_usize("iters", req("iters"))?;
        if iters == 0 {
            return Err(LabError::InvalidParameter("iters must be ≥ 1".into()));
        }
        let tol = parse_f64("tol", req("tol"))?;
        let decay_tol = parse_f64("decay-tol", req("decay-tol"))?;
        if tol < 0.0 || decay_tol < 0.0 {
            return Err(LabError::InvalidParameter("tolerances must be ≥ 0".into()));
        }
        let shell = |k: &str| -> Result<u32> {
            req(k).trim().parse().map_err(|_| LabError::InvalidParameter(format!("bad {k} `{}`", req(k))))
        };
        let (n_min, n_max) = (shell("n-min")?, shell("n-max")?);
        let grid = get("grid").map(parse_grid).transpose()?;
        let x = get("x").map(parse_vector).transpose()?;
        let y = get("y").map(parse_vector).transpose()?;
        let emit_samples = match req("emit-samples").trim() {
            "true" | "1" | "yes" => true,
            "false" | "0" | "no" => false,
            other => return Err(LabError::InvalidParameter(format!("bad emit-samples `{other}`"))),
        };
        Ok(Self {
            command,
            spaces: Spaces::new(domain, codomain),
            params,
            d,
            delta_override,
            noise,
            form,
            form_symmetrized,
            map,
            samples,
            radius_max,
            seed,
            iters,
            tol,
            decay_tol,
            n_min,
            n_max,
            grid,
            x,
            y,
            out: get("out").map(PathBuf::from),
            emit_samples,
            effective,
        })
    }

    /// The map under study.
    pub fn build_map(&self) -> Result<MapHandle> {
        let (n, m) = (self.spaces.domain.dim(), self.spaces.codomain.dim());
        match self.map {
            MapChoice::Form => perturb::make_perturbed(&self.form, &self.noise),
            MapChoice::Cube => Ok(MapHandle::from_fn("cube", n, m, move |x| {
                vec![x.iter().map(|v| v * v * v).sum(); m]
            })),
            MapChoice::Linear => perturb::make_odd_witness(&vec![vec![1.0; n]; m]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config_text("# comment\ndim = 3\nseed=5\n\nr=1/3 # trailing\n").unwrap();
        let cfg = RunConfig::resolve(Command::Certify, file, flags(&[("seed", "9")])).unwrap();
        assert_eq!(cfg.spaces.domain.dim(), 3);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.params.fraction(), Some((1, 3)));
        assert_eq!(cfg.effective["seed"], "9");
        assert_eq!(cfg.effective["tol"], "1e-10");
    }

    #[test]
    fn unknown_keys_fail() {
        assert!(matches!(parse_config_text("dimm=3"), Err(LabError::Config(_))));
        assert!(parse_config_text("dim").is_err());
        assert!(RunConfig::resolve(Command::Certify, BTreeMap::new(), flags(&[("bogus", "1")])).is_err());
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_norm("p:inf", 2, None).unwrap().norm_kind(), &NormKind::SupNorm);
        assert!(parse_norm("weighted", 2, None).is_err());
        assert!(parse_norm("weighted", 3, Some("2,0;0,3")).is_err());
        assert!(parse_norm("p:0", 2, None).is_err());
        assert!(parse_norm("taxicab", 2, None).is_err());
        assert_eq!(parse_noise("uniform:0.1", 2, 7).unwrap(), NoiseModel::UniformBounded { delta: 0.1, seed: 7 });
        assert_eq!(parse_noise("uniform:0.1:3", 2, 7).unwrap(), NoiseModel::UniformBounded { delta: 0.1, seed: 3 });
        assert_eq!(parse_noise("decay:1,1", 2, 0).unwrap(), NoiseModel::Decay { c: 1.0, alpha: 1.0 });
        assert!(parse_noise("decay:1", 2, 0).is_err());
        assert!(parse_noise("pink", 2, 0).is_err());
        assert_eq!(parse_grid("2,2,2,2;1,2,3,1").unwrap().len(), 2);
        assert!(parse_grid("2,2,0,2").is_err());
        assert!(parse_grid("2,2,2").is_err());
        let (q, sym) = parse_form("0,2;0,0", 2, 1).unwrap();
        assert!(sym);
        assert_eq!(q.coeffs()[0], vec![0.0, 1.0, 1.0, 0.0]);
        assert_eq!(parse_form("1,0;0,1|2,0;0,2", 2, 2).unwrap().0.codomain_dim(), 2);
    }
}
