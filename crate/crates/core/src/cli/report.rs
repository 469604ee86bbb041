//! JSON reports and CSV dumps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{LabError, Result};
use crate::stability::{ResidualSample, StabilityConstants};

pub const SCHEMA_VERSION: &str = "quadlab.report/1";

/// Exit codes shared by all subcommands.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    /// `pass`, `fail`, `accepted`, `rejected`, `inconclusive`, … per command.
    pub status: String,
    pub pass: bool,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

/// Top-level report. Field order is the serialization order; maps inside
/// are sorted, so equal configs serialize to equal bytes apart from
/// `runtime_ms`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub constants: StabilityConstants,
    pub results: Value,
    pub summary: Summary,
    pub runtime_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Everything except `runtime_ms`, for reproducibility checks.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("runtime_ms");
        }
        serde_json::to_string(&v).expect("value serializes")
    }
}

/// CSV with header `x1,…,xn,y1,…,yn,residual_norm`.
pub fn samples_csv(samples: &[ResidualSample]) -> String {
    let n = samples.first().map_or(0, |s| s.x.len());
    let mut out = String::new();
    let header: Vec<String> = (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .chain(std::iter::once("residual_norm".to_string()))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for s in samples {
        let row: Vec<String> = s
            .x
            .iter()
            .chain(&s.y)
            .chain(std::iter::once(&s.residual_norm))
            .map(|v| format!("{v:e}"))
            .collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// CSV with header `shell,delta_n`.
pub fn profile_csv(rows: &[(u32, f64)]) -> String {
    let mut out = String::from("shell,delta_n\n");
    for (n, d) in rows {
        let _ = writeln!(out, "{n},{d:e}");
    }
    out
}

/// `<out>.<suffix>` next to the report, or `<suffix>` in the working
/// directory when no report path is set.
pub fn sidecar_path(out: Option<&Path>, suffix: &str) -> PathBuf {
    match out {
        Some(p) => {
            let mut s = p.as_os_str().to_owned();
            s.push(".");
            s.push(suffix);
            PathBuf::from(s)
        }
        None => PathBuf::from(suffix),
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| LabError::Config(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let s = vec![ResidualSample { x: vec![1.0, 2.0], y: vec![3.0, 4.0], residual_norm: 0.5 }];
        let csv = samples_csv(&s);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x1,x2,y1,y2,residual_norm"));
        assert_eq!(lines.next(), Some("1e0,2e0,3e0,4e0,5e-1"));
        assert_eq!(profile_csv(&[(1, 0.25)]), "shell,delta_n\n1,2.5e-1\n");
    }

    #[test]
    fn sidecars() {
        assert_eq!(sidecar_path(Some(Path::new("out/r.json")), "samples.csv"), PathBuf::from("out/r.json.samples.csv"));
        assert_eq!(sidecar_path(None, "profile.csv"), PathBuf::from("profile.csv"));
    }
}
