//! Experiment suites.
//!
//! A suite file is TOML:
//!
//! ```toml
//! output_dir = "runs"          # relative to the suite file
//! [[run]]
//! problem = "ball2"            # ball2 | ball3 | ball4 | example2 | jahn
//! norm = "adaptive"            # euclid | adaptive | fixed:<matrix file>
//! eps = 1e-5
//! eps0 = 0.1                   # optional
//! max_iter = 500               # optional
//! strategy = "full"            # optional: full | lp | hybrid
//! hybrid_period = 50           # optional
//! cut_point = "image"          # optional: image | boundary
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{emit_csv, fit_rate, RunTrace};
use crate::engine::{run, NormMode, RunConfig, RunStatus, Strategy};
use crate::error::HarnessError;
use crate::metric::{SpdMatrix, DEFAULT_EPS0};
use crate::problems::ProblemSpec;
use crate::scalarize::CutPoint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub problem: String,
    #[serde(default = "default_norm")]
    pub norm: String,
    pub eps: f64,
    #[serde(default)]
    pub eps0: Option<f64>,
    #[serde(default)]
    pub max_iter: Option<usize>,
    #[serde(default)]
    pub strategy: Option<String>,
    #[serde(default)]
    pub hybrid_period: Option<usize>,
    #[serde(default)]
    pub cut_point: Option<String>,
}

fn default_norm() -> String {
    "euclid".into()
}

impl RunSpec {
    pub fn new(problem: &str, norm: &str, eps: f64, strategy: &str) -> Self {
        Self {
            problem: problem.into(),
            norm: norm.into(),
            eps,
            eps0: None,
            max_iter: None,
            strategy: Some(strategy.into()),
            hybrid_period: None,
            cut_point: None,
        }
    }

    /// Resolves the spec; `base` anchors relative matrix paths.
    pub fn to_config(&self, base: &Path) -> Result<RunConfig, HarnessError> {
        let norm = parse_norm(&self.norm, self.eps0, base)?;
        let mut config = RunConfig::new(&self.problem, norm, self.eps);
        if let Some(m) = self.max_iter {
            config.max_iter = m;
        }
        config.strategy = parse_strategy(
            self.strategy.as_deref().unwrap_or("full"),
            self.hybrid_period.unwrap_or(50),
        )?;
        config.cut_point = parse_cut_point(self.cut_point.as_deref().unwrap_or("image"))?;
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    #[serde(rename = "run", default)]
    pub runs: Vec<RunSpec>,
}

fn default_output_dir() -> String {
    "runs".into()
}

/// The five benchmark rows in both norms (ball4 with the hybrid strategy),
/// then ball4 with LP probes and with full enumeration in both norms.
pub fn default_suite() -> Suite {
    let rows = [
        ("ball2", 1e-5, "full"),
        ("ball3", 0.01, "full"),
        ("ball4", 0.0496, "hybrid"),
        ("example2", 0.02, "full"),
        ("jahn", 1e-3, "full"),
    ];
    let mut runs = Vec::new();
    for (problem, eps, strategy) in rows {
        for norm in ["euclid", "adaptive"] {
            runs.push(RunSpec::new(problem, norm, eps, strategy));
        }
    }
    for strategy in ["lp", "full"] {
        for norm in ["euclid", "adaptive"] {
            runs.push(RunSpec::new("ball4", norm, 0.0496, strategy));
        }
    }
    Suite {
        output_dir: default_output_dir(),
        runs,
    }
}

pub fn load_suite(path: &Path) -> Result<Suite, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| HarnessError::Parse(e.to_string()))
}

/// `euclid`, `adaptive` or `fixed:<path>`.
pub fn parse_norm(s: &str, eps0: Option<f64>, base: &Path) -> Result<NormMode, HarnessError> {
    match s {
        "euclid" => Ok(NormMode::Euclidean),
        "adaptive" => Ok(NormMode::Adaptive {
            eps0: eps0.unwrap_or(DEFAULT_EPS0),
        }),
        _ => match s.strip_prefix("fixed:") {
            Some(p) => Ok(NormMode::Fixed(read_matrix(&base.join(p))?)),
            None => Err(HarnessError::Parse(format!(
                "norm must be euclid, adaptive or fixed:<path>, got {s:?}"
            ))),
        },
    }
}

pub fn parse_strategy(s: &str, period: usize) -> Result<Strategy, HarnessError> {
    match s {
        "full" => Ok(Strategy::Full),
        "lp" => Ok(Strategy::LpProbe),
        "hybrid" => Ok(Strategy::Hybrid { period }),
        _ => Err(HarnessError::Parse(format!(
            "strategy must be full, lp or hybrid, got {s:?}"
        ))),
    }
}

pub fn parse_cut_point(s: &str) -> Result<CutPoint, HarnessError> {
    match s {
        "image" => Ok(CutPoint::Image),
        "boundary" => Ok(CutPoint::Boundary),
        _ => Err(HarnessError::Parse(format!(
            "cut point must be image or boundary, got {s:?}"
        ))),
    }
}

/// Whitespace-separated square matrix, one row per line; `#` starts a
/// comment.
pub fn read_matrix(path: &Path) -> Result<SpdMatrix, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HarnessError::Parse(format!("{}: {e}", path.display())))?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(HarnessError::Parse(format!(
            "{}: expected a square matrix",
            path.display()
        )));
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    Ok(SpdMatrix::new(m)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub example: String,
    pub q: usize,
    pub norm: String,
    pub strategy: String,
    pub eps: f64,
    pub converged: bool,
    pub iterations: Option<usize>,
    pub fitted_slope: Option<f64>,
    /// `2/(1−q)`.
    pub theory_slope: f64,
    /// `1/(1−q)`.
    pub adaptive_guarantee_slope: f64,
    /// Against the Euclidean run with the same problem, strategy and ε.
    pub speedup_percent: Option<f64>,
    pub final_theta: Option<f64>,
    pub final_lambda_min_sigma: Option<f64>,
    pub csv: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

/// `(iters_euclid − iters_adaptive)/iters_euclid` in percent.
pub fn speedup_percent(euclid: usize, adaptive: usize) -> f64 {
    100.0 * (euclid as f64 - adaptive as f64) / euclid as f64
}

fn execute(spec: &RunSpec, index: usize, base: &Path, out_dir: &Path) -> ReportRow {
    let q = ProblemSpec::by_name(&spec.problem)
        .map(|p| p.q)
        .unwrap_or(0);
    let qf = q as f64;
    let mut row = ReportRow {
        example: spec.problem.clone(),
        q,
        norm: spec.norm.clone(),
        strategy: spec.strategy.clone().unwrap_or_else(|| "full".into()),
        eps: spec.eps,
        converged: false,
        iterations: None,
        fitted_slope: None,
        theory_slope: 2.0 / (1.0 - qf),
        adaptive_guarantee_slope: 1.0 / (1.0 - qf),
        speedup_percent: None,
        final_theta: None,
        final_lambda_min_sigma: None,
        csv: None,
        error: None,
    };
    let outcome = (|| -> Result<(), HarnessError> {
        let config = spec.to_config(base)?;
        row.norm = config.norm.label().into();
        row.strategy = config.strategy.label().into();
        let result = run(&config)?;
        let trace = RunTrace::from_run(&config, &result);
        let name = format!(
            "{index:02}_{}_{}_{}.csv",
            config.problem,
            config.norm.label(),
            config.strategy.label()
        );
        let path = out_dir.join(name);
        emit_csv(&trace, &path)?;
        row.csv = Some(path.display().to_string());
        row.converged = matches!(result.status, RunStatus::Converged(_));
        row.iterations = Some(result.iterations);
        row.fitted_slope = fit_rate(&trace).ok().map(|f| f.slope);
        if let Some(last) = trace.rows.last() {
            row.final_theta = Some(last.theta_k);
            row.final_lambda_min_sigma = Some(last.lambda_min_sigma);
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}

/// Runs every entry of `suite`, writing per-run CSVs and `report.txt` /
/// `report.json` into the output directory. Per-run failures are recorded
/// in their report row.
pub fn run_suite(suite: &Suite, base: &Path, parallel: bool) -> Result<Report, HarnessError> {
    let out_dir: PathBuf = base.join(&suite.output_dir);
    std::fs::create_dir_all(&out_dir)?;
    let job = |(i, spec): (usize, &RunSpec)| execute(spec, i, base, &out_dir);
    let mut rows: Vec<ReportRow> = if parallel {
        suite.runs.par_iter().enumerate().map(job).collect()
    } else {
        suite.runs.iter().enumerate().map(job).collect()
    };
    let reference: Vec<Option<usize>> = rows
        .iter()
        .map(|r| {
            rows.iter()
                .find(|e| {
                    e.norm == "euclid"
                        && e.example == r.example
                        && e.strategy == r.strategy
                        && e.eps == r.eps
                })
                .and_then(|e| e.iterations)
        })
        .collect();
    for (row, euclid) in rows.iter_mut().zip(reference) {
        if let (Some(e), Some(a)) = (euclid, row.iterations) {
            if row.norm != "euclid" && e > 0 {
                row.speedup_percent = Some(speedup_percent(e, a));
            }
        }
    }
    let report = Report { rows };
    std::fs::write(out_dir.join("report.txt"), report.to_text())?;
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| HarnessError::Parse(e.to_string()))?;
    std::fs::write(out_dir.join("report.json"), json)?;
    Ok(report)
}

impl Report {
    pub fn to_text(&self) -> String {
        let opt = |x: Option<f64>, p: usize| x.map_or("-".to_string(), |v| format!("{v:.p$}"));
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<9} {:>2} {:<8} {:<7} {:>6} {:>7} {:>7} {:>7} {:>8} {:>6} {:>7}  status",
            "example",
            "q",
            "norm",
            "strat",
            "iters",
            "slope",
            "theory",
            "adapt",
            "speedup",
            "theta",
            "lmin"
        );
        for r in &self.rows {
            let status = match (&r.error, r.converged) {
                (Some(e), _) => format!("error: {e}"),
                (None, true) => "converged".into(),
                (None, false) => "max_iter".into(),
            };
            let _ = writeln!(
                s,
                "{:<9} {:>2} {:<8} {:<7} {:>6} {:>7} {:>7.2} {:>7.2} {:>8} {:>6} {:>7}  {}",
                r.example,
                r.q,
                r.norm,
                r.strategy,
                r.iterations.map_or("-".into(), |i| i.to_string()),
                opt(r.fitted_slope, 2),
                r.theory_slope,
                r.adaptive_guarantee_slope,
                r.speedup_percent.map_or("-".into(), |v| format!("{v:.0}%")),
                opt(r.final_theta, 3),
                opt(r.final_lambda_min_sigma, 3),
                status
            );
        }
        s
    }
}
