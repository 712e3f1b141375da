//! Run traces, CSV persistence, rate fitting and experiment suites.

mod fit;
mod suite;

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

pub use self::fit::{fit_rate, fit_series, fit_window, RateFit};
pub use self::suite::{
    default_suite, load_suite, parse_cut_point, parse_norm, parse_strategy, read_matrix, run_suite,
    speedup_percent, Report, ReportRow, RunSpec, Suite,
};
use crate::engine::{NormMode, RunConfig, RunResult, RunStatus, Strategy, TraceRow};
use crate::error::HarnessError;
use crate::scalarize::CutPoint;

/// Bit-exact CSV header.
pub const CSV_HEADER: &str = "iter,hausdorff_err,surrogate_err,n_vertices,n_halfspaces,theta_k,lambda_min_sigma,lambda_max_sigma,selected_vertex_dist,cut_ratio,wall_ms";

/// Trace rows plus the `key=value` header of the resolved configuration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunTrace {
    pub config: Vec<(String, String)>,
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn from_run(config: &RunConfig, result: &RunResult) -> Self {
        let mut header = config_header(config);
        let status = match result.status {
            RunStatus::Converged(_) => "converged",
            RunStatus::MaxIterReached => "max_iter_reached",
        };
        header.push(("status".into(), status.into()));
        header.push(("iterations".into(), result.iterations.to_string()));
        Self {
            config: header,
            rows: result.rows.clone(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.config
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Resolved configuration as ordered `key=value` pairs.
pub fn config_header(config: &RunConfig) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    put("problem", config.problem.clone());
    put("norm", config.norm.label().into());
    if let NormMode::Fixed(m) = &config.norm {
        put("metric", format_matrix(m.matrix()));
    }
    put("eps", fmt_f64(config.eps));
    put("eps0", fmt_f64(config.eps0()));
    put("max_iter", config.max_iter.to_string());
    put("strategy", config.strategy.label().into());
    if let Strategy::Hybrid { period } = config.strategy {
        put("hybrid_period", period.to_string());
    }
    let cut = match config.cut_point {
        CutPoint::Image => "image",
        CutPoint::Boundary => "boundary",
    };
    put("cut_point", cut.into());
    put("solver_tol", fmt_f64(config.solver_tol));
    out
}

fn format_matrix(m: &DMatrix<f64>) -> String {
    let rows: Vec<String> = m
        .row_iter()
        .map(|r| r.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" "))
        .collect();
    rows.join(";")
}

/// Shortest decimal that parses back to the same `f64`.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Serializes a trace: config comments, header, one line per row.
pub fn write_csv(trace: &RunTrace) -> String {
    let mut s = String::new();
    for (k, v) in &trace.config {
        let _ = writeln!(s, "# {k}={v}");
    }
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in &trace.rows {
        let ratio = r.cut_ratio.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.iter,
            fmt_f64(r.hausdorff_err),
            fmt_f64(r.surrogate_err),
            r.n_vertices,
            r.n_halfspaces,
            fmt_f64(r.theta_k),
            fmt_f64(r.lambda_min_sigma),
            fmt_f64(r.lambda_max_sigma),
            fmt_f64(r.selected_vertex_dist),
            ratio,
            fmt_f64(r.wall_ms),
        );
    }
    s
}

pub fn emit_csv(trace: &RunTrace, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, write_csv(trace))?;
    Ok(())
}

pub fn parse_csv(text: &str) -> Result<RunTrace, HarnessError> {
    let bad = |line: usize, msg: &str| HarnessError::Parse(format!("line {line}: {msg}"));
    let mut trace = RunTrace::default();
    let mut seen_header = false;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if !seen_header {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| bad(n, "config comment without '='"))?;
                trace.config.push((k.to_string(), v.to_string()));
                continue;
            }
            if line != CSV_HEADER {
                return Err(bad(n, "unexpected CSV header"));
            }
            seen_header = true;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            return Err(bad(n, &format!("expected 11 fields, got {}", f.len())));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|e| bad(n, &e.to_string()));
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(n, &e.to_string()));
        trace.rows.push(TraceRow {
            iter: int(f[0])?,
            hausdorff_err: num(f[1])?,
            surrogate_err: num(f[2])?,
            n_vertices: int(f[3])?,
            n_halfspaces: int(f[4])?,
            theta_k: num(f[5])?,
            lambda_min_sigma: num(f[6])?,
            lambda_max_sigma: num(f[7])?,
            selected_vertex_dist: num(f[8])?,
            cut_ratio: if f[9].is_empty() {
                None
            } else {
                Some(num(f[9])?)
            },
            wall_ms: num(f[10])?,
        });
    }
    if !seen_header {
        return Err(HarnessError::Parse("missing CSV header".into()));
    }
    Ok(trace)
}

pub fn read_csv(path: &Path) -> Result<RunTrace, HarnessError> {
    parse_csv(&std::fs::read_to_string(path)?)
}
