//! Command-line front end.
//!
//! Exit codes: 0 converged, 1 error, 2 iteration cap reached, 64 usage.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adaptive_outer::engine::{run, RunConfig, RunStatus};
use adaptive_outer::harness::{
    emit_csv, fit_rate, load_suite, parse_cut_point, parse_norm, parse_strategy, read_csv,
    run_suite, RunTrace,
};
use adaptive_outer::HarnessError;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "adaptive-outer",
    version,
    about = "Outer approximation of convex vector optimization problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one benchmark configuration.
    Run {
        /// ball2, ball3, ball4, example2 or jahn.
        #[arg(long)]
        problem: String,
        /// euclid, adaptive or fixed:<path to matrix file>.
        #[arg(long, default_value = "euclid")]
        norm: String,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long)]
        eps0: Option<f64>,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        /// full, lp or hybrid.
        #[arg(long, default_value = "full")]
        strategy: String,
        #[arg(long, default_value_t = 50)]
        hybrid_period: usize,
        /// image or boundary.
        #[arg(long, default_value = "image")]
        cut_point: String,
        /// Write the per-iteration trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every configuration listed in a TOML suite file.
    Suite {
        path: PathBuf,
        /// Run configurations concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Fit the convergence rate of a trace CSV.
    Fit { csv: PathBuf },
}

enum Outcome {
    Converged,
    MaxIter,
}

fn execute(command: Command) -> Result<Outcome, HarnessError> {
    match command {
        Command::Run {
            problem,
            norm,
            eps,
            eps0,
            max_iter,
            strategy,
            hybrid_period,
            cut_point,
            trace,
        } => {
            let mut config =
                RunConfig::new(&problem, parse_norm(&norm, eps0, Path::new("."))?, eps);
            config.max_iter = max_iter;
            config.strategy = parse_strategy(&strategy, hybrid_period)?;
            config.cut_point = parse_cut_point(&cut_point)?;
            let result = run(&config)?;
            let run_trace = RunTrace::from_run(&config, &result);
            if let Some(path) = trace {
                emit_csv(&run_trace, &path)?;
            }
            let last = result.rows.last();
            println!(
                "problem={} norm={} strategy={} iterations={} final_error={} theta={} status={:?}",
                config.problem,
                config.norm.label(),
                config.strategy.label(),
                result.iterations,
                last.map_or(f64::NAN, |r| r.hausdorff_err),
                last.map_or(f64::NAN, |r| r.theta_k),
                result.status
            );
            Ok(match result.status {
                RunStatus::Converged(_) => Outcome::Converged,
                RunStatus::MaxIterReached => Outcome::MaxIter,
            })
        }
        Command::Suite { path, parallel } => {
            let suite = load_suite(&path)?;
            let base = path.parent().unwrap_or(Path::new("."));
            let report = run_suite(&suite, base, parallel)?;
            print!("{}", report.to_text());
            let all = report.rows.iter().all(|r| r.converged && r.error.is_none());
            Ok(if all {
                Outcome::Converged
            } else {
                Outcome::MaxIter
            })
        }
        Command::Fit { csv } => {
            let trace = read_csv(&csv)?;
            let fit = fit_rate(&trace)?;
            println!(
                "slope={} intercept={} window={}..{} r_squared={} flat={}",
                fit.slope, fit.intercept, fit.window.0, fit.window.1, fit.r_squared, fit.flat
            );
            Ok(Outcome::Converged)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(64),
            };
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Converged) => ExitCode::SUCCESS,
        Ok(Outcome::MaxIter) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
