//! Solves with error reports, and concurrent convergence sweeps.

use std::io::Write;
use std::time::Instant;

use jacobi_spectral::poisson::{
    max_collocation_error, solve_3d, CollocationGrid, DomainKind, Problem, SolutionField, SolveConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::failure::{CmdResult, Failure};
use crate::fit;
use crate::source::BasisKind;

/// Environment variable capping the sweep worker count.
pub const WORKERS_ENV: &str = "JSPEC_WORKERS";

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    #[serde(rename = "N_r")]
    pub n_r: usize,
    pub domain: &'static str,
    pub error: f64,
    pub seconds: f64,
}

/// Solution plus its wall time.
pub struct TimedSolve {
    pub field: SolutionField,
    pub seconds: f64,
}

pub fn solve_problem(config: SolveConfig, problem: Problem) -> CmdResult<TimedSolve> {
    let start = Instant::now();
    let grid = CollocationGrid::new(config)?;
    let source = grid.sample(|k, r, c, p| problem.source(k, r, c, p));
    let field = solve_3d(&grid, &source)?;
    let seconds = start.elapsed().as_secs_f64();
    check_finite(&field)?;
    Ok(TimedSolve { field, seconds })
}

pub fn check_finite(field: &SolutionField) -> CmdResult<()> {
    if field.nodal().values.iter().flatten().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Failure::numerical("solution has non-finite values"))
    }
}

/// Per-domain max collocation errors against the closed-form solution.
pub fn error_records(solve: &TimedSolve, problem: Problem) -> Vec<ConvergenceRecord> {
    let n_r = solve.field.grid().config().n_r;
    DomainKind::ALL
        .iter()
        .map(|&k| ConvergenceRecord {
            n_r,
            domain: k.name(),
            error: max_collocation_error(&solve.field, |r, c, p| problem.solution(r, c, p), k),
            seconds: solve.seconds,
        })
        .collect()
}

/// Worker count: the environment cap if set and positive, else rayon's default.
pub fn worker_count() -> CmdResult<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Failure::usage(format!("{WORKERS_ENV} must be a positive integer, got {s:?}"))),
            Ok(n) => Ok(Some(n)),
        },
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub problem: Problem,
    pub basis: BasisKind,
    pub n_r: Vec<usize>,
    pub n_theta: usize,
    pub n_phi: usize,
    pub workers: Option<usize>,
}

pub fn validate_nr_list(n_r: &[usize]) -> CmdResult<()> {
    if n_r.is_empty() {
        return Err(Failure::usage("N_r list is empty"));
    }
    if let Some(n) = n_r.iter().find(|&&n| n < 6) {
        return Err(Failure::usage(format!("N_r = {n} is below the minimum of 6")));
    }
    if n_r.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::usage("N_r values must be strictly ascending"));
    }
    Ok(())
}

/// Runs one solve per `N_r` on a pool of at most `workers` threads. Rows
/// come back ordered by `N_r`, then nucleus, shell, external.
pub fn run_sweep(config: &SweepConfig) -> CmdResult<Vec<ConvergenceRecord>> {
    validate_nr_list(&config.n_r)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(e.into()))?;
    let jobs: Vec<CmdResult<Vec<ConvergenceRecord>>> = pool.install(|| {
        config
            .n_r
            .par_iter()
            .map(|&n_r| {
                let cfg = SolveConfig {
                    n_r,
                    n_theta: config.n_theta,
                    n_phi: config.n_phi,
                    nucleus_basis: config.basis.nucleus(),
                };
                solve_problem(cfg, config.problem).map(|s| error_records(&s, config.problem))
            })
            .collect()
    });
    let mut rows = Vec::new();
    for job in jobs {
        rows.extend(job?);
    }
    let order = |d: &str| DomainKind::ALL.iter().position(|k| k.name() == d);
    rows.sort_by_key(|r| (r.n_r, order(r.domain)));
    Ok(rows)
}

/// Error series of one domain as `(N_r, error)`.
pub fn series(rows: &[ConvergenceRecord], domain: DomainKind) -> Vec<(usize, f64)> {
    rows.iter().filter(|r| r.domain == domain.name()).map(|r| (r.n_r, r.error)).collect()
}

/// Rate or slope fitted to one domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub basis: &'static str,
    pub domain: &'static str,
    /// `algebraic_rate` or `exponential_slope`.
    pub kind: &'static str,
    pub value: Option<f64>,
}

/// Fits for every domain: algebraic rates for the sqrt source, the
/// log10-error-per-`N_r` slope otherwise.
pub fn fit_reports(rows: &[ConvergenceRecord], problem: Problem, basis: BasisKind) -> Vec<FitReport> {
    DomainKind::ALL
        .iter()
        .map(|&k| {
            let pts = series(rows, k);
            let (kind, value) = match problem {
                Problem::Sqrt => ("algebraic_rate", fit::algebraic_rate(&pts)),
                _ => ("exponential_slope", fit::exponential_slope(&pts)),
            };
            FitReport { basis: basis.name(), domain: k.name(), kind, value }
        })
        .collect()
}

/// Writes `N_r,domain,error,seconds` rows. Errors print in shortest
/// round-trip form, so equal values give identical bytes.
pub fn write_csv(out: impl Write, rows: &[ConvergenceRecord]) -> CmdResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    records: &'a [ConvergenceRecord],
    #[serde(skip_serializing_if = "<[FitReport]>::is_empty")]
    fits: &'a [FitReport],
}

pub fn write_json(mut out: impl Write, rows: &[ConvergenceRecord], fits: &[FitReport]) -> CmdResult<()> {
    serde_json::to_writer_pretty(&mut out, &JsonReport { records: rows, fits })?;
    writeln!(out)?;
    Ok(())
}
