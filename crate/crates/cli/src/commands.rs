//! Subcommand bodies.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use jacobi_spectral::poisson::{solve_3d, CollocationGrid, SolveConfig};
use jacobi_spectral::quadrature::build_rule;
use jacobi_spectral::JacobiIndex;

use crate::cli::{Command, Format, GridArgs, OutputArgs};
use crate::failure::{CmdResult, Failure};
use crate::selftest;
use crate::source::{read_table, write_table, SourceKind};
use crate::sweep::{self, SweepConfig, TimedSolve};

fn open_output(path: Option<&Path>) -> CmdResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display())).map_err(Failure::Usage)?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Summary lines go to stdout when the data goes to a file, else stderr.
fn summary_sink(out: &OutputArgs) -> Box<dyn Write> {
    if out.output.is_some() {
        Box::new(io::stdout())
    } else {
        Box::new(io::stderr())
    }
}

fn solve_config(nr: usize, grid: &GridArgs) -> SolveConfig {
    SolveConfig { n_r: nr, n_theta: grid.n_theta, n_phi: grid.n_phi, nucleus_basis: grid.basis.nucleus() }
}

pub fn run(command: Command) -> CmdResult<()> {
    match command {
        Command::Quadrature { alpha, beta, n, out } => quadrature(alpha, beta, n, &out),
        Command::Solve { source, source_file, nr, grid, solution, out } => {
            solve(source, source_file.as_deref(), nr, &grid, solution.as_deref(), &out)
        }
        Command::Converge { source, nr, grid, no_timing, out } => converge(source, nr, &grid, no_timing, &out),
        Command::Grid { source, nr, grid, output } => dump_grid(source, nr, &grid, output.as_deref()),
        Command::Selftest { suites, perturb_weight, json } => run_selftest(&suites, perturb_weight, json),
    }
}

fn quadrature(alpha: f64, beta: f64, n: usize, out: &OutputArgs) -> CmdResult<()> {
    let rule = build_rule(JacobiIndex::new(alpha, beta)?, n)?;
    let mut w = open_output(out.output.as_deref())?;
    match out.format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["i", "node", "weight"])?;
            for (i, (x, wt)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                csv.write_record([i.to_string(), format!("{x:.16e}"), format!("{wt:.16e}")])?;
            }
            csv.flush()?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "alpha": alpha,
                "beta": beta,
                "n": n,
                "nodes": rule.nodes(),
                "weights": rule.weights(),
            });
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn check_nr(nr: usize) -> CmdResult<()> {
    sweep::validate_nr_list(&[nr])
}

fn solve(
    source: SourceKind,
    source_file: Option<&Path>,
    nr: usize,
    grid_args: &GridArgs,
    solution: Option<&Path>,
    out: &OutputArgs,
) -> CmdResult<()> {
    check_nr(nr)?;
    let config = solve_config(nr, grid_args);
    let (solved, problem) = match source.problem() {
        Some(p) => (sweep::solve_problem(config, p)?, Some(p)),
        None => {
            let path = source_file.ok_or_else(|| Failure::usage("--source file needs --source-file"))?;
            let grid = CollocationGrid::new(config)?;
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display())).map_err(Failure::Usage)?;
            let values = read_table(BufReader::new(file), &grid)?;
            let start = std::time::Instant::now();
            let field = solve_3d(&grid, &values)?;
            let seconds = start.elapsed().as_secs_f64();
            sweep::check_finite(&field)?;
            (TimedSolve { field, seconds }, None)
        }
    };
    let mut summary = summary_sink(out);
    writeln!(
        summary,
        "interface_mismatch={:.3e} max_relative_residual={:.3e} seconds={:.3}",
        solved.field.interface_mismatch(),
        solved.field.max_relative_residual(),
        solved.seconds
    )?;
    match problem {
        Some(p) => {
            let rows = sweep::error_records(&solved, p);
            let w = open_output(out.output.as_deref())?;
            match out.format {
                Format::Csv => sweep::write_csv(w, &rows)?,
                Format::Json => sweep::write_json(w, &rows, &[])?,
            }
            if let Some(path) = solution {
                write_field(path, &solved)?;
            }
        }
        None => {
            // no closed form to compare with: the field itself is the result
            match solution {
                Some(path) => write_field(path, &solved)?,
                None => {
                    let mut w = open_output(out.output.as_deref())?;
                    write_table(&mut w, solved.field.grid(), solved.field.nodal())?;
                    w.flush()?;
                }
            }
        }
    }
    Ok(())
}

fn write_field(path: &Path, solved: &TimedSolve) -> CmdResult<()> {
    let mut w = open_output(Some(path))?;
    write_table(&mut w, solved.field.grid(), solved.field.nodal())?;
    w.flush()?;
    Ok(())
}

fn converge(source: SourceKind, nr: Vec<usize>, grid: &GridArgs, no_timing: bool, out: &OutputArgs) -> CmdResult<()> {
    let problem = source
        .problem()
        .ok_or_else(|| Failure::usage("converge needs a built-in source; a table only fits one grid"))?;
    let config = SweepConfig {
        problem,
        basis: grid.basis,
        n_r: nr,
        n_theta: grid.n_theta,
        n_phi: grid.n_phi,
        workers: sweep::worker_count()?,
    };
    let mut rows = sweep::run_sweep(&config)?;
    if no_timing {
        rows.iter_mut().for_each(|r| r.seconds = 0.0);
    }
    let fits = sweep::fit_reports(&rows, problem, grid.basis);
    let w = open_output(out.output.as_deref())?;
    match out.format {
        Format::Csv => sweep::write_csv(w, &rows)?,
        Format::Json => sweep::write_json(w, &rows, &fits)?,
    }
    let mut summary = summary_sink(out);
    for f in &fits {
        match f.value {
            Some(v) => writeln!(summary, "fit basis={} domain={} {}={v:.4}", f.basis, f.domain, f.kind)?,
            None => writeln!(summary, "fit basis={} domain={} {}=none", f.basis, f.domain, f.kind)?,
        }
    }
    Ok(())
}

fn dump_grid(source: SourceKind, nr: usize, grid_args: &GridArgs, output: Option<&Path>) -> CmdResult<()> {
    check_nr(nr)?;
    let problem = source.problem().ok_or_else(|| Failure::usage("grid needs a built-in source"))?;
    let grid = CollocationGrid::new(solve_config(nr, grid_args))?;
    let values = grid.sample(|k, r, c, p| problem.source(k, r, c, p));
    let mut w = open_output(output)?;
    write_table(&mut w, &grid, &values)?;
    w.flush()?;
    Ok(())
}

fn run_selftest(suites: &[String], perturb_weight: Option<f64>, json: bool) -> CmdResult<()> {
    let names: Vec<&str> =
        if suites.is_empty() { selftest::SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
    let reports = selftest::run(&names, &selftest::Options { perturb_weight });
    let mut w = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut w, &reports)?;
        writeln!(w)?;
    } else {
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(
                w,
                "{status} {:<10} {:>6} checks  worst {:.2e} of tolerance  {:.2} s",
                r.name, r.checks, r.worst_ratio, r.seconds
            )?;
            for f in r.failures.iter().take(5) {
                writeln!(w, "     {f}")?;
            }
            if r.failures.len() > 5 {
                writeln!(w, "     ... {} more", r.failures.len() - 5)?;
            }
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::numerical(format!("failed suites: {}", failed.join(", "))))
    }
}
