//! Source selection and the `r theta phi value` table format.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use anyhow::Context;
use clap::ValueEnum;
use jacobi_spectral::poisson::{CollocationGrid, DomainKind, GridValues, NucleusBasis, Problem};

use crate::failure::{CmdResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum SourceKind {
    Zero,
    Smooth,
    Sqrt,
    UniformBall,
    File,
}

impl SourceKind {
    /// The built-in problem, or `None` for tabulated sources.
    pub fn problem(self) -> Option<Problem> {
        match self {
            SourceKind::Zero => Some(Problem::Zero),
            SourceKind::Smooth => Some(Problem::Smooth),
            SourceKind::Sqrt => Some(Problem::Sqrt),
            SourceKind::UniformBall => Some(Problem::UniformBall),
            SourceKind::File => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum BasisKind {
    Jacobi02,
    Chebyshev,
}

impl BasisKind {
    pub fn nucleus(self) -> NucleusBasis {
        match self {
            BasisKind::Jacobi02 => NucleusBasis::Jacobi02,
            BasisKind::Chebyshev => NucleusBasis::ChebyshevParity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Jacobi02 => "jacobi02",
            BasisKind::Chebyshev => "chebyshev",
        }
    }
}

/// Coordinates of a grid point as `(r, θ, φ)`; `r` is `inf` at the far
/// end of the external domain.
pub fn spherical_points(grid: &CollocationGrid, kind: DomainKind) -> Vec<(f64, f64, f64)> {
    grid.points(kind).into_iter().map(|(r, c, p)| (r, c.clamp(-1.0, 1.0).acos(), p)).collect()
}

/// Writes one `r theta phi value` line per grid point, domain by domain.
/// Interface radii appear once per side.
pub fn write_table(out: &mut impl Write, grid: &CollocationGrid, values: &GridValues) -> std::io::Result<()> {
    writeln!(out, "# r theta phi value")?;
    for kind in DomainKind::ALL {
        for ((r, t, p), v) in spherical_points(grid, kind).into_iter().zip(values.domain(kind)) {
            writeln!(out, "{r:.16e} {t:.16e} {p:.16e} {v:.16e}")?;
        }
    }
    Ok(())
}

const KEY_SCALE: f64 = 1e9;

type Key = (i64, i64, i64);

fn quantize(v: f64) -> i64 {
    if v.is_infinite() {
        i64::MAX
    } else {
        (v * KEY_SCALE).round() as i64
    }
}

fn key(r: f64, t: f64, p: f64) -> Key {
    (quantize(r), quantize(t), quantize(p))
}

/// Values at one point in file order, and how many have been used.
#[derive(Default)]
struct Entry {
    values: Vec<f64>,
    used: usize,
}

impl Entry {
    /// Interface points are listed once per side, so a repeated point hands
    /// out its values in order; a single value serves both sides.
    fn take(&mut self) -> f64 {
        let v = self.values[self.used.min(self.values.len() - 1)];
        self.used += 1;
        v
    }
}

fn lookup(table: &mut HashMap<Key, Entry>, k: Key) -> Option<f64> {
    if let Some(e) = table.get_mut(&k) {
        return Some(e.take());
    }
    // coordinates printed with fewer digits can round to a neighbouring key
    let step = |v: i64, d: i64| if v == i64::MAX { v } else { v + d };
    for dr in -1..=1 {
        for dt in -1..=1 {
            for dp in -1..=1 {
                if let Some(e) = table.get_mut(&(step(k.0, dr), step(k.1, dt), step(k.2, dp))) {
                    return Some(e.take());
                }
            }
        }
    }
    None
}

/// Reads a table and returns its values on `grid`. Every grid point must
/// appear, matched to about 1e-9 in each coordinate; extra rows are
/// ignored. A point listed twice gives its first value to the inner
/// domain and its second to the outer one. Blank lines and lines starting with `#` are skipped.
pub fn read_table(input: impl BufRead, grid: &CollocationGrid) -> CmdResult<GridValues> {
    let mut table: HashMap<Key, Entry> = HashMap::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<f64> = line
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("line {}: expected four numbers", lineno + 1))
            .map_err(Failure::Usage)?;
        if fields.len() != 4 {
            return Err(Failure::usage(format!("line {}: expected four numbers, found {}", lineno + 1, fields.len())));
        }
        table.entry(key(fields[0], fields[1], fields[2])).or_default().values.push(fields[3]);
    }
    let mut values: [Vec<f64>; 3] = Default::default();
    for kind in DomainKind::ALL {
        for (r, t, p) in spherical_points(grid, kind) {
            let v = lookup(&mut table, key(r, t, p)).ok_or_else(|| {
                Failure::usage(format!("source table has no value at r={r} theta={t} phi={p} ({})", kind.name()))
            })?;
            values[kind as usize].push(v);
        }
    }
    Ok(GridValues { values })
}
