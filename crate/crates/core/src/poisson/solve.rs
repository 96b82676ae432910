//! Three-dimensional solve: angular analysis on every radial node, radial
//! transform per `(l, m)`, one tau solve per mode, synthesis.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::operators::{external_source_scale, parity_degree, parity_size, shell_source_scale};
use super::system::{
    assemble_block_system, dot, DomainKind, DomainSpec, NucleusBasis, RadialBlockSystem, RadialSources,
};
use crate::jacobi::JacobiIndex;
use crate::linalg::DenseMatrix;
use crate::quadrature::build_rule;
use crate::sph_harm::{analyze, build_grid, synthesize, AngularGrid, HarmonicCoeffs};
use crate::transform::{chebyshev_forward, chebyshev_nodes, clenshaw_slice, forward, Basis, NodalValues};
use crate::{Error, Result};

/// Discretization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub n_r: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    pub nucleus_basis: NucleusBasis,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self { n_r: 17, n_theta: 17, n_phi: 16, nucleus_basis: NucleusBasis::Jacobi02 }
    }
}

/// Radial collocation of one domain with its value-to-coefficient maps.
#[derive(Debug, Clone)]
pub struct DomainGrid {
    pub spec: DomainSpec,
    /// Collocation coordinates `x`, ascending.
    pub x: Vec<f64>,
    /// Radii of the collocation points.
    pub r: Vec<f64>,
    /// Nodal values to coefficients, indexed by the parity of `l`.
    analysis: [DenseMatrix; 2],
    /// Coefficients to nodal values, indexed by the parity of `l`.
    synthesis: [DenseMatrix; 2],
}

impl DomainGrid {
    fn new(spec: DomainSpec) -> Result<Self> {
        let n = spec.n_r;
        let x = match (spec.kind, spec.nucleus_basis) {
            (DomainKind::Nucleus, NucleusBasis::Jacobi02) => build_rule(JacobiIndex::J02, n)?.nodes().to_vec(),
            (DomainKind::Nucleus, NucleusBasis::ChebyshevParity) => (0..=n)
                .map(|j| if j == n { 1.0 } else { libm::sin(core::f64::consts::PI * j as f64 / (2 * n) as f64) })
                .collect(),
            _ => chebyshev_nodes(n),
        };
        let mapping = spec.mapping();
        let r = x.iter().map(|&x| mapping.radius(x)).collect();
        let (analysis, synthesis) = match (spec.kind, spec.nucleus_basis) {
            (DomainKind::Nucleus, NucleusBasis::Jacobi02) => {
                let rule = build_rule(JacobiIndex::J02, n)?;
                let a = columns(n + 1, |unit| Ok(forward(&NodalValues::new(&rule, unit)?)?.into_coeffs()))?;
                let s = synthesis_matrix(Basis::Jacobi(JacobiIndex::J02), &x, n + 1, |k| k);
                ([a.clone(), a], [s.clone(), s])
            }
            (DomainKind::Nucleus, NucleusBasis::ChebyshevParity) => {
                let mut a = Vec::with_capacity(2);
                let mut s = Vec::with_capacity(2);
                for parity in 0..2 {
                    a.push(columns(n + 1, |unit| parity_forward(&unit, parity))?);
                    s.push(synthesis_matrix(Basis::Chebyshev, &x, parity_size(parity, n), |k| {
                        parity_degree(parity, k)
                    }));
                }
                let [a0, a1]: [DenseMatrix; 2] = a.try_into().map_err(|_| Error::Domain("parity tables"))?;
                let [s0, s1]: [DenseMatrix; 2] = s.try_into().map_err(|_| Error::Domain("parity tables"))?;
                ([a0, a1], [s0, s1])
            }
            _ => {
                let a = columns(n + 1, |unit| Ok(chebyshev_forward(&unit)?.into_coeffs()))?;
                let s = synthesis_matrix(Basis::Chebyshev, &x, n + 1, |k| k);
                ([a.clone(), a], [s.clone(), s])
            }
        };
        Ok(Self { spec, x, r, analysis, synthesis })
    }

    /// Coefficients (in the domain's unknown layout for `l`) of nodal values.
    pub fn to_coeffs(&self, l: usize, values: &[f64]) -> Vec<f64> {
        self.analysis[l % 2].mul_vec(values)
    }

    /// Nodal values of coefficients in the unknown layout for `l`.
    pub fn to_values(&self, l: usize, coeffs: &[f64]) -> Vec<f64> {
        self.synthesis[l % 2].mul_vec(coeffs)
    }
}

/// Builds a matrix column by column from its action on unit vectors.
fn columns(n: usize, mut f: impl FnMut(Vec<f64>) -> Result<Vec<f64>>) -> Result<DenseMatrix> {
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut unit = vec![0.0; n];
        unit[j] = 1.0;
        cols.push(f(unit)?);
    }
    let rows = cols[0].len();
    Ok(DenseMatrix::from_fn(rows, n, |i, j| cols[j][i]))
}

fn synthesis_matrix(basis: Basis, x: &[f64], size: usize, degree: impl Fn(usize) -> usize) -> DenseMatrix {
    let top = (0..size).map(&degree).max().unwrap_or(0);
    DenseMatrix::from_fn(x.len(), size, |i, k| {
        let mut c = vec![0.0; top + 1];
        c[degree(k)] = 1.0;
        clenshaw_slice(basis, &c, x[i])
    })
}

/// Even (`parity = 0`) or odd coefficients of values given at
/// `x_j = sin(πj/(2N))`, through the mirrored `2N+1` point
/// Chebyshev-Gauss-Lobatto transform.
fn parity_forward(values: &[f64], parity: usize) -> Result<Vec<f64>> {
    let n = values.len() - 1;
    let mut full = vec![0.0; 2 * n + 1];
    let sign = if parity == 0 { 1.0 } else { -1.0 };
    for j in 0..=n {
        full[n + j] = values[j];
        full[n - j] = sign * values[j];
    }
    if parity == 1 {
        full[n] = 0.0;
    }
    let c = chebyshev_forward(&full)?.into_coeffs();
    Ok((0..parity_size(parity, n)).map(|k| c[parity_degree(parity, k)]).collect())
}

/// Collocation points of all three domains with the angular grid.
#[derive(Debug, Clone)]
pub struct CollocationGrid {
    config: SolveConfig,
    angular: AngularGrid,
    domains: [DomainGrid; 3],
}

impl CollocationGrid {
    pub fn new(config: SolveConfig) -> Result<Self> {
        let angular = build_grid(config.n_theta, config.n_phi)?;
        let mk = |kind| DomainGrid::new(DomainSpec { kind, n_r: config.n_r, nucleus_basis: config.nucleus_basis });
        let domains = [mk(DomainKind::Nucleus)?, mk(DomainKind::Shell)?, mk(DomainKind::External)?];
        if config.n_r < 6 {
            return Err(Error::Domain("radial truncation N_r must be at least 6"));
        }
        Ok(Self { config, angular, domains })
    }

    pub fn config(&self) -> SolveConfig {
        self.config
    }

    pub fn angular(&self) -> &AngularGrid {
        &self.angular
    }

    pub fn domain(&self, kind: DomainKind) -> &DomainGrid {
        &self.domains[kind.slot()]
    }

    /// Number of points in `kind`, radial-major then θ then φ.
    pub fn len(&self, kind: DomainKind) -> usize {
        self.domain(kind).x.len() * self.angular.len()
    }

    /// `(r, cos θ, φ)` of every point of `kind`, in storage order.
    pub fn points(&self, kind: DomainKind) -> Vec<(f64, f64, f64)> {
        let d = self.domain(kind);
        let mut out = Vec::with_capacity(self.len(kind));
        for &r in &d.r {
            for &c in self.angular.cos_theta() {
                for &p in self.angular.phi() {
                    out.push((r, c, p));
                }
            }
        }
        out
    }

    pub fn sample(&self, f: impl Fn(DomainKind, f64, f64, f64) -> f64) -> GridValues {
        let values = DomainKind::ALL.map(|k| self.points(k).into_iter().map(|(r, c, p)| f(k, r, c, p)).collect());
        GridValues { values }
    }
}

/// Nodal values on a [`CollocationGrid`], one array per domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GridValues {
    pub values: [Vec<f64>; 3],
}

impl GridValues {
    pub fn domain(&self, kind: DomainKind) -> &[f64] {
        &self.values[kind.slot()]
    }
}

/// Solved field: radial coefficients per domain and mode, plus nodal values.
#[derive(Debug, Clone)]
pub struct SolutionField {
    grid: CollocationGrid,
    modes: Vec<(usize, i64)>,
    /// `radial[domain][mode]`: complex coefficients in the unknown layout of `l`.
    radial: [Vec<Vec<Complex64>>; 3],
    nodal: GridValues,
    max_relative_residual: f64,
}

impl SolutionField {
    pub fn grid(&self) -> &CollocationGrid {
        &self.grid
    }

    pub fn nodal(&self) -> &GridValues {
        &self.nodal
    }

    pub fn modes(&self) -> &[(usize, i64)] {
        &self.modes
    }

    /// Radial coefficients of mode `(l, m)` in `kind`.
    pub fn radial_coeffs(&self, kind: DomainKind, l: usize, m: i64) -> Option<&[Complex64]> {
        let i = self.modes.iter().position(|&q| q == (l, m))?;
        Some(&self.radial[kind.slot()][i])
    }

    /// Largest relative residual over all radial solves.
    pub fn max_relative_residual(&self) -> f64 {
        self.max_relative_residual
    }

    /// Largest jump of `f` or `df/dr` across `r = 1` and `r = 2`, over all modes.
    pub fn interface_mismatch(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, &(l, _)) in self.modes.iter().enumerate() {
            let rows = DomainKind::ALL.map(|k| self.grid.domain(k).spec.edge_rows(l));
            let c = [&self.radial[0][i], &self.radial[1][i], &self.radial[2][i]];
            let eval = |row: &[f64], coeffs: &[Complex64]| {
                let re: Vec<f64> = coeffs.iter().map(|z| z.re).collect();
                let im: Vec<f64> = coeffs.iter().map(|z| z.im).collect();
                Complex64::new(dot(row, &re), dot(row, &im))
            };
            let jumps = [
                eval(&rows[0].value_outer, c[0]) - eval(&rows[1].value_inner, c[1]),
                eval(&rows[0].slope_outer, c[0]) - eval(&rows[1].slope_inner, c[1]),
                eval(&rows[1].value_outer, c[1]) - eval(&rows[2].value_inner, c[2]),
                eval(&rows[1].slope_outer, c[1]) - eval(&rows[2].slope_inner, c[2]),
            ];
            for j in jumps {
                worst = worst.max(j.norm());
            }
        }
        worst
    }
}

/// Solves `Δf = S` for nodal source values on `grid`.
pub fn solve_3d(grid: &CollocationGrid, source: &GridValues) -> Result<SolutionField> {
    let ang = &grid.angular;
    let n_ang = ang.len();
    for k in DomainKind::ALL {
        if source.domain(k).len() != grid.len(k) {
            return Err(Error::Dimension { expected: grid.len(k), found: source.domain(k).len() });
        }
    }
    // harmonic coefficients at every radial node
    let mut harmonics: [Vec<HarmonicCoeffs>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for k in DomainKind::ALL {
        let d = grid.domain(k);
        let vals = source.domain(k);
        for (i, &x) in d.x.iter().enumerate() {
            let scale = match k {
                DomainKind::Nucleus => 1.0,
                DomainKind::Shell => shell_source_scale(x),
                DomainKind::External => external_source_scale(x),
            };
            let slice: Vec<f64> = vals[i * n_ang..(i + 1) * n_ang].iter().map(|v| v * scale).collect();
            harmonics[k.slot()].push(analyze(ang, &slice)?);
        }
    }
    let template = HarmonicCoeffs::for_grid(ang);
    let modes: Vec<(usize, i64)> = template.modes().collect();
    let mut systems: Vec<Option<RadialBlockSystem>> = vec![None; ang.l_max() + 1];
    let mut radial: [Vec<Vec<Complex64>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut max_res: f64 = 0.0;
    for &(l, m) in &modes {
        if systems[l].is_none() {
            systems[l] = Some(assemble_block_system(l, grid.config.n_r, grid.config.nucleus_basis)?);
        }
        let system = systems[l].as_ref().expect("assembled above");
        let mut parts = [Vec::new(), Vec::new()];
        for (part, out) in parts.iter_mut().enumerate() {
            let coeffs = DomainKind::ALL.map(|k| {
                let vals: Vec<f64> = harmonics[k.slot()]
                    .iter()
                    .map(|h| {
                        let c = h.get(l, m);
                        if part == 0 {
                            c.re
                        } else {
                            c.im
                        }
                    })
                    .collect();
                grid.domain(k).to_coeffs(l, &vals)
            });
            let [nucleus, shell, external] = coeffs;
            let b = system.rhs(&RadialSources { nucleus, shell, external, conditions: Vec::new() })?;
            let u = system.solve_vector(&b);
            let r = system.matrix().mul_vec(&u);
            let res = r.iter().zip(&b).fold(0.0f64, |acc, (x, y)| acc.max(libm::fabs(x - y)));
            let scale = b.iter().fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
            if scale > 0.0 {
                max_res = max_res.max(res / scale);
            }
            *out = u;
        }
        for k in DomainKind::ALL {
            let re = system.block(k, &parts[0]);
            let im = system.block(k, &parts[1]);
            radial[k.slot()].push(re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)).collect());
        }
    }
    // synthesis
    let mut nodal: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for k in DomainKind::ALL {
        let d = grid.domain(k);
        let n_rad = d.x.len();
        let mut per_node = vec![template.clone(); n_rad];
        for (i, &(l, m)) in modes.iter().enumerate() {
            let c = &radial[k.slot()][i];
            let re = d.to_values(l, &c.iter().map(|z| z.re).collect::<Vec<_>>());
            let im = d.to_values(l, &c.iter().map(|z| z.im).collect::<Vec<_>>());
            for j in 0..n_rad {
                per_node[j].set(l, m, Complex64::new(re[j], im[j]))?;
            }
        }
        let mut out = Vec::with_capacity(grid.len(k));
        for h in &per_node {
            out.extend(synthesize(ang, h)?);
        }
        nodal[k.slot()] = out;
    }
    Ok(SolutionField {
        grid: grid.clone(),
        modes,
        radial,
        nodal: GridValues { values: nodal },
        max_relative_residual: max_res,
    })
}

/// Builds the grid, samples an analytic source and solves.
pub fn solve_3d_analytic(
    config: SolveConfig,
    source: impl Fn(DomainKind, f64, f64, f64) -> f64,
) -> Result<SolutionField> {
    let grid = CollocationGrid::new(config)?;
    let values = grid.sample(source);
    solve_3d(&grid, &values)
}

/// `max |numeric - exact|` over the collocation points of `kind`.
pub fn max_collocation_error(solution: &SolutionField, exact: impl Fn(f64, f64, f64) -> f64, kind: DomainKind) -> f64 {
    let pts = solution.grid.points(kind);
    pts.iter()
        .zip(solution.nodal.domain(kind))
        .map(|(&(r, c, p), v)| libm::fabs(v - exact(r, c, p)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::Problem;

    #[test]
    fn parity_forward_recovers_even_and_odd() {
        let n = 6;
        let x: Vec<f64> = (0..=n).map(|j| libm::sin(core::f64::consts::PI * j as f64 / 12.0)).collect();
        // x² = (T_0 + T_2)/2
        let even = parity_forward(&x.iter().map(|v| v * v).collect::<Vec<_>>(), 0).unwrap();
        assert!((even[0] - 0.5).abs() < 1e-15 && (even[1] - 0.5).abs() < 1e-15);
        // x³ = (3T_1 + T_3)/4
        let odd = parity_forward(&x.iter().map(|v| v * v * v).collect::<Vec<_>>(), 1).unwrap();
        assert_eq!(odd.len(), n);
        assert!((odd[0] - 0.75).abs() < 1e-15 && (odd[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_source_solves_to_zero() {
        let cfg = SolveConfig { n_r: 8, n_theta: 5, n_phi: 4, nucleus_basis: NucleusBasis::Jacobi02 };
        let sol = solve_3d_analytic(cfg, |k, r, c, p| Problem::Zero.source(k, r, c, p)).unwrap();
        for k in DomainKind::ALL {
            assert_eq!(max_collocation_error(&sol, |_, _, _| 0.0, k), 0.0);
        }
    }

    #[test]
    fn uniform_ball_small_grid() {
        let cfg = SolveConfig { n_r: 17, n_theta: 3, n_phi: 4, nucleus_basis: NucleusBasis::Jacobi02 };
        let p = Problem::UniformBall;
        let sol = solve_3d_analytic(cfg, |k, r, c, ph| p.source(k, r, c, ph)).unwrap();
        for k in [DomainKind::Nucleus, DomainKind::External] {
            let e = max_collocation_error(&sol, |r, c, ph| p.solution(r, c, ph), k);
            assert!(e < 1e-11, "{k:?}: {e}");
        }
        assert!(sol.interface_mismatch() < 1e-10);
    }
}
