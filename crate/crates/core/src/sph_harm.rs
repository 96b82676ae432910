//! Spherical-harmonic analysis and synthesis on a Gauss-Legendre (in `cos θ`)
//! by equispaced (in `φ`) grid.
//!
//! Harmonics are orthonormal on the unit sphere and carry the Condon-Shortley
//! phase: `Y_l^m = P̄_l^m(cos θ) e^{imφ}` with `Y_l^{-m} = (-1)^m conj(Y_l^m)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::tridiag_eigenvalues;
use crate::{Error, Result};

use core::f64::consts::PI;

/// Collocation grid on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    n_theta: usize,
    n_phi: usize,
    cos_theta: Vec<f64>,
    theta_weights: Vec<f64>,
    phi: Vec<f64>,
    /// `P̄_l^m(cos θ_j)` for `m <= m_max`, `l <= l_max`, laid out by [`AngularGrid::plm_index`].
    plm: Vec<f64>,
}

impl AngularGrid {
    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn l_max(&self) -> usize {
        self.n_theta - 1
    }

    pub fn m_max(&self) -> usize {
        (self.n_phi / 2 - 1).min(self.l_max())
    }

    /// Gauss-Legendre nodes in `cos θ`, ascending.
    pub fn cos_theta(&self) -> &[f64] {
        &self.cos_theta
    }

    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Number of points, `n_theta * n_phi`; values are stored θ-major.
    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn plm_index(&self, l: usize, m: usize, j: usize) -> usize {
        ((m * (self.l_max() + 1)) + l) * self.n_theta + j
    }

    fn plm(&self, l: usize, m: usize, j: usize) -> f64 {
        self.plm[self.plm_index(l, m, j)]
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            kf / libm::sqrt(4.0 * kf * kf - 1.0)
        })
        .collect();
    let mut nodes = tridiag_eigenvalues(&vec![0.0; n], &offdiag);
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        let (p, dp) = legendre_with_derivative(n, *x);
        let step = p / dp;
        if libm::fabs(step) < 1e-6 {
            *x -= step;
        }
        let (_, dp) = legendre_with_derivative(n, *x);
        weights.push(2.0 / ((1.0 - *x * *x) * dp * dp));
    }
    for i in 0..n / 2 {
        let half = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -half;
        nodes[n - 1 - i] = half;
        let w = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` for `|x| < 1`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Orthonormal associated Legendre values `P̄_l^m(x)` for `l = m..=l_max`,
/// Condon-Shortley phase included.
pub fn normalized_plm(l_max: usize, m: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; l_max + 1];
    if m > l_max {
        return out;
    }
    let s = libm::sqrt((1.0 - x) * (1.0 + x));
    let mut pmm = 1.0 / libm::sqrt(4.0 * PI);
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -libm::sqrt((2.0 * kf + 1.0) / (2.0 * kf)) * s;
    }
    out[m] = pmm;
    if m == l_max {
        return out;
    }
    let mf = m as f64;
    out[m + 1] = libm::sqrt(2.0 * mf + 3.0) * x * pmm;
    for l in m + 2..=l_max {
        let lf = l as f64;
        let a = libm::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
        let b = libm::sqrt(((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0));
        out[l] = a * (x * out[l - 1] - b * out[l - 2]);
    }
    out
}

pub fn build_grid(n_theta: usize, n_phi: usize) -> Result<AngularGrid> {
    if n_theta == 0 {
        return Err(Error::Domain("n_theta must be positive"));
    }
    if n_phi == 0 || n_phi % 2 == 1 {
        return Err(Error::Domain("n_phi must be even and positive"));
    }
    let (cos_theta, theta_weights) = gauss_legendre(n_theta);
    let phi = (0..n_phi).map(|k| 2.0 * PI * k as f64 / n_phi as f64).collect();
    let mut grid = AngularGrid { n_theta, n_phi, cos_theta, theta_weights, phi, plm: Vec::new() };
    let l_max = grid.l_max();
    let m_max = grid.m_max();
    grid.plm = vec![0.0; (m_max + 1) * (l_max + 1) * n_theta];
    for m in 0..=m_max {
        for j in 0..n_theta {
            let vals = normalized_plm(l_max, m, grid.cos_theta[j]);
            for (l, v) in vals.into_iter().enumerate() {
                let idx = grid.plm_index(l, m, j);
                grid.plm[idx] = v;
            }
        }
    }
    Ok(grid)
}

/// Coefficients `c_lm`, `0 <= l <= l_max`, `|m| <= min(l, m_max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoeffs {
    l_max: usize,
    m_max: usize,
    data: Vec<Complex64>,
}

impl HarmonicCoeffs {
    pub fn zeros(l_max: usize, m_max: usize) -> Self {
        let m_max = m_max.min(l_max);
        Self { l_max, m_max, data: vec![Complex64::new(0.0, 0.0); (l_max + 1) * (2 * m_max + 1)] }
    }

    pub fn for_grid(grid: &AngularGrid) -> Self {
        Self::zeros(grid.l_max(), grid.m_max())
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    fn slot(&self, l: usize, m: i64) -> Option<usize> {
        if l > self.l_max || m.unsigned_abs() as usize > self.m_max.min(l) {
            return None;
        }
        Some(l * (2 * self.m_max + 1) + (m + self.m_max as i64) as usize)
    }

    /// `c_lm`, zero outside the stored range.
    pub fn get(&self, l: usize, m: i64) -> Complex64 {
        self.slot(l, m).map_or(Complex64::new(0.0, 0.0), |i| self.data[i])
    }

    pub fn set(&mut self, l: usize, m: i64, v: Complex64) -> Result<()> {
        let i = self.slot(l, m).ok_or(Error::Domain("(l, m) outside the harmonic range"))?;
        self.data[i] = v;
        Ok(())
    }

    /// All stored `(l, m)` pairs, `l` ascending then `m` ascending.
    pub fn modes(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..=self.l_max).flat_map(move |l| {
            let mm = self.m_max.min(l) as i64;
            (-mm..=mm).map(move |m| (l, m))
        })
    }

    /// `Σ |c_lm|²`.
    pub fn power(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest deviation from `c_{l,-m} = (-1)^m conj(c_lm)`.
    pub fn reality_defect(&self) -> f64 {
        self.modes()
            .filter(|&(_, m)| m > 0)
            .map(|(l, m)| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                (self.get(l, -m) - self.get(l, m).conj() * sign).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn check_len(grid: &AngularGrid, found: usize) -> Result<()> {
    if found != grid.len() {
        return Err(Error::Dimension { expected: grid.len(), found });
    }
    Ok(())
}

/// `c_lm = Σ_j Σ_k w_j (2π/n_φ) f(θ_j, φ_k) conj(Y_l^m(θ_j, φ_k))` for
/// complex nodal values stored θ-major.
pub fn analyze_complex(grid: &AngularGrid, values: &[Complex64]) -> Result<HarmonicCoeffs> {
    check_len(grid, values.len())?;
    let mut out = HarmonicCoeffs::for_grid(grid);
    let m_max = grid.m_max() as i64;
    let dphi = 2.0 * PI / grid.n_phi as f64;
    for m in -m_max..=m_max {
        let ma = m.unsigned_abs() as usize;
        let msign = if m < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
        // azimuthal Fourier coefficient per colatitude
        let fm: Vec<Complex64> = (0..grid.n_theta)
            .map(|j| {
                let row = &values[j * grid.n_phi..(j + 1) * grid.n_phi];
                row.iter().enumerate().map(|(k, v)| v * Complex64::from_polar(dphi, -(m as f64) * grid.phi[k])).sum()
            })
            .collect();
        for l in ma..=grid.l_max() {
            let c: Complex64 = (0..grid.n_theta).map(|j| fm[j] * grid.theta_weights[j] * grid.plm(l, ma, j)).sum();
            out.set(l, m, c * msign)?;
        }
    }
    Ok(out)
}

/// Analysis of a real field.
pub fn analyze(grid: &AngularGrid, values: &[f64]) -> Result<HarmonicCoeffs> {
    let complex: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    analyze_complex(grid, &complex)
}

/// `f(θ_j, φ_k) = Σ c_lm Y_l^m(θ_j, φ_k)`, θ-major.
pub fn synthesize_complex(grid: &AngularGrid, coeffs: &HarmonicCoeffs) -> Result<Vec<Complex64>> {
    if coeffs.l_max() > grid.l_max() || coeffs.m_max() > grid.m_max() {
        return Err(Error::Domain("coefficients exceed the grid's band limit"));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); grid.len()];
    let m_max = coeffs.m_max() as i64;
    for m in -m_max..=m_max {
        let ma = m.unsigned_abs() as usize;
        let msign = if m < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
        for j in 0..grid.n_theta {
            let radial: Complex64 =
                (ma..=coeffs.l_max()).map(|l| coeffs.get(l, m) * grid.plm(l, ma, j)).sum::<Complex64>() * msign;
            if radial == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..grid.n_phi {
                out[j * grid.n_phi + k] += radial * Complex64::from_polar(1.0, m as f64 * grid.phi[k]);
            }
        }
    }
    Ok(out)
}

/// Synthesis keeping the real part.
pub fn synthesize(grid: &AngularGrid, coeffs: &HarmonicCoeffs) -> Result<Vec<f64>> {
    Ok(synthesize_complex(grid, coeffs)?.into_iter().map(|c| c.re).collect())
}

/// `ΔY_l^m = -l(l+1) Y_l^m` on the unit sphere.
pub fn laplacian_angular_eigenvalue(l: usize) -> f64 {
    -((l * (l + 1)) as f64)
}
