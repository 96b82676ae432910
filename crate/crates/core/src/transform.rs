//! Discrete transforms between Gauss-Lobatto nodal values and interpolant
//! coefficients, for Jacobi families and for Chebyshev polynomials.

use alloc::vec::Vec;

use crate::jacobi::{self, JacobiIndex};
use crate::quadrature::{weight_constant, QuadratureRule};
use crate::special::CompensatedSum;
use crate::{Error, Result};

/// Polynomial family of a coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Jacobi(JacobiIndex),
    /// Classical `T_n`, `T_n(1) = 1`.
    Chebyshev,
}

/// How `x in [-1, 1]` relates to the radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mapping {
    /// No radial meaning.
    Identity,
    /// `r = (1+x)/2`, `r in [0, 1]`.
    Nucleus,
    /// `r = (3+x)/2`, `r in [1, 2]`.
    Shell,
    /// `r = 4/(1-x)`, `r in [2, ∞)`.
    External,
    /// `r = x` on `x in [0, 1]`, for parity-restricted Chebyshev expansions.
    NucleusLinear,
}

impl Mapping {
    pub fn radius(&self, x: f64) -> f64 {
        match self {
            Mapping::Identity | Mapping::NucleusLinear => x,
            Mapping::Nucleus => 0.5 * (1.0 + x),
            Mapping::Shell => 0.5 * (3.0 + x),
            Mapping::External => {
                if x >= 1.0 {
                    f64::INFINITY
                } else {
                    4.0 / (1.0 - x)
                }
            }
        }
    }

    pub fn coordinate(&self, r: f64) -> f64 {
        match self {
            Mapping::Identity | Mapping::NucleusLinear => r,
            Mapping::Nucleus => 2.0 * r - 1.0,
            Mapping::Shell => 2.0 * r - 3.0,
            Mapping::External => {
                if r.is_infinite() {
                    1.0
                } else {
                    1.0 - 4.0 / r
                }
            }
        }
    }

    /// `dx/dr` at coordinate `x`, so that `df/dr = dx/dr · df/dx`.
    pub fn dx_dr(&self, x: f64) -> f64 {
        match self {
            Mapping::Identity | Mapping::NucleusLinear => 1.0,
            Mapping::Nucleus | Mapping::Shell => 2.0,
            Mapping::External => (1.0 - x) * (1.0 - x) / 4.0,
        }
    }
}

/// Coefficients `f̃_0..f̃_N` in a tagged basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    basis: Basis,
    mapping: Mapping,
    coeffs: Vec<f64>,
}

impl CoeffVector {
    pub fn new(basis: Basis, mapping: Mapping, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("coefficients must be finite"));
        }
        Ok(Self { basis, mapping, coeffs })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn mapping(&self) -> Mapping {
        self.mapping
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Highest degree represented.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn with_mapping(mut self, mapping: Mapping) -> Self {
        self.mapping = mapping;
        self
    }

    /// Keeps `f̃_0..f̃_k`.
    pub fn truncated(&self, k: usize) -> Self {
        let keep = (k + 1).min(self.coeffs.len());
        Self { basis: self.basis, mapping: self.mapping, coeffs: self.coeffs[..keep].to_vec() }
    }
}

/// Values `f(x_i)` on the nodes of a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalValues<'a> {
    rule: &'a QuadratureRule,
    values: Vec<f64>,
}

impl<'a> NodalValues<'a> {
    pub fn new(rule: &'a QuadratureRule, values: Vec<f64>) -> Result<Self> {
        if values.len() != rule.nodes().len() {
            return Err(Error::Dimension { expected: rule.nodes().len(), found: values.len() });
        }
        Ok(Self { rule, values })
    }

    /// Samples `f` at the nodes.
    pub fn sample(rule: &'a QuadratureRule, f: impl Fn(f64) -> f64) -> Self {
        Self { rule, values: rule.nodes().iter().map(|&x| f(x)).collect() }
    }

    pub fn rule(&self) -> &'a QuadratureRule {
        self.rule
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Accumulates either plainly or with compensation.
fn accumulate(terms: impl Iterator<Item = f64>, compensated: bool) -> f64 {
    if compensated {
        let mut s = CompensatedSum::new();
        terms.for_each(|t| s.add(t));
        s.value()
    } else {
        terms.sum()
    }
}

/// `J_m(x_i)` for all `m <= N`, one row per node.
fn node_tables(rule: &QuadratureRule) -> Vec<Vec<f64>> {
    let idx = rule.index();
    rule.nodes().iter().map(|&x| jacobi::recurrence_values(idx.alpha(), idx.beta(), rule.order(), x)).collect()
}

/// Interpolant coefficients by the closed form
///
/// `f̃_m = C/‖J_m‖² · { (1+β) f_0 J_m(x_0)/J_N(x_0)² + Σ_i f_i J_m(x_i)/J_N(x_i)² + (1+α) f_N J_m(x_N)/J_N(x_N)² }`
///
/// for `m < N`, with `C` the Lobatto weight constant, and
///
/// `f̃_N = { (1+β) f_0/J_N(x_0) + Σ_i f_i/J_N(x_i) + (1+α) f_N/J_N(x_N) } / (N+α+β+1)`.
pub fn forward(nodal: &NodalValues<'_>) -> Result<CoeffVector> {
    let rule = nodal.rule;
    let idx = rule.index();
    let n = rule.order();
    let (a, b) = (idx.alpha(), idx.beta());
    let tables = node_tables(rule);
    let f = &nodal.values;
    let factor = |i: usize| {
        if i == 0 {
            1.0 + b
        } else if i == n {
            1.0 + a
        } else {
            1.0
        }
    };
    let compensated = n > 64;
    let c = weight_constant(idx, n);
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..n {
        let s = accumulate(
            (0..=n).map(|i| {
                let jn = tables[i][n];
                factor(i) * f[i] * tables[i][m] / (jn * jn)
            }),
            compensated,
        );
        coeffs.push(c / jacobi::norm_sq(idx, m) * s);
    }
    let last = accumulate((0..=n).map(|i| factor(i) * f[i] / tables[i][n]), compensated);
    coeffs.push(last / (n as f64 + a + b + 1.0));
    CoeffVector::new(Basis::Jacobi(idx), Mapping::Identity, coeffs)
}

/// Interpolant coefficients by discrete projection
/// `f̃_m = Σ ρ_i f_i J_m(x_i) / ‖J_m‖²` for `m < N`; the last coefficient
/// divides by the discrete norm `Σ ρ_i J_N(x_i)²`.
pub fn forward_projection(nodal: &NodalValues<'_>) -> Result<CoeffVector> {
    let rule = nodal.rule;
    let idx = rule.index();
    let n = rule.order();
    let tables = node_tables(rule);
    let w = rule.weights();
    let f = &nodal.values;
    let compensated = n > 64;
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let s = accumulate((0..=n).map(|i| w[i] * f[i] * tables[i][m]), compensated);
        let norm = if m < n {
            jacobi::norm_sq(idx, m)
        } else {
            accumulate((0..=n).map(|i| w[i] * tables[i][n] * tables[i][n]), compensated)
        };
        coeffs.push(s / norm);
    }
    CoeffVector::new(Basis::Jacobi(idx), Mapping::Identity, coeffs)
}

/// Values of the expansion at the nodes of `rule`.
pub fn inverse<'a>(coeffs: &CoeffVector, rule: &'a QuadratureRule) -> Result<NodalValues<'a>> {
    if coeffs.basis() != Basis::Jacobi(rule.index()) {
        return Err(Error::BasisMismatch);
    }
    if coeffs.degree() != rule.order() {
        return Err(Error::Dimension { expected: rule.order() + 1, found: coeffs.coeffs().len() });
    }
    let values = rule.nodes().iter().map(|&x| clenshaw(coeffs, x)).collect();
    Ok(NodalValues { rule, values })
}

/// `Σ f̃_k P_k(x)` by Clenshaw summation on the basis recurrence.
pub fn interp_eval(coeffs: &CoeffVector, x: f64) -> Result<f64> {
    if !x.is_finite() || libm::fabs(x) > 1.0 + 1e-12 {
        return Err(Error::Domain("evaluation point must lie in [-1, 1]"));
    }
    Ok(clenshaw(coeffs, x))
}

pub(crate) fn clenshaw(coeffs: &CoeffVector, x: f64) -> f64 {
    clenshaw_slice(coeffs.basis(), coeffs.coeffs(), x)
}

/// Clenshaw summation on raw coefficients; an empty slice sums to zero.
pub(crate) fn clenshaw_slice(basis: Basis, c: &[f64], x: f64) -> f64 {
    if c.is_empty() {
        return 0.0;
    }
    let n = c.len() - 1;
    match basis {
        Basis::Jacobi(idx) => {
            let (a, b) = (idx.alpha(), idx.beta());
            let (mut b1, mut b2) = (0.0, 0.0);
            for k in (0..=n).rev() {
                let (ak, bk, _) = jacobi::recurrence_coeffs(a, b, k);
                let (_, _, ck1) = jacobi::recurrence_coeffs(a, b, k + 1);
                let bk_new = c[k] + (ak * x + bk) * b1 - ck1 * b2;
                b2 = b1;
                b1 = bk_new;
            }
            b1
        }
        Basis::Chebyshev => {
            let (mut b1, mut b2) = (0.0, 0.0);
            for k in (1..=n).rev() {
                let bk = c[k] + 2.0 * x * b1 - b2;
                b2 = b1;
                b1 = bk;
            }
            c[0] + x * b1 - b2
        }
    }
}

/// Chebyshev-Gauss-Lobatto nodes `-cos(πi/N)`, ascending.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..=n).map(|i| if 2 * i == n { 0.0 } else { -libm::cos(core::f64::consts::PI * i as f64 / n as f64) }).collect()
}

/// `T_k(x_j) = (-1)^k cos(πkj/N)` at Chebyshev-Gauss-Lobatto nodes.
fn chebyshev_at_node(k: usize, j: usize, n: usize) -> f64 {
    let r = (k * j) % (2 * n);
    let v = libm::cos(core::f64::consts::PI * r as f64 / n as f64);
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Interpolant coefficients from values at [`chebyshev_nodes`].
pub fn chebyshev_forward(values: &[f64]) -> Result<CoeffVector> {
    if values.len() < 2 {
        return Err(Error::Dimension { expected: 2, found: values.len() });
    }
    let n = values.len() - 1;
    let end = |i: usize| if i == 0 || i == n { 0.5 } else { 1.0 };
    let coeffs = (0..=n)
        .map(|k| {
            let s = accumulate((0..=n).map(|j| end(j) * values[j] * chebyshev_at_node(k, j, n)), n > 64);
            2.0 / n as f64 * end(k) * s
        })
        .collect();
    CoeffVector::new(Basis::Chebyshev, Mapping::Identity, coeffs)
}

/// Values at [`chebyshev_nodes`] of a Chebyshev expansion of degree `N`.
pub fn chebyshev_inverse(coeffs: &CoeffVector) -> Result<Vec<f64>> {
    if coeffs.basis() != Basis::Chebyshev {
        return Err(Error::BasisMismatch);
    }
    let n = coeffs.degree();
    let c = coeffs.coeffs();
    Ok((0..=n).map(|j| (0..=n).map(|k| c[k] * chebyshev_at_node(k, j, n)).sum()).collect())
}
