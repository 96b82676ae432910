//! Jacobi-Gauss-Lobatto rules.
//!
//! The `N - 1` interior nodes are the zeros of `J_N'`, obtained as the
//! eigenvalues of the symmetric tridiagonal Jacobi matrix of the
//! `(α+1, β+1)` family. The weights use the closed form
//! `ρ_i = C / J_N(x_i)²` with endpoint factors `β+1` at `-1` and `α+1` at `+1`.

use alloc::vec::Vec;

use crate::jacobi::{self, JacobiIndex};
use crate::linalg::{sturm_bisection, tridiag_eigenvalues};
use crate::special::{gamma_ratio, pow2};
use crate::{Error, Result};

/// Jacobi matrix entries: `diag = δ_1..δ_{N-1}`, `offdiag = γ_1..γ_{N-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSpec {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

/// An `N+1` point Gauss-Lobatto rule for the weight of `index`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    index: JacobiIndex,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn index(&self) -> JacobiIndex {
        self.index
    }

    /// `N`, one less than the number of nodes.
    pub fn order(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// A copy with one weight replaced; used to exercise invariant checks.
    pub fn with_weight(&self, i: usize, w: f64) -> Self {
        let mut out = self.clone();
        out.weights[i] = w;
        out
    }
}

pub fn tridiag_coeffs(index: JacobiIndex, n: usize) -> TridiagSpec {
    let (a, b) = (index.alpha(), index.beta());
    let diag = (1..n)
        .map(|k| {
            let s = 2.0 * k as f64 + a + b;
            -(a - b) * (a + b + 2.0) / (s * (s + 2.0))
        })
        .collect();
    let offdiag = (1..n.saturating_sub(1))
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + a + b;
            let num = kf * (kf + a + 1.0) * (kf + b + 1.0) * (kf + a + b + 2.0);
            let den = (s + 1.0) * (s + 3.0);
            2.0 / (s + 2.0) * libm::sqrt(num / den)
        })
        .collect();
    TridiagSpec { diag, offdiag }
}

/// Eigenvalues of the tridiagonal matrix, ascending.
pub fn symmetric_tridiag_eigenvalues(spec: &TridiagSpec) -> Vec<f64> {
    tridiag_eigenvalues(&spec.diag, &spec.offdiag)
}

/// Same eigenvalues by Sturm-sequence bisection only.
pub fn symmetric_tridiag_eigenvalues_bisection(spec: &TridiagSpec) -> Vec<f64> {
    sturm_bisection(&spec.diag, &spec.offdiag)
}

pub fn build_rule(index: JacobiIndex, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain("a Gauss-Lobatto rule needs N >= 1"));
    }
    let mut interior = symmetric_tridiag_eigenvalues(&tridiag_coeffs(index, n));
    for x in interior.iter_mut() {
        let d1 = jacobi::derivative_values(index, n, *x)[n];
        let d2 = jacobi::second_derivative_values(index, n, *x)[n];
        if d2 != 0.0 {
            let step = d1 / d2;
            // the eigensolver is already close; refuse wild steps
            if libm::fabs(step) < 1e-6 {
                *x -= step;
            }
        }
    }
    if index.alpha() == index.beta() {
        let m = interior.len();
        for i in 0..m / 2 {
            let half = 0.5 * (interior[m - 1 - i] - interior[i]);
            interior[i] = -half;
            interior[m - 1 - i] = half;
        }
        if m % 2 == 1 {
            interior[m / 2] = 0.0;
        }
    }
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(-1.0);
    nodes.extend(interior);
    nodes.push(1.0);

    let c = weight_constant(index, n);
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let jn = jacobi::recurrence_values(index.alpha(), index.beta(), n, x)[n];
            let factor = if i == 0 {
                index.beta() + 1.0
            } else if i == n {
                index.alpha() + 1.0
            } else {
                1.0
            };
            factor * c / (jn * jn)
        })
        .collect();
    Ok(QuadratureRule { index, nodes, weights })
}

/// `C = 2^{α+β+1} / (N(N+α+β+1)) · Γ(N+1+α)Γ(N+1+β) / (Γ(N+1)Γ(N+1+α+β))`.
pub(crate) fn weight_constant(index: JacobiIndex, n: usize) -> f64 {
    let (a, b) = (index.alpha(), index.beta());
    let nf = n as f64;
    pow2(a + b + 1.0) / (nf * (nf + a + b + 1.0))
        * gamma_ratio(nf + 1.0 + a, nf + 1.0)
        * gamma_ratio(nf + 1.0 + b, nf + 1.0 + a + b)
}

/// `Σ ρ_j Φ(x_j)`.
pub fn integrate(rule: &QuadratureRule, values: &[f64]) -> Result<f64> {
    if values.len() != rule.nodes.len() {
        return Err(Error::Dimension { expected: rule.nodes.len(), found: values.len() });
    }
    Ok(rule.weights.iter().zip(values).map(|(w, v)| w * v).sum())
}

/// Moments `∫ x^k w(x) dx` for `k = 0..=kmax` from
/// `M_{k+1} = (k M_{k-1} + (β-α) M_k) / (k+α+β+2)`.
pub fn exact_moments(index: JacobiIndex, kmax: usize) -> Vec<f64> {
    let (a, b) = (index.alpha(), index.beta());
    let mut m = Vec::with_capacity(kmax + 1);
    m.push(index.weight_integral());
    for k in 0..kmax {
        let kf = k as f64;
        let prev = if k == 0 { 0.0 } else { m[k - 1] };
        m.push((kf * prev + (b - a) * m[k]) / (kf + a + b + 2.0));
    }
    m
}

/// Interior nodes as zeros of `J_N'`, bracketed on a fine grid and bisected.
///
/// Independent of the eigenvalue route.
pub fn derivative_root_nodes(index: JacobiIndex, n: usize) -> Vec<f64> {
    let f = |x: f64| jacobi::derivative_values(index, n, x)[n];
    let samples = 16 * n + 16;
    let grid: Vec<f64> = (0..=samples).map(|k| -libm::cos(core::f64::consts::PI * k as f64 / samples as f64)).collect();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 && a > -1.0 {
            roots.push(a);
            continue;
        }
        if fa * fb >= 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = f(mid);
            if (fm < 0.0) == (fa < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}

fn max_rel_dev(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).fold(0.0, |m, (g, w)| m.max(libm::fabs(g - w) / libm::fabs(*w)))
}

/// Largest relative gap between the general weights and
/// `ρ_i = 2 / (N(N+1) L_N(x_i)²)`.
pub fn legendre_weight_check(n: usize) -> Result<f64> {
    let rule = build_rule(JacobiIndex::LEGENDRE, n)?;
    let nf = n as f64;
    let want: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&x| {
            let l = jacobi::recurrence_values(0.0, 0.0, n, x)[n];
            2.0 / (nf * (nf + 1.0) * l * l)
        })
        .collect();
    Ok(max_rel_dev(&rule.weights, &want))
}

/// Same for the `(0,1)` formulas `ρ_0 = 8/(N(N+2)M_N²)`, `ρ_i = 4/(N(N+2)M_N²)`.
pub fn m01_weight_check(n: usize) -> Result<f64> {
    let rule = build_rule(JacobiIndex::J01, n)?;
    let nf = n as f64;
    let want: Vec<f64> = rule
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let m = jacobi::recurrence_values(0.0, 1.0, n, x)[n];
            let top = if i == 0 { 8.0 } else { 4.0 };
            top / (nf * (nf + 2.0) * m * m)
        })
        .collect();
    Ok(max_rel_dev(&rule.weights, &want))
}

/// Largest deviation of the `(-1/2,-1/2)` rule from nodes `-cos(πi/N)` and
/// weights `π/N` (interior), `π/(2N)` (ends). Absolute on nodes, relative
/// on weights.
pub fn chebyshev_rule_check(n: usize) -> Result<f64> {
    let rule = build_rule(JacobiIndex::CHEBYSHEV, n)?;
    let pi = core::f64::consts::PI;
    let nf = n as f64;
    let mut dev: f64 = 0.0;
    for i in 0..=n {
        let x = -libm::cos(pi * i as f64 / nf);
        let w = if i == 0 || i == n { pi / (2.0 * nf) } else { pi / nf };
        dev = dev.max(libm::fabs(rule.nodes[i] - x));
        dev = dev.max(libm::fabs(rule.weights[i] - w) / w);
    }
    Ok(dev)
}

/// `‖J_N''‖_w / ‖J_N'‖_w`, the ratio realizing the inverse inequality.
pub fn inverse_inequality_ratio(index: JacobiIndex, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("inverse inequality needs N >= 1"));
    }
    // integrands have degree <= 2N - 2; order N + 1 is exact through 2N + 1
    let rule = build_rule(index, n + 1)?;
    let d1: Vec<f64> = rule.nodes.iter().map(|&x| jacobi::derivative_values(index, n, x)[n]).collect();
    let d2: Vec<f64> = rule.nodes.iter().map(|&x| jacobi::second_derivative_values(index, n, x)[n]).collect();
    let num = integrate(&rule, &d2.iter().map(|v| v * v).collect::<Vec<_>>())?;
    let den = integrate(&rule, &d1.iter().map(|v| v * v).collect::<Vec<_>>())?;
    Ok(libm::sqrt(num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tridiag_examples() {
        let s = tridiag_coeffs(JacobiIndex::J02, 2);
        assert_eq!(s.diag.len(), 1);
        assert_relative_eq!(s.diag[0], 1.0 / 3.0, max_relative = 1e-15);
        assert!(s.offdiag.is_empty());
        let s = tridiag_coeffs(JacobiIndex::J02, 3);
        assert_relative_eq!(s.diag[1], 1.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(s.offdiag[0], libm::sqrt(8.0 / 7.0) / 3.0, max_relative = 1e-15);
        let s = tridiag_coeffs(JacobiIndex::LEGENDRE, 3);
        assert_eq!(s.diag, vec![0.0, 0.0]);
        let s = tridiag_coeffs(JacobiIndex::J02, 1);
        assert!(s.diag.is_empty() && s.offdiag.is_empty());
    }

    #[test]
    fn rule_examples() {
        let r = build_rule(JacobiIndex::J02, 1).unwrap();
        assert_eq!(r.nodes(), &[-1.0, 1.0]);
        assert_relative_eq!(r.weights()[0], 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[1], 2.0, max_relative = 1e-15);

        let r = build_rule(JacobiIndex::J02, 2).unwrap();
        assert_relative_eq!(r.nodes()[1], 1.0 / 3.0, epsilon = 1e-15);
        for (w, e) in r.weights().iter().zip([1.0 / 15.0, 9.0 / 5.0, 4.0 / 5.0]) {
            assert_relative_eq!(*w, e, max_relative = 1e-14);
        }
        assert!(chebyshev_rule_check(8).unwrap() < 1e-13);
        assert!(build_rule(JacobiIndex::J02, 0).is_err());
    }

    #[test]
    fn integrate_examples() {
        let r = build_rule(JacobiIndex::J02, 2).unwrap();
        let cube: Vec<f64> = r.nodes().iter().map(|x| x * x * x).collect();
        assert_relative_eq!(integrate(&r, &cube).unwrap(), 0.8, max_relative = 1e-14);
        let quartic: Vec<f64> = r.nodes().iter().map(|x| x.powi(4)).collect();
        assert_relative_eq!(integrate(&r, &quartic).unwrap(), 8.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(exact_moments(JacobiIndex::J02, 4)[4], 24.0 / 35.0, max_relative = 1e-15);
        assert_relative_eq!(integrate(&r, &[1.0; 3]).unwrap(), 8.0 / 3.0, max_relative = 1e-14);
        assert!(integrate(&r, &[1.0; 2]).is_err());
    }

    #[test]
    fn special_case_weights() {
        assert!(legendre_weight_check(4).unwrap() < 1e-12);
        assert!(m01_weight_check(4).unwrap() < 1e-12);
        let r = build_rule(JacobiIndex::LEGENDRE, 1).unwrap();
        assert_relative_eq!(r.weights()[0], 1.0);
        assert_relative_eq!(r.weights()[1], 1.0);
    }

    #[test]
    fn eigen_and_root_paths_agree() {
        for n in [3, 10, 33, 64] {
            let eig = build_rule(JacobiIndex::J02, n).unwrap();
            let roots = derivative_root_nodes(JacobiIndex::J02, n);
            assert_eq!(roots.len(), n - 1);
            for (a, b) in eig.nodes()[1..n].iter().zip(&roots) {
                assert!((a - b).abs() < 1e-11, "n = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn inverse_ratio_example() {
        let r = inverse_inequality_ratio(JacobiIndex::J02, 2).unwrap();
        // ‖J_2''‖² = (15/2)² · 8/3 = 150 and ‖J_2'‖² = 80/3
        assert_relative_eq!(r, libm::sqrt(150.0 * 3.0 / 80.0), max_relative = 1e-13);
    }
}
