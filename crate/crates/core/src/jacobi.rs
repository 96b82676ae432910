//! Jacobi polynomials `J_n^{(α,β)}` orthogonal on `(-1, 1)` for the weight
//! `w(x) = (1-x)^α (1+x)^β`, normalized by
//! `J_n(1) = Γ(n+1+α) / (Γ(1+α) Γ(n+1))`.
//!
//! Legendre is `(0,0)`; the radial basis of the nucleus is `(0,2)`, whose
//! weight is `r^2` under `r = (1+x)/2`. Chebyshev polynomials are kept as a
//! separate basis with the classical `T_n(1) = 1` normalization.

use alloc::vec;
use alloc::vec::Vec;

use crate::special::{binomial, gamma_ratio, is_integer, pow2};
use crate::transform::{Basis, CoeffVector};
use crate::{Error, Result};

/// The pair `(α, β)` selecting a weight and its orthogonal family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiIndex {
    alpha: f64,
    beta: f64,
}

impl JacobiIndex {
    pub const LEGENDRE: JacobiIndex = JacobiIndex { alpha: 0.0, beta: 0.0 };
    pub const J01: JacobiIndex = JacobiIndex { alpha: 0.0, beta: 1.0 };
    pub const J02: JacobiIndex = JacobiIndex { alpha: 0.0, beta: 2.0 };
    pub const CHEBYSHEV: JacobiIndex = JacobiIndex { alpha: -0.5, beta: -0.5 };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidIndex { alpha, beta });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(α, β)` with both entries integers.
    pub fn is_integer(&self) -> bool {
        is_integer(self.alpha) && is_integer(self.beta)
    }

    /// The weight `(1-x)^α (1+x)^β`.
    pub fn weight(&self, x: f64) -> f64 {
        libm::pow(1.0 - x, self.alpha) * libm::pow(1.0 + x, self.beta)
    }

    /// `∫ w(x) dx` over `[-1, 1]`, which is also `‖J_0‖²`.
    pub fn weight_integral(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        pow2(a + b + 1.0) * gamma_ratio(a + 1.0, a + b + 2.0) * gamma_ratio(b + 1.0, 1.0)
    }

    /// Index of the derivative family, `(α+1, β+1)`.
    pub fn shifted(&self, by: f64) -> Self {
        Self { alpha: self.alpha + by, beta: self.beta + by }
    }

    /// Reflected index `(β, α)`.
    pub fn reflected(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha }
    }
}

/// `J_0(x), ..., J_n(x)` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyValueTable {
    pub index: JacobiIndex,
    pub point: f64,
    pub values: Vec<f64>,
}

impl PolyValueTable {
    pub fn degree_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Coefficients of `J_{k+1} = (a_k x + b_k) J_k - c_k J_{k-1}`.
///
/// For `k = 0` this is the seed `J_1 = ((α+β+2)x + (α-β))/2` and `c_0 = 0`.
pub(crate) fn recurrence_coeffs(alpha: f64, beta: f64, k: usize) -> (f64, f64, f64) {
    if k == 0 {
        return ((alpha + beta + 2.0) / 2.0, (alpha - beta) / 2.0, 0.0);
    }
    let k = k as f64;
    let s = 2.0 * k + alpha + beta;
    let denom = 2.0 * (k + 1.0) * (k + alpha + beta + 1.0) * s;
    let a = (s + 1.0) * s * (s + 2.0) / denom;
    let b = (s + 1.0) * (alpha * alpha - beta * beta) / denom;
    let c = 2.0 * (k + alpha) * (k + beta) * (s + 2.0) / denom;
    (a, b, c)
}

/// Forward recurrence without index validation. Also used for the
/// parameter values `α = -1` or `β = -1` appearing in connection formulas.
pub(crate) fn recurrence_values(alpha: f64, beta: f64, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    let (a0, b0, _) = recurrence_coeffs(alpha, beta, 0);
    out.push(a0 * x + b0);
    for k in 1..n {
        let (a, b, c) = recurrence_coeffs(alpha, beta, k);
        let next = (a * x + b) * out[k] - c * out[k - 1];
        out.push(next);
    }
    out
}

fn check_point(x: f64) -> Result<()> {
    if !x.is_finite() || libm::fabs(x) > 1.0 + 1e-12 {
        return Err(Error::Domain("evaluation point must lie in [-1, 1]"));
    }
    Ok(())
}

/// `J_0(x) .. J_n(x)` by the three-term recurrence.
pub fn eval_upto(index: JacobiIndex, n: usize, x: f64) -> Result<PolyValueTable> {
    check_point(x)?;
    Ok(PolyValueTable { index, point: x, values: recurrence_values(index.alpha, index.beta, n, x) })
}

/// `J_n(x)` alone.
pub fn eval(index: JacobiIndex, n: usize, x: f64) -> Result<f64> {
    Ok(eval_upto(index, n, x)?.values[n])
}

/// `J_n(x)` from the explicit binomial sum.
///
/// `J_n = 2^{-n} Σ_l C(n+α, l) C(n+β, n-l) (x+1)^l (x-1)^{n-l}`.
///
/// Independent of the recurrence; restricted to integer indices and `n <= 30`.
pub fn eval_analytic(index: JacobiIndex, n: usize, x: f64) -> Result<f64> {
    if !index.is_integer() {
        return Err(Error::UnsupportedOracle("analytic expression needs integer (alpha, beta)"));
    }
    if n > 30 {
        return Err(Error::UnsupportedOracle("analytic expression limited to n <= 30"));
    }
    check_point(x)?;
    let top_a = n as f64 + index.alpha;
    let top_b = n as f64 + index.beta;
    let mut sum = 0.0;
    for l in 0..=n {
        let term = binomial(top_a, l)
            * binomial(top_b, n - l)
            * libm::pow(x + 1.0, l as f64)
            * libm::pow(x - 1.0, (n - l) as f64);
        sum += term;
    }
    Ok(sum / pow2(n as f64))
}

/// `J_0'(x) .. J_n'(x)` through `J_k' = (k+α+β+1)/2 · J_{k-1}^{(α+1,β+1)}`.
pub fn eval_derivative_upto(index: JacobiIndex, n: usize, x: f64) -> Result<Vec<f64>> {
    check_point(x)?;
    Ok(derivative_values(index, n, x))
}

pub(crate) fn derivative_values(index: JacobiIndex, n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if n == 0 {
        return out;
    }
    let shifted = recurrence_values(index.alpha + 1.0, index.beta + 1.0, n - 1, x);
    let ab = index.alpha + index.beta;
    for k in 1..=n {
        out[k] = 0.5 * (k as f64 + ab + 1.0) * shifted[k - 1];
    }
    out
}

/// `J_0''(x) .. J_n''(x)`.
pub(crate) fn second_derivative_values(index: JacobiIndex, n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if n < 2 {
        return out;
    }
    let shifted = recurrence_values(index.alpha + 2.0, index.beta + 2.0, n - 2, x);
    let ab = index.alpha + index.beta;
    for k in 2..=n {
        let kf = k as f64;
        out[k] = 0.25 * (kf + ab + 1.0) * (kf + ab + 2.0) * shifted[k - 2];
    }
    out
}

/// `J_n(1) = Γ(n+1+α) / (Γ(1+α) Γ(n+1))`.
pub fn value_at_one(index: JacobiIndex, n: usize) -> f64 {
    let nf = n as f64;
    gamma_ratio(nf + 1.0 + index.alpha, nf + 1.0) * gamma_ratio(1.0, 1.0 + index.alpha)
}

/// `J_n(-1) = (-1)^n Γ(n+1+β) / (Γ(1+β) Γ(n+1))`.
pub fn value_at_minus_one(index: JacobiIndex, n: usize) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * value_at_one(index.reflected(), n)
}

/// `‖J_n‖²` in `L²_w`.
pub fn norm_sq(index: JacobiIndex, n: usize) -> f64 {
    if n == 0 {
        return index.weight_integral();
    }
    let (a, b) = (index.alpha, index.beta);
    let nf = n as f64;
    pow2(a + b + 1.0) / (2.0 * nf + a + b + 1.0)
        * gamma_ratio(nf + a + 1.0, nf + 1.0)
        * gamma_ratio(nf + b + 1.0, nf + a + b + 1.0)
}

/// `‖J_n'‖²` in `L²_w` (the weight `w`, not `(1-x²)w`):
///
/// `2^{α+β-1} n(n+α+β+1)(1/(α+1) + 1/(β+1)) Γ(n+1+α)Γ(n+1+β) / (Γ(n+1)Γ(n+1+α+β))`.
///
/// Only the endpoint terms survive when the `(n+1)`-point Lobatto rule is
/// applied to `J_n'²`, since its interior nodes are the zeros of `J_n'`.
pub fn deriv_norm_sq(index: JacobiIndex, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (a, b) = (index.alpha, index.beta);
    let nf = n as f64;
    pow2(a + b - 1.0)
        * nf
        * (nf + a + b + 1.0)
        * (1.0 / (a + 1.0) + 1.0 / (b + 1.0))
        * gamma_ratio(nf + 1.0 + a, nf + 1.0)
        * gamma_ratio(nf + 1.0 + b, nf + 1.0 + a + b)
}

/// Sturm-Liouville eigenvalue `λ_n = n(n+α+β+1)`.
pub fn sturm_eigenvalue(index: JacobiIndex, n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf + index.alpha + index.beta + 1.0)
}

/// Coefficient of `x^n` in `J_n`.
pub fn leading_coeff(index: JacobiIndex, n: usize) -> f64 {
    let c = n as f64 + index.alpha + index.beta + 1.0;
    (0..n).fold(1.0, |acc, i| acc * (c + i as f64) / (2.0 * (i + 1) as f64))
}

/// `|LHS - RHS|` of `(n+3/2)(1+x)² J_n^{(0,2)} = (n+2)L_n + (2n+3)L_{n+1} + (n+1)L_{n+2}`.
pub fn legendre_link_residual(n: usize, x: f64) -> Result<f64> {
    check_point(x)?;
    let j = recurrence_values(0.0, 2.0, n, x)[n];
    let l = recurrence_values(0.0, 0.0, n + 2, x);
    let nf = n as f64;
    let lhs = (nf + 1.5) * (1.0 + x) * (1.0 + x) * j;
    let rhs = (nf + 2.0) * l[n] + (2.0 * nf + 3.0) * l[n + 1] + (nf + 1.0) * l[n + 2];
    Ok(libm::fabs(lhs - rhs))
}

/// Relative residuals of the five links between neighbouring families:
///
/// 1. `(n+α/2+β/2+1)(1-x) J_n^{(α+1,β)} = (n+α+1) J_n - (n+1) J_{n+1}`
/// 2. `(n+α/2+β/2+1)(1+x) J_n^{(α,β+1)} = (n+β+1) J_n + (n+1) J_{n+1}`
/// 3. `(2n+α+β) J_n^{(α-1,β)} = (n+α+β) J_n - (n+β) J_{n-1}`
/// 4. `(2n+α+β) J_n^{(α,β-1)} = (n+α+β) J_n + (n+α) J_{n-1}`
/// 5. `J_n(-x) = (-1)^n J_n^{(β,α)}(x)`
///
/// Each residual is `|LHS - RHS|` divided by `max(1, Σ|terms|)`.
pub fn connection_residuals(index: JacobiIndex, n: usize, x: f64) -> Result<[f64; 5]> {
    check_point(x)?;
    let (a, b) = (index.alpha, index.beta);
    let nf = n as f64;
    let base = recurrence_values(a, b, n + 1, x);
    let jn = base[n];
    let jn1 = base[n + 1];
    let jm1 = if n == 0 { 0.0 } else { base[n - 1] };
    let rel = |lhs: f64, terms: &[f64]| {
        let rhs: f64 = terms.iter().sum();
        let scale: f64 = libm::fabs(lhs) + terms.iter().map(|t| libm::fabs(*t)).sum::<f64>();
        libm::fabs(lhs - rhs) / scale.max(1.0)
    };
    let half = nf + a / 2.0 + b / 2.0 + 1.0;

    let up_a = recurrence_values(a + 1.0, b, n, x)[n];
    let r1 = rel(half * (1.0 - x) * up_a, &[(nf + a + 1.0) * jn, -(nf + 1.0) * jn1]);

    let up_b = recurrence_values(a, b + 1.0, n, x)[n];
    let r2 = rel(half * (1.0 + x) * up_b, &[(nf + b + 1.0) * jn, (nf + 1.0) * jn1]);

    let down_a = recurrence_values(a - 1.0, b, n, x)[n];
    let r3 = rel((2.0 * nf + a + b) * down_a, &[(nf + a + b) * jn, -(nf + b) * jm1]);

    let down_b = recurrence_values(a, b - 1.0, n, x)[n];
    let r4 = rel((2.0 * nf + a + b) * down_b, &[(nf + a + b) * jn, (nf + a) * jm1]);

    let mirrored = recurrence_values(a, b, n, -x)[n];
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let reflected = recurrence_values(b, a, n, x)[n];
    let r5 = rel(mirrored, &[sign * reflected]);

    Ok([r1, r2, r3, r4, r5])
}

/// `T_0(x) .. T_n(x)` by `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev_eval_upto(n: usize, x: f64) -> Result<Vec<f64>> {
    check_point(x)?;
    Ok(chebyshev_values(n, x))
}

pub(crate) fn chebyshev_values(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(x);
    for k in 1..n {
        let next = 2.0 * x * out[k] - out[k - 1];
        out.push(next);
    }
    out
}

/// `T_0'(x) .. T_n'(x)` from `T_k' = k U_{k-1}`.
pub fn chebyshev_derivative_values(n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if n == 0 {
        return out;
    }
    // U_0 = 1, U_1 = 2x
    let mut u_prev = 1.0;
    let mut u_cur = 2.0 * x;
    out[1] = 1.0;
    for (k, o) in out.iter_mut().enumerate().skip(2) {
        *o = k as f64 * u_cur;
        let next = 2.0 * x * u_cur - u_prev;
        u_prev = u_cur;
        u_cur = next;
    }
    out
}

/// `Σ b_n² ‖J_n‖²`, the weighted `L²` energy of a Jacobi expansion.
pub fn weighted_energy(coeffs: &CoeffVector) -> Result<f64> {
    let Basis::Jacobi(index) = coeffs.basis() else {
        return Err(Error::BasisMismatch);
    };
    Ok(coeffs.coeffs().iter().enumerate().map(|(n, b)| b * b * norm_sq(index, n)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn j02() -> JacobiIndex {
        JacobiIndex::J02
    }

    #[test]
    fn index_validation() {
        assert!(JacobiIndex::new(-1.0, 0.0).is_err());
        assert!(JacobiIndex::new(0.0, -1.5).is_err());
        assert!(JacobiIndex::new(f64::NAN, 0.0).is_err());
        assert!(JacobiIndex::new(-0.5, -0.5).is_ok());
    }

    #[test]
    fn eval_upto_examples() {
        assert_eq!(eval_upto(j02(), 0, 0.37).unwrap().values, vec![1.0]);
        assert_relative_eq!(eval_upto(j02(), 3, -1.0).unwrap().values[3], -10.0, epsilon = 1e-13);
        assert_relative_eq!(eval_upto(j02(), 2, 1.0 / 3.0).unwrap().values[2], -2.0 / 3.0, epsilon = 1e-15);
        assert!(eval_upto(j02(), 3, 1.5).is_err());
    }

    #[test]
    fn value_table_invariants() {
        let t = eval_upto(j02(), 12, 1.0).unwrap();
        assert_eq!(t.values[0], 1.0);
        assert_eq!(t.degree_max(), 12);
        let idx = JacobiIndex::new(1.5, 0.25).unwrap();
        let t = eval_upto(idx, 10, 1.0).unwrap();
        for (k, v) in t.values.iter().enumerate() {
            assert_relative_eq!(*v, value_at_one(idx, k), max_relative = 1e-13);
        }
    }

    #[test]
    fn analytic_examples() {
        assert_relative_eq!(eval_analytic(j02(), 1, 0.0).unwrap(), -1.0);
        assert_relative_eq!(eval_analytic(j02(), 2, 1.0).unwrap(), 1.0);
        assert_relative_eq!(eval_analytic(j02(), 2, -1.0).unwrap(), 6.0);
        assert!(eval_analytic(JacobiIndex::CHEBYSHEV, 2, 0.0).is_err());
        assert!(eval_analytic(j02(), 31, 0.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        let d = eval_derivative_upto(j02(), 2, 1.0 / 3.0).unwrap();
        assert_eq!(d[0], 0.0);
        assert_relative_eq!(d[1], 2.0);
        assert!(d[2].abs() < 1e-15);
        let d = eval_derivative_upto(JacobiIndex::LEGENDRE, 0, 0.2).unwrap();
        assert_eq!(d, vec![0.0]);
    }

    #[test]
    fn norm_examples() {
        assert_relative_eq!(norm_sq(j02(), 0), 8.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(norm_sq(j02(), 1), 8.0 / 5.0, max_relative = 1e-15);
        assert_relative_eq!(norm_sq(j02(), 7), 8.0 / 17.0, max_relative = 1e-15);
        for n in 0..300 {
            assert_relative_eq!(norm_sq(j02(), n), 8.0 / (2.0 * n as f64 + 3.0), max_relative = 1e-14);
        }
        // Chebyshev: ‖J_0‖² = π, and the n = 0 branch avoids Γ(0)
        assert_relative_eq!(norm_sq(JacobiIndex::CHEBYSHEV, 0), core::f64::consts::PI, max_relative = 1e-15);
    }

    #[test]
    fn deriv_norm_examples() {
        assert_relative_eq!(deriv_norm_sq(j02(), 1), 32.0 / 3.0, max_relative = 1e-15);
        // J_2' = (30x - 10)/4; direct integration against (1+x)² gives 80/3
        assert_relative_eq!(deriv_norm_sq(j02(), 2), 80.0 / 3.0, max_relative = 1e-15);
        assert_eq!(deriv_norm_sq(j02(), 0), 0.0);
        for n in 1..100usize {
            let nf = n as f64;
            assert_relative_eq!(deriv_norm_sq(j02(), n), 8.0 / 3.0 * nf * (nf + 3.0), max_relative = 1e-14);
        }
    }

    #[test]
    fn eigenvalue_and_leading_coeff() {
        assert_eq!(sturm_eigenvalue(j02(), 0), 0.0);
        assert_eq!(sturm_eigenvalue(j02(), 2), 10.0);
        assert_eq!(sturm_eigenvalue(JacobiIndex::LEGENDRE, 5), 30.0);
        assert_eq!(leading_coeff(j02(), 1), 2.0);
        assert_eq!(leading_coeff(j02(), 2), 15.0 / 4.0);
        assert_eq!(leading_coeff(JacobiIndex::LEGENDRE, 0), 1.0);
        // no overflow at production sizes
        assert!(leading_coeff(j02(), 256).is_finite());
    }

    #[test]
    fn legendre_link_examples() {
        assert!(legendre_link_residual(0, 1.0).unwrap() < 1e-14);
        assert!(legendre_link_residual(4, 0.8).unwrap() < 1e-12);
        assert!(legendre_link_residual(12, -1.0).unwrap() < 1e-10);
    }

    #[test]
    fn connection_examples() {
        let r = connection_residuals(j02(), 1, 0.0).unwrap();
        assert!(r[4] < 1e-16);
        for r in connection_residuals(j02(), 5, 0.3).unwrap() {
            assert!(r < 1e-12);
        }
        let idx = JacobiIndex::new(1.0, 1.0).unwrap();
        for r in connection_residuals(idx, 3, -0.5).unwrap() {
            assert!(r < 1e-12);
        }
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_eval_upto(3, 1.0).unwrap(), vec![1.0; 4]);
        assert_relative_eq!(chebyshev_eval_upto(2, 0.0).unwrap()[2], -1.0);
        let t = chebyshev_eval_upto(5, 0.3).unwrap();
        assert!((t[5] - libm::cos(5.0 * libm::acos(0.3))).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_is_rescaled_jacobi() {
        // T_n = J_n^{(-1/2,-1/2)} Γ(n+1) Γ(1/2) / Γ(n+1/2)
        let x = 0.41;
        let j = recurrence_values(-0.5, -0.5, 20, x);
        let t = chebyshev_values(20, x);
        for n in 0..=20 {
            let nf = n as f64;
            let scale = gamma_ratio(nf + 1.0, nf + 0.5) * gamma_ratio(0.5, 1.0);
            assert!((j[n] * scale - t[n]).abs() < 1e-13);
        }
    }

    #[test]
    fn chebyshev_derivatives() {
        let d = chebyshev_derivative_values(6, 1.0);
        for (n, v) in d.iter().enumerate() {
            assert_relative_eq!(*v, (n * n) as f64);
        }
    }

    #[test]
    fn energy_examples() {
        use crate::transform::Mapping;
        let e = |c: &[f64]| {
            weighted_energy(&CoeffVector::new(Basis::Jacobi(j02()), Mapping::Identity, c.to_vec()).unwrap()).unwrap()
        };
        assert_relative_eq!(e(&[1.0, 0.0, 0.0]), 8.0 / 3.0);
        assert_relative_eq!(e(&[0.0, 1.0]), 8.0 / 5.0);
        assert_relative_eq!(e(&[1.0, 1.0]), 8.0 / 3.0 + 8.0 / 5.0);
        let cheb = CoeffVector::new(Basis::Chebyshev, Mapping::Identity, vec![1.0]).unwrap();
        assert_eq!(weighted_energy(&cheb), Err(Error::BasisMismatch));
    }
}
