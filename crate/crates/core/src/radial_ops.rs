//! Operator matrices on coefficient space: derivative, primitive, division
//! and multiplication by `1+x` in the `(0,2)` Jacobi basis, and their
//! Chebyshev counterparts.
//!
//! Column `n` of every matrix holds the expansion of the operator applied to
//! the `n`-th basis polynomial.

use alloc::vec;
use alloc::vec::Vec;

use crate::jacobi::{self, JacobiIndex};
use crate::linalg::{DenseMatrix, Lu};
use crate::transform::Basis;
use crate::{Error, Result};

/// A dense operator on coefficients of a tagged basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMatrix {
    basis: Basis,
    label: &'static str,
    matrix: DenseMatrix,
}

impl SpectralMatrix {
    pub fn new(basis: Basis, label: &'static str, matrix: DenseMatrix) -> Self {
        Self { basis, label, matrix }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[(row, col)]
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    /// Matrix-vector product; `coeffs` shorter than the column count is zero
    /// padded.
    pub fn apply(&self, coeffs: &[f64]) -> Result<Vec<f64>> {
        if coeffs.len() > self.cols() {
            return Err(Error::Dimension { expected: self.cols(), found: coeffs.len() });
        }
        let mut padded = coeffs.to_vec();
        padded.resize(self.cols(), 0.0);
        Ok(self.matrix.mul_vec(&padded))
    }
}

fn j02() -> Basis {
    Basis::Jacobi(JacobiIndex::J02)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `J_n' = Σ_{j<n} (j+3/2)[1 - (-1)^{n-j}(j+1)(j+2)/((n+1)(n+2))] J_j`.
pub fn d_matrix_j02(n: usize) -> SpectralMatrix {
    let m = DenseMatrix::from_fn(n + 1, n + 1, |j, k| {
        if j >= k {
            return 0.0;
        }
        let (jf, kf) = (j as f64, k as f64);
        (jf + 1.5) * (1.0 - sign(k - j) * (jf + 1.0) * (jf + 2.0) / ((kf + 1.0) * (kf + 2.0)))
    });
    SpectralMatrix::new(j02(), "derivative", m)
}

/// Primitive vanishing at `x = 1`:
/// `∫_1^x J_n = (n+3)/((n+2)(2n+3)) J_{n+1} - 1/((n+1)(n+2)) J_n - n/((n+1)(2n+3)) J_{n-1}`.
///
/// Size `(N+2) x (N+1)`.
pub fn int_matrix_j02(n: usize) -> SpectralMatrix {
    let mut m = DenseMatrix::zeros(n + 2, n + 1);
    for k in 0..=n {
        let kf = k as f64;
        m[(k + 1, k)] = (kf + 3.0) / ((kf + 2.0) * (2.0 * kf + 3.0));
        m[(k, k)] = -1.0 / ((kf + 1.0) * (kf + 2.0));
        if k > 0 {
            m[(k - 1, k)] = -kf / ((kf + 1.0) * (2.0 * kf + 3.0));
        }
    }
    SpectralMatrix::new(j02(), "integration", m)
}

/// `f ↦ (f - f(-1)) / (1+x)`; column `n` expands `(J_n - J_n(-1))/(1+x)` as
/// `Σ_{j<n} (-1)^{n-1-j} (2j+3)/4 [(n+1)(n+2)/((j+1)(j+2)) - (j+1)(j+2)/((n+1)(n+2))] J_j`.
pub fn div1px_matrix_j02(n: usize) -> SpectralMatrix {
    let m = DenseMatrix::from_fn(n + 1, n + 1, |j, k| {
        if j >= k {
            return 0.0;
        }
        let p = (j as f64 + 1.0) * (j as f64 + 2.0);
        let q = (k as f64 + 1.0) * (k as f64 + 2.0);
        sign(k - 1 - j) * (2.0 * j as f64 + 3.0) / 4.0 * (q / p - p / q)
    });
    SpectralMatrix::new(j02(), "division by 1+x", m)
}

/// `f ↦ (1+x) f`, size `(N+2) x (N+1)`.
pub fn mul1px_matrix_j02(n: usize) -> SpectralMatrix {
    let mut m = DenseMatrix::zeros(n + 2, n + 1);
    for k in 0..=n {
        let kf = k as f64;
        m[(k + 1, k)] = (kf + 1.0) * (kf + 3.0) / ((kf + 2.0) * (2.0 * kf + 3.0));
        m[(k, k)] = (kf * kf + 3.0 * kf + 3.0) / ((kf + 1.0) * (kf + 2.0));
        if k > 0 {
            m[(k - 1, k)] = kf * (kf + 2.0) / ((kf + 1.0) * (2.0 * kf + 3.0));
        }
    }
    SpectralMatrix::new(j02(), "multiplication by 1+x", m)
}

/// `J_n^{(0,2)}(-1) = (-1)^n (n+1)(n+2)/2` for `n = 0..=N`.
pub fn endpoint_row_value(n: usize) -> Vec<f64> {
    (0..=n).map(|k| sign(k) * ((k + 1) * (k + 2)) as f64 / 2.0).collect()
}

/// `J_n^{(0,2)}'(-1)` for `n = 0..=N`.
pub fn endpoint_row_derivative(n: usize) -> Vec<f64> {
    jacobi::derivative_values(JacobiIndex::J02, n, -1.0)
}

/// `J_n^{(0,2)}(1) = 1` for `n = 0..=N`.
pub fn endpoint_row_value_plus(n: usize) -> Vec<f64> {
    vec![1.0; n + 1]
}

/// `J_n^{(0,2)}'(1) = n(n+3)/2` for `n = 0..=N`.
pub fn endpoint_row_derivative_plus(n: usize) -> Vec<f64> {
    (0..=n).map(|k| (k * (k + 3)) as f64 / 2.0).collect()
}

/// Chebyshev derivative: column `n` has `2n/c_k` in rows `k < n` with `n-k` odd
/// (`c_0 = 2`, `c_k = 1` otherwise).
pub fn cheb_d_matrix(n: usize) -> SpectralMatrix {
    let m = DenseMatrix::from_fn(n + 1, n + 1, |k, col| {
        if k >= col || (col - k) % 2 == 0 {
            return 0.0;
        }
        let ck = if k == 0 { 2.0 } else { 1.0 };
        2.0 * col as f64 / ck
    });
    SpectralMatrix::new(Basis::Chebyshev, "derivative", m)
}

/// Chebyshev multiplication by `a + bx`, size `(N+2) x (N+1)`, from
/// `x T_0 = T_1` and `x T_n = (T_{n+1} + T_{n-1})/2`.
pub fn cheb_mul_affine_matrix(n: usize, a: f64, b: f64) -> SpectralMatrix {
    let mut m = DenseMatrix::zeros(n + 2, n + 1);
    for k in 0..=n {
        m[(k, k)] += a;
        if k == 0 {
            m[(1, 0)] += b;
        } else {
            m[(k + 1, k)] += 0.5 * b;
            m[(k - 1, k)] += 0.5 * b;
        }
    }
    SpectralMatrix::new(Basis::Chebyshev, "multiplication by a+bx", m)
}

/// Divides a Chebyshev expansion by `a + bx`, nonzero on `[-1, 1]`, by
/// solving the truncated square multiplication system.
pub fn cheb_div_affine(coeffs: &[f64], a: f64, b: f64) -> Result<Vec<f64>> {
    if libm::fabs(a) <= libm::fabs(b) {
        return Err(Error::Domain("a + bx vanishes on [-1, 1]"));
    }
    let n = coeffs.len() - 1;
    let square = cheb_mul_affine_matrix(n, a, b).into_matrix().resized(n + 1, n + 1);
    let lu = Lu::factor(&square).ok_or(Error::Domain("division system is singular"))?;
    Ok(lu.solve(coeffs))
}

/// Exact division by `x` of a Chebyshev expansion with `g(0) = 0`, by back
/// substitution on `g_k = (c_{k-1} h_{k-1} + h_{k+1})/2`.
pub fn cheb_div_x(g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let mut h = vec![0.0; n + 1];
    for k in (1..n).rev() {
        let ck = if k == 1 { 2.0 } else { 1.0 };
        h[k - 1] = (2.0 * g[k] - h[k + 1]) / ck;
    }
    h.truncate(n);
    h
}

/// Endpoint rows of the Chebyshev basis for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebEndpointRows {
    /// `T_n(-1) = (-1)^n`
    pub value_minus: Vec<f64>,
    /// `T_n(1) = 1`
    pub value_plus: Vec<f64>,
    /// `T_n'(-1) = (-1)^{n+1} n²`
    pub deriv_minus: Vec<f64>,
    /// `T_n'(1) = n²`
    pub deriv_plus: Vec<f64>,
}

pub fn cheb_endpoint_rows(n: usize) -> ChebEndpointRows {
    ChebEndpointRows {
        value_minus: (0..=n).map(sign).collect(),
        value_plus: vec![1.0; n + 1],
        deriv_minus: (0..=n).map(|k| -sign(k) * (k * k) as f64).collect(),
        deriv_plus: (0..=n).map(|k| (k * k) as f64).collect(),
    }
}
