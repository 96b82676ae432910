//! Radial operators `d²/dr² + (2/r) d/dr - l(l+1)/r²` on each domain,
//! expressed on coefficient space.

use alloc::vec;
use alloc::vec::Vec;

use crate::jacobi::JacobiIndex;
use crate::linalg::DenseMatrix;
use crate::radial_ops::{
    cheb_d_matrix, cheb_div_x, cheb_mul_affine_matrix, d_matrix_j02, div1px_matrix_j02, SpectralMatrix,
};
use crate::transform::Basis;

fn ll1(l: usize) -> f64 {
    (l * (l + 1)) as f64
}

/// Nucleus, `r = (1+x)/2`, `(0,2)` Jacobi basis:
///
/// `4 [f'' + 2 (f' - f'(-1))/(1+x) - l(l+1) (f - f(-1) - (1+x) f'(-1))/(1+x)²]`.
///
/// The regularized division applied twice produces the second bracket, since
/// `(f - f(-1))/(1+x)` takes the value `f'(-1)` at `x = -1`.
pub fn nucleus_operator(l: usize, n: usize) -> SpectralMatrix {
    let d = d_matrix_j02(n).into_matrix();
    let q = div1px_matrix_j02(n).into_matrix();
    let d2 = d.matmul(&d);
    let qd = q.matmul(&d);
    let qq = q.matmul(&q);
    let m = d2.add_scaled(&qd, 2.0).add_scaled(&qq, -ll1(l)).scaled(4.0);
    SpectralMatrix::new(Basis::Jacobi(JacobiIndex::J02), "nucleus laplacian", m)
}

/// Shell, `r = (3+x)/2`, Chebyshev basis, premultiplied by `(3+x)²/4`:
///
/// `(3+x)² f'' + 2(3+x) f' - l(l+1) f`, paired with the source `(3+x)² S / 4`.
pub fn shell_operator(l: usize, n: usize) -> SpectralMatrix {
    let d = cheb_d_matrix(n).into_matrix();
    let m3 = cheb_mul_affine_matrix(n, 3.0, 1.0).into_matrix().resized(n + 1, n + 1);
    // D² lowers the degree by two, so the square truncations of (3+x) lose nothing
    let d2 = d.matmul(&d);
    let op =
        m3.matmul(&m3.matmul(&d2)).add_scaled(&m3.matmul(&d), 2.0).add_scaled(&DenseMatrix::identity(n + 1), -ll1(l));
    SpectralMatrix::new(Basis::Chebyshev, "shell laplacian", op)
}

/// Factor applied to the source in the shell equation.
pub fn shell_source_scale(x: f64) -> f64 {
    (3.0 + x) * (3.0 + x) / 4.0
}

/// External domain, `r = 4/(1-x)` (`u = 1/r = (1-x)/4`), Chebyshev basis:
///
/// `(1-x)⁴ f'' - l(l+1)(1-x)² f`, paired with the source `16 S`.
///
/// The image has degree `N+2`, so the matrix is `(N+3) x (N+1)`.
pub fn external_operator(l: usize, n: usize) -> SpectralMatrix {
    let q = n + 3;
    let d = cheb_d_matrix(q - 1).into_matrix();
    let m1 = cheb_mul_affine_matrix(q - 1, 1.0, -1.0).into_matrix().resized(q, q);
    let d2 = d.matmul(&d);
    let m2 = m1.matmul(&m1);
    let m4 = m2.matmul(&m2);
    let op = m4.matmul(&d2).add_scaled(&m2, -ll1(l));
    SpectralMatrix::new(Basis::Chebyshev, "external laplacian", op.resized(q, n + 1))
}

/// Factor applied to the source in the external equation.
pub fn external_source_scale(_x: f64) -> f64 {
    16.0
}

/// Parity of the Chebyshev nucleus expansion selected by `l`.
pub fn parity_size(l: usize, n: usize) -> usize {
    if l.is_multiple_of(2) {
        n + 1
    } else {
        n
    }
}

/// Chebyshev degree of the `k`-th parity basis function for `l`.
pub fn parity_degree(l: usize, k: usize) -> usize {
    2 * k + l % 2
}

/// Nucleus with `r = x` in the Chebyshev basis restricted to the parity of
/// `l`: `T_0, T_2, .., T_{2N}` for even `l`, `T_1, T_3, .., T_{2N-1}` for odd `l`.
///
/// `f'' + 2(f' - f'(0))/x - l(l+1)(f - f(0) - x f'(0))/x²`.
pub fn nucleus_operator_cheb(l: usize, n: usize) -> SpectralMatrix {
    let size = parity_size(l, n);
    let top = 2 * n;
    let d = cheb_d_matrix(top).into_matrix();
    let mut m = DenseMatrix::zeros(size, size);
    for k in 0..size {
        let p = parity_degree(l, k);
        let mut f = vec![0.0; top + 1];
        f[p] = 1.0;
        let f1 = d.mul_vec(&f);
        let f2 = d.mul_vec(&f1);
        let (v0, d0) = cheb_origin_values(p);
        // (f' - f'(0)) / x
        let mut g = f1.clone();
        g[0] -= d0;
        let first = cheb_div_x(&g);
        // (f - f(0) - x f'(0)) / x²
        let mut h = f.clone();
        h[0] -= v0;
        h[1] -= d0;
        let once = cheb_div_x(&h);
        let twice = cheb_div_x(&once);
        let out: Vec<f64> = (0..=top).map(|i| f2[i] + 2.0 * first[i] - ll1(l) * twice[i]).collect();
        for (row, kk) in (0..size).map(|r| (r, parity_degree(l, r))) {
            m[(row, k)] = out[kk];
        }
    }
    SpectralMatrix::new(Basis::Chebyshev, "nucleus laplacian (parity)", m)
}

/// `(T_p(0), T_p'(0))`.
pub(crate) fn cheb_origin_values(p: usize) -> (f64, f64) {
    let sgn = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    if p.is_multiple_of(2) {
        (sgn(p / 2), 0.0)
    } else {
        (0.0, p as f64 * sgn((p - 1) / 2))
    }
}
