//! Test-only oracles built on exact rational arithmetic and plain dense
//! elimination, sharing no code with the library paths they check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Monomial coefficients of `(1-x)^a (1+x)^b`.
fn weight_poly(a: u32, b: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); (a + b + 1) as usize];
    for i in 0..=a {
        let sa = if i % 2 == 0 { binom(a, i) } else { -binom(a, i) };
        for j in 0..=b {
            p[(i + j) as usize] += &sa * binom(b, j);
        }
    }
    p
}

/// `∫_{-1}^{1} x^k (1-x)^a (1+x)^b dx` for `k = 0..=kmax`, exactly.
pub fn exact_moments(a: u32, b: u32, kmax: usize) -> Vec<BigRational> {
    let w = weight_poly(a, b);
    (0..=kmax)
        .map(|k| {
            w.iter().enumerate().fold(BigRational::zero(), |acc, (j, c)| {
                let d = k + j;
                if d % 2 == 1 {
                    acc
                } else {
                    acc + BigRational::new(c * BigInt::from(2), BigInt::from(d as i64 + 1))
                }
            })
        })
        .collect()
}

/// `∫ x^k (1-x²)^{-1/2} dx = π C(k, k/2) / 2^k` for even `k`, zero otherwise.
pub fn chebyshev_moments(kmax: usize) -> Vec<f64> {
    (0..=kmax)
        .map(|k| {
            if k % 2 == 1 {
                return 0.0;
            }
            let r = BigRational::new(binom(k as u32, k as u32 / 2), BigInt::one() << k);
            core::f64::consts::PI * r.to_f64().unwrap()
        })
        .collect()
}

/// Monic orthogonal polynomials of degree `0..=n` for the weight
/// `(1-x)^a (1+x)^b`, by Gram-Schmidt on `1, x, x², ..` in exact arithmetic.
/// Coefficients are ascending in powers of `x`.
pub fn gram_schmidt_monic(a: u32, b: u32, n: usize) -> Vec<Vec<BigRational>> {
    let m = exact_moments(a, b, 2 * n);
    let inner = |p: &[BigRational], q: &[BigRational]| {
        let mut s = BigRational::zero();
        for (i, pi) in p.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                s += pi * qj * &m[i + j];
            }
        }
        s
    };
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for k in 0..=n {
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        let xk = p.clone();
        for q in &out {
            let c = inner(&xk, q) / inner(q, q);
            for (i, qi) in q.iter().enumerate() {
                p[i] -= &c * qi;
            }
        }
        out.push(p);
    }
    out
}

pub fn to_f64(v: &[BigRational]) -> Vec<f64> {
    v.iter().map(|r| r.to_f64().unwrap()).collect()
}

/// Horner evaluation of ascending monomial coefficients.
pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            let (top, bottom) = a.split_at_mut(row);
            for (v, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *v -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Seeded uniform points in `[-1, 1]`.
pub fn random_points(seed: u64, count: usize) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}
