//! Small numerical helpers shared by the polynomial and quadrature code.

/// `Γ(x) / Γ(y)` for `x, y > 0`.
///
/// Both arguments are reduced to `(0, 1]` with the recurrence
/// `Γ(z+1) = zΓ(z)` and the rising factors are multiplied and divided in
/// lock-step, so quotients such as `Γ(n+3)/Γ(n+1)` never evaluate a bare
/// `Γ(n)`. When `x - y` is an integer no transcendental call is made at all.
pub fn gamma_ratio(x: f64, y: f64) -> f64 {
    debug_assert!(x > 0.0 && y > 0.0, "gamma_ratio needs positive arguments");
    let (x0, kx) = reduce(x);
    let (y0, ky) = reduce(y);
    let mut ratio = if x0 == y0 { 1.0 } else { libm::tgamma(x0) / libm::tgamma(y0) };
    for i in 0..kx.max(ky) {
        if i < kx {
            ratio *= x0 + i as f64;
        }
        if i < ky {
            ratio /= y0 + i as f64;
        }
    }
    ratio
}

/// Splits `z > 0` into `(z0, k)` with `z0 in (0, 1]` and `z = z0 + k`.
fn reduce(z: f64) -> (f64, usize) {
    let k = libm::ceil(z) - 1.0;
    let k = if k < 0.0 { 0.0 } else { k };
    (z - k, k as usize)
}

/// `2^e` for real `e`.
pub fn pow2(e: f64) -> f64 {
    libm::exp2(e)
}

/// Generalized binomial coefficient `C(top, k)` for real `top`.
pub fn binomial(top: f64, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c *= (top - i as f64) / (i + 1) as f64;
    }
    c
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if libm::fabs(self.sum) >= libm::fabs(v) {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `true` when `v` is an integer to within rounding.
pub(crate) fn is_integer(v: f64) -> bool {
    libm::fabs(v - libm::round(v)) < 1e-12
}
