//! Sources with closed-form solutions.

use super::system::DomainKind;

/// Built-in test problems for `Δf = S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// `S = 0`, `f = 0`.
    Zero,
    /// `S = 4(r² - 2 + 3z²) e^{-r²-z²}`, `f = e^{-r²-z²}`, `z = r cos θ`.
    Smooth,
    /// `S = 35√r/4` for `r <= 2`, else `0`; `f = r^{5/2} - 7·2^{5/2}/2`
    /// inside and `-5·2^{7/2}/(2r)` outside.
    Sqrt,
    /// `S = 1` in the nucleus, else `0`; `f = r²/6 - 1/2` inside and
    /// `-1/(3r)` outside.
    UniformBall,
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Zero => "zero",
            Problem::Smooth => "smooth",
            Problem::Sqrt => "sqrt",
            Problem::UniformBall => "uniform-ball",
        }
    }

    /// Source as seen from `domain`; interface points belong to both sides,
    /// which matters for the discontinuous sources.
    pub fn source(&self, domain: DomainKind, r: f64, cos_theta: f64, _phi: f64) -> f64 {
        match self {
            Problem::Zero => 0.0,
            Problem::Smooth => {
                if r.is_infinite() {
                    return 0.0;
                }
                let z = r * cos_theta;
                4.0 * (r * r - 2.0 + 3.0 * z * z) * libm::exp(-r * r - z * z)
            }
            Problem::Sqrt => match domain {
                DomainKind::External => 0.0,
                _ => 35.0 * libm::sqrt(r) / 4.0,
            },
            Problem::UniformBall => match domain {
                DomainKind::Nucleus => 1.0,
                _ => 0.0,
            },
        }
    }

    pub fn solution(&self, r: f64, cos_theta: f64, _phi: f64) -> f64 {
        match self {
            Problem::Zero => 0.0,
            Problem::Smooth => {
                if r.is_infinite() {
                    return 0.0;
                }
                let z = r * cos_theta;
                libm::exp(-r * r - z * z)
            }
            Problem::Sqrt => {
                let big = libm::pow(2.0, 2.5);
                if r <= 2.0 {
                    libm::pow(r, 2.5) - 3.5 * big
                } else {
                    -5.0 * 2.0 * big / (2.0 * r)
                }
            }
            Problem::UniformBall => {
                if r <= 1.0 {
                    r * r / 6.0 - 0.5
                } else {
                    -1.0 / (3.0 * r)
                }
            }
        }
    }
}
