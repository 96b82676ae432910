//! Spectral building blocks on Jacobi polynomial bases, with the `(0,2)`
//! family as the main citizen.
//!
//! The `(0,2)` Jacobi polynomials are orthogonal for the weight `(1+x)^2`,
//! which becomes `r^2` under the map `r = (1+x)/2`. This crate provides
//!
//! * evaluation and closed-form properties of `J_n^{(α,β)}` ([`jacobi`]),
//! * Jacobi-Gauss-Lobatto rules with closed-form weights ([`quadrature`]),
//! * the discrete Jacobi (and Chebyshev) transform ([`transform`]),
//! * coefficient-space operator matrices ([`radial_ops`]),
//! * spherical-harmonic analysis and synthesis ([`sph_harm`]),
//! * a three-domain tau-method Poisson solver on `R^3` ([`poisson`]).
//!
//! Everything is `no_std` with `alloc`; file formats and the command line
//! live in the companion CLI crate.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod error;
pub mod jacobi;
pub mod linalg;
pub mod poisson;
pub mod quadrature;
pub mod radial_ops;
pub mod special;
pub mod sph_harm;
pub mod transform;

pub use error::{Error, Result};
pub use jacobi::JacobiIndex;
pub use quadrature::QuadratureRule;
pub use radial_ops::SpectralMatrix;
pub use transform::{Basis, CoeffVector, Mapping};
