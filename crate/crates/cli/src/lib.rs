//! Command-line front end for the `jacobi-spectral` crate: quadrature
//! dumps, single solves, convergence sweeps with rate fits, and self-tests.

pub mod cli;
pub mod commands;
pub mod failure;
pub mod fit;
pub mod selftest;
pub mod source;
pub mod sweep;
