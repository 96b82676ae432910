//! Per-`l` three-domain tau systems.
//!
//! Unknowns are the radial coefficients of the nucleus, the shell and the
//! external domain, in that order. Each domain contributes one block row per
//! unknown: the low-degree rows of its operator, followed by condition rows
//! that replace the highest-degree operator rows.
//!
//! | domain   | operator rows kept        | condition rows                              |
//! |----------|---------------------------|---------------------------------------------|
//! | nucleus  | size - (c_l + 1)          | regularity (c_l of them), `f` at `r = 1`    |
//! | shell    | N - 1                     | `df/dr` at `r = 1`, `f` at `r = 2`          |
//! | external | N - 1                     | `df/dr` at `r = 2`, `f(∞) = 0`              |
//!
//! `c_l` counts the regularity conditions: for the Jacobi nucleus `f'(-1) = 0`
//! when `l = 0`, `f(-1) = 0` when `l = 1`, both when `l >= 2`. The
//! regularized nucleus operator always annihilates `1` and `x` and, for
//! `2 <= l <= N`, also `(1+x)^l`, so its image has dimension at most `N - 1`
//! (`N - 2` when `l >= 2`); this fixes how many operator rows can be kept.

use alloc::vec;
use alloc::vec::Vec;

use crate::jacobi::JacobiIndex;
use crate::linalg::{DenseMatrix, Lu};
use crate::poisson::operators::{
    cheb_origin_values, external_operator, nucleus_operator, nucleus_operator_cheb, parity_degree, parity_size,
    shell_operator,
};
use crate::radial_ops::{
    cheb_endpoint_rows, endpoint_row_derivative, endpoint_row_derivative_plus, endpoint_row_value,
    endpoint_row_value_plus,
};
use crate::transform::{Basis, CoeffVector, Mapping};
use crate::{Error, Result};

/// The three radial domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    Nucleus,
    Shell,
    External,
}

impl DomainKind {
    pub const ALL: [DomainKind; 3] = [DomainKind::Nucleus, DomainKind::Shell, DomainKind::External];

    pub fn name(&self) -> &'static str {
        match self {
            DomainKind::Nucleus => "nucleus",
            DomainKind::Shell => "shell",
            DomainKind::External => "external",
        }
    }

    pub(crate) fn slot(&self) -> usize {
        *self as usize
    }
}

/// Radial basis of the nucleus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NucleusBasis {
    /// `(0,2)` Jacobi polynomials in `x`, `r = (1+x)/2`.
    Jacobi02,
    /// Even or odd Chebyshev polynomials in `r = x`, following the parity of `l`.
    ChebyshevParity,
}

/// A domain with its mapping and radial truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub n_r: usize,
    pub nucleus_basis: NucleusBasis,
}

impl DomainSpec {
    pub fn mapping(&self) -> Mapping {
        match (self.kind, self.nucleus_basis) {
            (DomainKind::Nucleus, NucleusBasis::Jacobi02) => Mapping::Nucleus,
            (DomainKind::Nucleus, NucleusBasis::ChebyshevParity) => Mapping::NucleusLinear,
            (DomainKind::Shell, _) => Mapping::Shell,
            (DomainKind::External, _) => Mapping::External,
        }
    }

    pub fn basis(&self) -> Basis {
        match (self.kind, self.nucleus_basis) {
            (DomainKind::Nucleus, NucleusBasis::Jacobi02) => Basis::Jacobi(JacobiIndex::J02),
            _ => Basis::Chebyshev,
        }
    }

    fn is_parity(&self) -> bool {
        self.kind == DomainKind::Nucleus && self.nucleus_basis == NucleusBasis::ChebyshevParity
    }

    /// Number of radial unknowns for multipole `l`.
    pub fn size(&self, l: usize) -> usize {
        if self.is_parity() {
            parity_size(l, self.n_r)
        } else {
            self.n_r + 1
        }
    }

    /// Operator block, premultiplied as described on the operator builders.
    fn operator(&self, l: usize) -> DenseMatrix {
        match self.kind {
            DomainKind::Nucleus if self.is_parity() => nucleus_operator_cheb(l, self.n_r).into_matrix(),
            DomainKind::Nucleus => nucleus_operator(l, self.n_r).into_matrix(),
            DomainKind::Shell => shell_operator(l, self.n_r).into_matrix(),
            DomainKind::External => external_operator(l, self.n_r).into_matrix(),
        }
    }

    /// Value and physical-derivative rows at the inner and outer edge.
    pub fn edge_rows(&self, l: usize) -> EdgeRows {
        let n = self.n_r;
        if self.is_parity() {
            let size = parity_size(l, n);
            let degrees: Vec<usize> = (0..size).map(|k| parity_degree(l, k)).collect();
            let origin: Vec<(f64, f64)> = degrees.iter().map(|&p| cheb_origin_values(p)).collect();
            return EdgeRows {
                value_inner: origin.iter().map(|o| o.0).collect(),
                slope_inner: origin.iter().map(|o| o.1).collect(),
                value_outer: vec![1.0; size],
                slope_outer: degrees.iter().map(|&p| (p * p) as f64).collect(),
            };
        }
        match self.kind {
            DomainKind::Nucleus => EdgeRows {
                value_inner: endpoint_row_value(n),
                slope_inner: endpoint_row_derivative(n).into_iter().map(|v| 2.0 * v).collect(),
                value_outer: endpoint_row_value_plus(n),
                slope_outer: endpoint_row_derivative_plus(n).into_iter().map(|v| 2.0 * v).collect(),
            },
            DomainKind::Shell | DomainKind::External => {
                let e = cheb_endpoint_rows(n);
                let mapping = self.mapping();
                let (inner, outer) = (mapping.dx_dr(-1.0), mapping.dx_dr(1.0));
                EdgeRows {
                    value_inner: e.value_minus,
                    slope_inner: e.deriv_minus.into_iter().map(|v| inner * v).collect(),
                    value_outer: e.value_plus,
                    slope_outer: e.deriv_plus.into_iter().map(|v| outer * v).collect(),
                }
            }
        }
    }

    /// Full coefficient vector for a solved block; parity blocks are spread
    /// over `T_0 .. T_{2N}`.
    pub fn coeff_vector(&self, l: usize, block: &[f64]) -> Result<CoeffVector> {
        let coeffs = if self.is_parity() {
            let mut full = vec![0.0; 2 * self.n_r + 1];
            for (k, v) in block.iter().enumerate() {
                full[parity_degree(l, k)] = *v;
            }
            full
        } else {
            block.to_vec()
        };
        CoeffVector::new(self.basis(), self.mapping(), coeffs)
    }
}

/// Rows giving `f` and `df/dr` at the two edges of a domain when dotted
/// with its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRows {
    pub value_inner: Vec<f64>,
    pub slope_inner: Vec<f64>,
    pub value_outer: Vec<f64>,
    pub slope_outer: Vec<f64>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Meaning of a condition row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Condition {
    /// `f = 0` at the center.
    RegularValue,
    /// `df/dr = 0` at the center.
    RegularSlope,
    /// Continuity of `f` at the given radius.
    MatchValue(f64),
    /// Continuity of `df/dr` at the given radius.
    MatchSlope(f64),
    /// `f = 0` at infinity.
    Decay,
}

/// The assembled and factorized system for one `l`.
#[derive(Debug, Clone)]
pub struct RadialBlockSystem {
    l: usize,
    n_r: usize,
    domains: [DomainSpec; 3],
    sizes: [usize; 3],
    offsets: [usize; 3],
    kept: [usize; 3],
    conditions: Vec<(usize, Condition)>,
    matrix: DenseMatrix,
    lu: Lu,
}

/// Number of regularity conditions at the center.
pub fn regularity_count(l: usize, basis: NucleusBasis) -> usize {
    match (basis, l) {
        (NucleusBasis::Jacobi02, 0 | 1) => 1,
        (NucleusBasis::Jacobi02, _) => 2,
        (NucleusBasis::ChebyshevParity, 0 | 1) => 0,
        (NucleusBasis::ChebyshevParity, _) => 1,
    }
}

pub fn assemble_block_system(l: usize, n_r: usize, nucleus_basis: NucleusBasis) -> Result<RadialBlockSystem> {
    if n_r < 6 {
        return Err(Error::Domain("radial truncation N_r must be at least 6"));
    }
    let domains = DomainKind::ALL.map(|kind| DomainSpec { kind, n_r, nucleus_basis });
    let sizes = domains.map(|d| d.size(l));
    let offsets = [0, sizes[0], sizes[0] + sizes[1]];
    let total = sizes.iter().sum();
    let c_l = regularity_count(l, nucleus_basis);
    let kept = [sizes[0] - (c_l + 1), sizes[1] - 2, sizes[2] - 2];
    let rows = domains.map(|d| d.edge_rows(l));

    let mut matrix = DenseMatrix::zeros(total, total);
    for d in 0..3 {
        let op = domains[d].operator(l);
        for i in 0..kept[d] {
            for j in 0..sizes[d] {
                matrix[(offsets[d] + i, offsets[d] + j)] = op[(i, j)];
            }
        }
    }
    let mut conditions = Vec::with_capacity(c_l + 5);
    let mut put = |row: usize, cond: Condition, parts: &[(usize, &[f64], f64)]| {
        for &(d, r, s) in parts {
            for (j, v) in r.iter().enumerate() {
                matrix[(row, offsets[d] + j)] += s * v;
            }
        }
        conditions.push((row, cond));
    };

    let mut row = kept[0];
    let (nuc, shell, ext) = (&rows[0], &rows[1], &rows[2]);
    let regular: &[(Condition, &[f64])] = match (nucleus_basis, l, l % 2) {
        (NucleusBasis::Jacobi02, 0, _) => &[(Condition::RegularSlope, nuc.slope_inner.as_slice())],
        (NucleusBasis::Jacobi02, 1, _) => &[(Condition::RegularValue, nuc.value_inner.as_slice())],
        (NucleusBasis::Jacobi02, _, _) => &[
            (Condition::RegularValue, nuc.value_inner.as_slice()),
            (Condition::RegularSlope, nuc.slope_inner.as_slice()),
        ],
        (NucleusBasis::ChebyshevParity, 0 | 1, _) => &[],
        (NucleusBasis::ChebyshevParity, _, 0) => &[(Condition::RegularValue, nuc.value_inner.as_slice())],
        (NucleusBasis::ChebyshevParity, _, _) => &[(Condition::RegularSlope, nuc.slope_inner.as_slice())],
    };
    for (cond, r) in regular {
        put(row, *cond, &[(0, r, 1.0)]);
        row += 1;
    }
    put(row, Condition::MatchValue(1.0), &[(0, &nuc.value_outer, 1.0), (1, &shell.value_inner, -1.0)]);

    let row = offsets[1] + kept[1];
    put(row, Condition::MatchSlope(1.0), &[(0, &nuc.slope_outer, 1.0), (1, &shell.slope_inner, -1.0)]);
    put(row + 1, Condition::MatchValue(2.0), &[(1, &shell.value_outer, 1.0), (2, &ext.value_inner, -1.0)]);

    let row = offsets[2] + kept[2];
    put(row, Condition::MatchSlope(2.0), &[(1, &shell.slope_outer, 1.0), (2, &ext.slope_inner, -1.0)]);
    put(row + 1, Condition::Decay, &[(2, &ext.value_outer, 1.0)]);

    let lu = Lu::factor(&matrix).ok_or(Error::Singular { l, n_r })?;
    Ok(RadialBlockSystem { l, n_r, domains, sizes, offsets, kept, conditions, matrix, lu })
}

/// Scaled source coefficients per domain plus right-hand sides of the
/// condition rows (zero for the homogeneous problem).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialSources {
    pub nucleus: Vec<f64>,
    pub shell: Vec<f64>,
    pub external: Vec<f64>,
    /// Values in the order of [`RadialBlockSystem::conditions`]; empty means all zero.
    pub conditions: Vec<f64>,
}

/// Solved coefficients, one vector per domain.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub nucleus: CoeffVector,
    pub shell: CoeffVector,
    pub external: CoeffVector,
    /// `‖A u - b‖_∞ / max(‖b‖_∞, 1e-300)`.
    pub relative_residual: f64,
}

impl RadialSolution {
    pub fn domain(&self, kind: DomainKind) -> &CoeffVector {
        match kind {
            DomainKind::Nucleus => &self.nucleus,
            DomainKind::Shell => &self.shell,
            DomainKind::External => &self.external,
        }
    }
}

impl RadialBlockSystem {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn domain(&self, kind: DomainKind) -> &DomainSpec {
        &self.domains[kind.slot()]
    }

    /// Unknowns per domain.
    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    /// Operator rows retained per domain.
    pub fn kept_operator_rows(&self) -> [usize; 3] {
        self.kept
    }

    /// Condition rows with their global row index.
    pub fn conditions(&self) -> &[(usize, Condition)] {
        &self.conditions
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn rhs(&self, sources: &RadialSources) -> Result<Vec<f64>> {
        let mut b = vec![0.0; self.size()];
        for (d, src) in [&sources.nucleus, &sources.shell, &sources.external].into_iter().enumerate() {
            if src.len() > self.sizes[d] {
                return Err(Error::Dimension { expected: self.sizes[d], found: src.len() });
            }
            for i in 0..self.kept[d].min(src.len()) {
                b[self.offsets[d] + i] = src[i];
            }
        }
        if !sources.conditions.is_empty() {
            if sources.conditions.len() != self.conditions.len() {
                return Err(Error::Dimension { expected: self.conditions.len(), found: sources.conditions.len() });
            }
            for ((row, _), v) in self.conditions.iter().zip(&sources.conditions) {
                b[*row] = *v;
            }
        }
        Ok(b)
    }

    /// Solves for the raw unknown vector.
    pub fn solve_vector(&self, b: &[f64]) -> Vec<f64> {
        self.lu.solve(b)
    }

    /// Splits a raw unknown vector into per-domain coefficient vectors.
    pub fn split(&self, u: &[f64]) -> Result<[CoeffVector; 3]> {
        let mut out = Vec::with_capacity(3);
        for d in 0..3 {
            let block = &u[self.offsets[d]..self.offsets[d] + self.sizes[d]];
            out.push(self.domains[d].coeff_vector(self.l, block)?);
        }
        let [a, b, c]: [CoeffVector; 3] = out.try_into().map_err(|_| Error::Domain("three domains expected"))?;
        Ok([a, b, c])
    }

    pub fn block<'a>(&self, kind: DomainKind, u: &'a [f64]) -> &'a [f64] {
        let d = kind.slot();
        &u[self.offsets[d]..self.offsets[d] + self.sizes[d]]
    }
}

/// Dense LU solve of the assembled system.
pub fn solve_radial(system: &RadialBlockSystem, sources: &RadialSources) -> Result<RadialSolution> {
    let b = system.rhs(sources)?;
    let u = system.solve_vector(&b);
    let r = system.matrix.mul_vec(&u);
    let res = r.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max(libm::fabs(x - y)));
    let scale = b.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v))).max(1e-300);
    let [nucleus, shell, external] = system.split(&u)?;
    Ok(RadialSolution { nucleus, shell, external, relative_residual: res / scale })
}
