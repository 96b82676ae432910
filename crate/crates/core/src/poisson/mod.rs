//! Tau-method solver for `Δf = S` on a nucleus (`r <= 1`), a shell
//! (`1 <= r <= 2`) and a compactified exterior (`r >= 2`).

mod operators;
mod problems;
mod solve;
mod system;

pub use operators::{
    external_operator, external_source_scale, nucleus_operator, nucleus_operator_cheb, parity_degree, parity_size,
    shell_operator, shell_source_scale,
};
pub use problems::Problem;
pub use solve::{
    max_collocation_error, solve_3d, solve_3d_analytic, CollocationGrid, DomainGrid, GridValues, SolutionField,
    SolveConfig,
};
pub use system::{
    assemble_block_system, regularity_count, solve_radial, Condition, DomainKind, DomainSpec, EdgeRows, NucleusBasis,
    RadialBlockSystem, RadialSolution, RadialSources,
};
