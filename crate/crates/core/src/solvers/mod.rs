//! Period integrals and the parameter solvers fixing g-function data:
//! the genus-2 map F with exact Jacobian and continuation ODE, and Newton
//! solvers for the genus-1 and genus-3 condition systems.

mod genus1;
mod genus2;
mod genus3;
mod periods;

pub use genus1::{
    genus1_rarefaction_merge_seed, solve_genus1_elliptic, solve_genus1_rarefaction,
    solve_genus1_smallxi, Genus1Elliptic,
};
pub use genus2::{
    c1_constant, d00_boundary, f0_boundary, f_eval, f_tilde, genus2_start, jacobian_alpha,
    ode_rhs, q12_boundary, q_poly, regularizing_map, trace_genus2, ParamStateG2, Termination,
    TraceOptions, TraceResult, TraceSample,
};
pub use genus3::{genus3_seed_xi0, solve_genus3, ParamStateG3};
pub use periods::{periods_matrix, PeriodMatrices};
