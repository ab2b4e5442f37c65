//! Complex-plane numerical kernel: adaptive path quadrature, bracketed and
//! Newton root-finding, RK4 stepping.
//!
//! All routines are pure functions of their inputs and safe to call from any
//! number of threads.

mod gk;
mod linalg;
mod newton;
mod ode;
mod path;
mod root;

pub use gk::{integrate, integrate_fn, integrate_segment, QuadratureResult, DEFAULT_TOL, MAX_DEPTH};
pub use linalg::{lu_solve, mat2_inv, Mat2};
pub use newton::{newton_solve, NewtonReport};
pub use ode::ode_step_rk4;
pub use path::{point_segment_dist, Path, Segment};
pub use root::find_root_1d;
