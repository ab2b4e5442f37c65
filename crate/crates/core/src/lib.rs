//! Numerical engine for the long-time asymptotic phase diagram of the
//! focusing NLS equation with step-like oscillating background.
//!
//! The crate is organized in five layers:
//!
//! * [`quad`] — complex-plane quadrature, root finding, Newton solvers and
//!   RK4 stepping used by everything above.
//! * [`spectral`] — explicit pure-step scattering data, branch functions and
//!   jump matrices of the basic Riemann-Hilbert problem.
//! * [`surfaces`] — hyperelliptic surface data, g-function derivatives for
//!   genus 0..3, anchored g evaluation and signature tables (level sets of
//!   Im g).
//! * [`solvers`] — period integrals, the genus-2 parameter map F with its
//!   exact Jacobian and continuation ODE, and Newton solvers for the genus-1
//!   and genus-3 condition systems.
//! * [`scenarios`] — scenario classification, sector diagrams, slow-decay
//!   coefficients and the Jacobi theta utility.

pub mod error;
pub mod quad;
pub mod scenarios;
pub mod solvers;
pub mod spectral;
pub mod surfaces;

pub use error::Error;

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;

/// Convenience constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Result alias over the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
