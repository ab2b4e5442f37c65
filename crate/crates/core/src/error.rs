use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the numerical
/// kernels and the domain preconditions of the spectral and solver layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("quadrature did not converge: estimated error {est:.3e} after max subdivision depth")]
    NonConvergence { est: f64 },
    #[error("path violates cut clearance {clearance:.3e} (min distance {dist:.3e})")]
    CutCollision { clearance: f64, dist: f64 },
    #[error("bracket endpoints do not straddle a sign change")]
    NoSignChange,
    #[error("bracketed root search failed to locate a root")]
    BracketFailure,
    #[error("Jacobian is singular (|det| = {det:.3e})")]
    SingularJacobian { det: f64 },
    #[error("Newton iteration failed to reach tolerance {tol:.1e}; final residual {residual:.3e}")]
    NewtonFailure { tol: f64, residual: f64 },
    #[error("evaluation point lies on a branch cut; specify a side")]
    OnCutWithoutSide,
    #[error("evaluation at a branch point")]
    AtBranchPoint,
    #[error("zero denominator: a(k) vanishes (soliton/virtual-level configuration is out of scope)")]
    ZeroDenominator,
    #[error("the case B1 = B2 is rejected; only B1 != B2 is handled")]
    EqualBCase,
    #[error("parameters must satisfy A1 > 0 and A2 > 0")]
    NonPositiveAmplitude,
    #[error("operation requires the symmetric shock normalization (A1 = A2, B2 = -B1 > 0)")]
    NotSymmetricShock,
    #[error("wrong parameter regime: {0}")]
    WrongRegime(&'static str),
    #[error("surface is degenerate: {0}")]
    SurfaceDegenerate(&'static str),
    #[error("period matrix is numerically singular")]
    SingularPeriodMatrix,
    #[error("matrix P is numerically singular")]
    SingularP,
    #[error("g' spec does not satisfy its defining conditions (residual {residual:.3e})")]
    ConditionsNotSatisfied { residual: f64 },
    #[error("no cut-avoiding path to the requested point")]
    PathBlocked,
    #[error("xi = {xi} lies outside the requested sector")]
    OutsideSector { xi: f64 },
    #[error("reflection coefficient vanishes at the stationary point; phase coefficient undefined")]
    ZeroReflection,
    #[error("evaluation point lies on the jump contour")]
    OnContour,
    #[error("state is closer than {min_dist:.1e} to a branch point; refusing (log-degenerate)")]
    DomainTooClose { min_dist: f64 },
    #[error("right-hand side evaluation failed: {0}")]
    RhsEvaluationFailure(String),
}
