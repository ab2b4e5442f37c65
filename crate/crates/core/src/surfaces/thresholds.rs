use crate::error::Error;
use crate::quad::find_root_1d;
use crate::spectral::ProblemParams;
use crate::Result;

/// xi_E1 = 2 (B + sqrt(A^2 + B^2)) for the symmetric shock.
pub fn xi_e1_closed_form(params: &ProblemParams) -> Result<f64> {
    require_symmetric(params)?;
    let (a, b) = (params.a2, params.b2);
    Ok(2.0 * (b + (a * a + b * b).sqrt()))
}

/// xi_merge = 4 (-B + sqrt(2) A) for the symmetric shock.
pub fn xi_merge_closed_form(params: &ProblemParams) -> Result<f64> {
    require_symmetric(params)?;
    let (a, b) = (params.a2, params.b2);
    Ok(4.0 * (-b + std::f64::consts::SQRT_2 * a))
}

/// The xi at which the infinite branch of Im g_2 = 0 passes through E_1:
/// closed form plus an independent numeric root of Im g_2(xi, E_1) = 0
/// bracketed in (xi_merge, 10 (A + B)).
pub fn find_xi_e1(params: &ProblemParams) -> Result<(f64, f64)> {
    let closed = xi_e1_closed_form(params)?;
    let e1 = params.e(1);
    let omega2 = params.branch_omega(2, e1)?;
    let x2 = params.branch_x(2, e1)?;
    let img2 = move |xi: f64| (omega2 + xi * x2).im;
    let lo = xi_merge_closed_form(params)?;
    let hi = 10.0 * (params.a2 + params.b2);
    let numeric = find_root_1d(img2, lo, hi, 1e-12).map_err(|_| Error::BracketFailure)?;
    Ok((closed, numeric))
}

/// The xi at which the two real zeros of the plane-wave g' merge: closed
/// form plus the numeric root of the discriminant (xi + 4B)^2 - 32 A^2.
pub fn find_xi_merge(params: &ProblemParams) -> Result<(f64, f64)> {
    let closed = xi_merge_closed_form(params)?;
    let (a, b) = (params.a2, params.b2);
    let disc = move |xi: f64| (xi + 4.0 * b) * (xi + 4.0 * b) - 32.0 * a * a;
    let numeric = find_root_1d(
        disc,
        -4.0 * b,
        -4.0 * b + 16.0 * std::f64::consts::SQRT_2 * a,
        1e-12,
    )?;
    Ok((closed, numeric))
}

/// A/B ratio separating the hits-E1-first and merge-first shock regimes:
/// 2/7 (2 + 3 sqrt(2)).
pub fn ab_threshold() -> f64 {
    2.0 / 7.0 * (2.0 + 3.0 * std::f64::consts::SQRT_2)
}

fn require_symmetric(params: &ProblemParams) -> Result<()> {
    if params.is_symmetric_shock() {
        Ok(())
    } else {
        Err(Error::NotSymmetricShock)
    }
}
