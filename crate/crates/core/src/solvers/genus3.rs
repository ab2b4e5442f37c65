use crate::error::Error;
use crate::quad::{integrate, newton_solve, Path};
use crate::spectral::ProblemParams;
use crate::surfaces::{laurent_top3, sqrt_pair, Cut, GPrimeSpec};
use crate::{c64, Result, C64};

/// Unknown vector (mu, alpha, beta) of the genus-3 condition system.
#[derive(Debug, Clone, Copy)]
pub struct ParamStateG3 {
    pub params: ProblemParams,
    pub xi: f64,
    pub mu: f64,
    pub alpha: C64,
    pub beta: C64,
    /// Infinity norm of the five condition residuals at the solution.
    pub residual: f64,
    /// Magnitude of the automatically-vanishing sixth quantity
    /// (Im of the [alpha, beta] period).
    pub auto_residual: f64,
}

impl ParamStateG3 {
    pub fn gprime_spec(&self) -> GPrimeSpec {
        GPrimeSpec::genus3(&self.params, self.xi, self.mu, self.alpha, self.beta)
    }
}

/// Degenerate seed at xi = 0: mu = 0, alpha = beta = i sqrt(A^2 - B^2),
/// split by `split` along the imaginary axis.
pub fn genus3_seed_xi0(params: &ProblemParams, split: f64) -> Result<ParamStateG3> {
    if !params.is_symmetric_shock() {
        return Err(Error::NotSymmetricShock);
    }
    let (a, b) = (params.a2, params.b2);
    if a <= b {
        return Err(Error::WrongRegime("genus-3 window requires A/B > 1"));
    }
    let alpha0 = (a * a - b * b).sqrt();
    Ok(ParamStateG3 {
        params: *params,
        xi: 0.0,
        mu: 0.0,
        alpha: c64(0.0, alpha0 + split),
        beta: c64(0.0, alpha0 - split),
        residual: f64::INFINITY,
        auto_residual: f64::INFINITY,
    })
}

/// dg/dk of the genus-3 family: after cancelling the pair zeros against the
/// [alpha, beta] cuts,
/// dg = 4 (k - mu) S_{alpha beta}(k) S_{conj} (k) / (S_1(k) S_2(k)).
fn dg_genus3<'p>(
    params: &'p ProblemParams,
    mu: f64,
    alpha: C64,
    beta: C64,
) -> impl Fn(C64) -> C64 + 'p {
    let e1 = params.e(1);
    let e2 = params.e(2);
    move |k: C64| {
        4.0 * (k - mu) * sqrt_pair(alpha, beta, k) * sqrt_pair(alpha.conj(), beta.conj(), k)
            / (sqrt_pair(e1, e1.conj(), k) * sqrt_pair(e2, e2.conj(), k))
    }
}

/// Counterclockwise loop around the [alpha, beta] cut: stadium (circle for a
/// collapsed cut).
fn alpha_beta_cycle(params: &ProblemParams, alpha: C64, beta: C64) -> Result<Path> {
    let cut = Cut { p: alpha, q: beta };
    let others = [
        Cut::conjugate_pair(params.e(1)),
        Cut::conjugate_pair(params.e(2)),
        Cut {
            p: alpha.conj(),
            q: beta.conj(),
        },
    ];
    let gap = others
        .iter()
        .map(|c| cut.dist_to_cut(c))
        .fold(1.0f64, f64::min);
    if gap < 1e-6 {
        return Err(Error::SurfaceDegenerate(
            "[alpha, beta] cut touches another cut",
        ));
    }
    let r = gap / 4.0;
    if (alpha - beta).norm() < 1e-12 {
        Ok(Path::circle(alpha, r))
    } else {
        Ok(Path::stadium(alpha, beta, r))
    }
}

fn sigma_cycle(params: &ProblemParams, j: usize, alpha: C64, beta: C64) -> Path {
    let own = Cut::conjugate_pair(params.e(j));
    let others = [
        Cut::conjugate_pair(params.e(3 - j)),
        Cut { p: alpha, q: beta },
        Cut {
            p: alpha.conj(),
            q: beta.conj(),
        },
    ];
    let gap = others
        .iter()
        .map(|c| own.dist_to_cut(c))
        .fold(1.0f64, f64::min);
    let surface = crate::surfaces::SurfaceSpec {
        cuts: vec![own, others[0], others[1], others[2]],
    };
    surface.a_cycle(0, gap / 4.0)
}

/// The five real residuals of the genus-3 conditions at (mu, a1, a2, b1, b2):
/// the Sigma_1 and Sigma_2 periods of dg-hat (purely imaginary by symmetry),
/// the real part of the [alpha, beta] period (its imaginary part vanishes
/// automatically once the other conditions hold), and the two expansion
/// coefficients of dg/dk - 4k - xi at infinity.
fn residuals_g3(params: &ProblemParams, xi: f64, y: &[f64]) -> Result<Vec<f64>> {
    let (mu, alpha, beta) = (y[0], c64(y[1], y[2]), c64(y[3], y[4]));
    if alpha.im <= 0.0 || beta.im <= 0.0 {
        return Err(Error::WrongRegime("alpha and beta must stay in C+"));
    }
    let dg = dg_genus3(params, mu, alpha, beta);
    let p1 = integrate(&dg, &sigma_cycle(params, 1, alpha, beta), 1e-12)?.value;
    let pab = integrate(&dg, &alpha_beta_cycle(params, alpha, beta)?, 1e-12)?.value;
    let p2 = integrate(&dg, &sigma_cycle(params, 2, alpha, beta), 1e-12)?.value;
    let (_, c0, cm1) = laurent_top3(&dg, 3e2);
    Ok(vec![p1.im, pab.re, p2.im, c0.re - xi, cm1.re])
}

/// Newton solve of the genus-3 condition system at fixed xi from `seed`.
pub fn solve_genus3(params: &ProblemParams, xi: f64, seed: &ParamStateG3) -> Result<ParamStateG3> {
    if !params.is_symmetric_shock() {
        return Err(Error::NotSymmetricShock);
    }
    if params.a2 <= params.b2 {
        return Err(Error::WrongRegime("genus-3 window requires A/B > 1"));
    }
    let y0 = [
        seed.mu,
        seed.alpha.re,
        seed.alpha.im,
        seed.beta.re,
        seed.beta.im,
    ];
    let f = |y: &[f64]| residuals_g3(params, xi, y);
    let jac = |y: &[f64]| -> Result<Vec<Vec<f64>>> {
        let h = 1e-7;
        let mut m = vec![vec![0.0; 5]; 5];
        for c in 0..5 {
            let mut yp = y.to_vec();
            let mut ym = y.to_vec();
            yp[c] += h;
            ym[c] -= h;
            let fp = residuals_g3(params, xi, &yp)?;
            let fm = residuals_g3(params, xi, &ym)?;
            for r in 0..5 {
                m[r][c] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        Ok(m)
    };
    let (y, rep) = newton_solve(f, jac, &y0, 1e-8, 40)?;
    let (mu, alpha, beta) = (y[0], c64(y[1], y[2]), c64(y[3], y[4]));
    let dg = dg_genus3(params, mu, alpha, beta);
    let pab = integrate(&dg, &alpha_beta_cycle(params, alpha, beta)?, 1e-12)?.value;
    Ok(ParamStateG3 {
        params: *params,
        xi,
        mu,
        alpha,
        beta,
        residual: rep.residual,
        auto_residual: pab.im.abs(),
    })
}
