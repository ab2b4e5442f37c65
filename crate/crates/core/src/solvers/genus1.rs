use crate::error::Error;
use crate::quad::{integrate, newton_solve, Path};
use crate::spectral::{CaseTag, ProblemParams};
use crate::surfaces::{laurent_top3, sqrt_pair, Cut, SurfaceSpec};
use crate::{c64, Result, C64};

/// Result of the elliptic (one real zero, one conjugate pair) genus-1 solve.
#[derive(Debug, Clone, Copy)]
pub struct Genus1Elliptic {
    pub mu: f64,
    pub beta: C64,
    pub residual: f64,
}

/// dg/dk for the elliptic genus-1 family in coordinates smooth through
/// beta2 = 0: 4 (k - mu) S_beta(k) / S_E2(k) with S_beta^2 = (k-b1)^2 + u.
fn dg_elliptic(params: &ProblemParams, mu: f64, b1: f64, u: f64) -> impl Fn(C64) -> C64 + '_ {
    let e2 = params.e(2);
    let root = c64(u, 0.0).sqrt();
    let bp = b1 + c64(0.0, 1.0) * root;
    let bq = b1 - c64(0.0, 1.0) * root;
    move |k: C64| {
        4.0 * (k - mu) * sqrt_pair(bp, bq, k) / sqrt_pair(e2, e2.conj(), k)
    }
}

fn elliptic_residuals(params: &ProblemParams, xi: f64, y: &[f64]) -> Result<Vec<f64>> {
    let (mu, b1, u) = (y[0], y[1], y[2]);
    let dg = dg_elliptic(params, mu, b1, u);
    let (c1, c0, cm1) = laurent_top3(&dg, 3e2);
    // Cycle around Sigma_2 clear of the beta cut.
    let root = c64(u, 0.0).sqrt();
    let beta_cut = Cut {
        p: b1 - c64(0.0, 1.0) * root,
        q: b1 + c64(0.0, 1.0) * root,
    };
    let sigma2 = Cut::conjugate_pair(params.e(2));
    let gap = sigma2.dist_to_cut(&beta_cut).min(1.0);
    if gap < 1e-8 {
        return Err(Error::SurfaceDegenerate("beta cut touches Sigma_2"));
    }
    let surface = SurfaceSpec {
        cuts: vec![sigma2, beta_cut],
    };
    let path = surface.a_cycle(0, gap / 4.0);
    let period = integrate(&dg, &path, 1e-12)?.value;
    let _ = c1;
    // (1/i) int_{E2}^{conj E2} dg = (1/(2i)) oint around Sigma_2.
    Ok(vec![c0.re - xi, cm1.re, 0.5 * period.im])
}

/// Newton solve of the elliptic genus-1 conditions at fixed xi from the seed
/// (mu, beta). Works for any step parameters with the cut on Sigma_2; the
/// caller is responsible for the sector gate.
pub fn solve_genus1_elliptic(
    params: &ProblemParams,
    xi: f64,
    seed: (f64, C64),
) -> Result<Genus1Elliptic> {
    let y0 = [seed.0, seed.1.re, seed.1.im * seed.1.im.abs()];
    let f = |y: &[f64]| elliptic_residuals(params, xi, y);
    let jac = |y: &[f64]| -> Result<Vec<Vec<f64>>> {
        let h = 1e-7;
        let mut m = vec![vec![0.0; 3]; 3];
        for c in 0..3 {
            let mut yp = y.to_vec();
            let mut ym = y.to_vec();
            yp[c] += h;
            ym[c] -= h;
            let fp = elliptic_residuals(params, xi, &yp)?;
            let fm = elliptic_residuals(params, xi, &ym)?;
            for r in 0..3 {
                m[r][c] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        Ok(m)
    };
    let (y, rep) = newton_solve(f, jac, &y0, 1e-9, 50)?;
    let beta = c64(y[1], y[2].max(0.0).sqrt());
    Ok(Genus1Elliptic {
        mu: y[0],
        beta,
        residual: rep.residual,
    })
}

/// Genus-1 solver for the rarefaction right transition sector
/// -4 B_2 < xi < -4 B_2 + 4 sqrt(2) A_2.
pub fn solve_genus1_rarefaction(
    params: &ProblemParams,
    xi: f64,
    seed: (f64, C64),
) -> Result<Genus1Elliptic> {
    if params.case_tag() != CaseTag::Rarefaction {
        return Err(Error::WrongRegime("rarefaction case required"));
    }
    let lo = -4.0 * params.b2;
    let hi = lo + 4.0 * std::f64::consts::SQRT_2 * params.a2;
    if !(xi > lo && xi < hi) {
        return Err(Error::OutsideSector { xi });
    }
    solve_genus1_elliptic(params, xi, seed)
}

/// Default seed at the plane-wave merge endpoint: beta = mu = the merged
/// double zero B_2 - A_2/sqrt(2).
pub fn genus1_rarefaction_merge_seed(params: &ProblemParams) -> (f64, C64) {
    let m = params.b2 - params.a2 / std::f64::consts::SQRT_2;
    (m, c64(m, 0.0))
}

/// Three-real-zero genus-1 conditions over the two E-cuts (symmetric shock,
/// A < B, small |xi|). Returns (mu0, mu1, mu2) with mu1 < mu0 < mu2.
pub fn solve_genus1_smallxi(
    params: &ProblemParams,
    xi: f64,
    seed: Option<[f64; 3]>,
) -> Result<[f64; 3]> {
    if !params.is_symmetric_shock() {
        return Err(Error::NotSymmetricShock);
    }
    let (a, b) = (params.a2, params.b2);
    if a >= b {
        return Err(Error::WrongRegime("three real zeros require A < B"));
    }
    let m0 = (b * b - a * a).sqrt();
    let y0 = seed.unwrap_or([0.0, -m0, m0]);
    let surface = SurfaceSpec::from_upper_points(&[params.e(1), params.e(2)]);
    let residuals = |y: &[f64]| -> Result<Vec<f64>> {
        let dg = |k: C64| {
            4.0 * (k - y[0]) * (k - y[1]) * (k - y[2]) / surface.w_unchecked(k)
        };
        let (_, c0, cm1) = laurent_top3(&dg, 3e2);
        let path = cycle_for(&surface, 0);
        let period = integrate(&dg, &path, 1e-12)?.value;
        Ok(vec![c0.re - xi, cm1.re, period.im])
    };
    let jac = |y: &[f64]| -> Result<Vec<Vec<f64>>> {
        let h = 1e-7;
        let mut m = vec![vec![0.0; 3]; 3];
        for c in 0..3 {
            let mut yp = y.to_vec();
            let mut ym = y.to_vec();
            yp[c] += h;
            ym[c] -= h;
            let fp = residuals(&yp)?;
            let fm = residuals(&ym)?;
            for r in 0..3 {
                m[r][c] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        Ok(m)
    };
    let (y, _) = newton_solve(residuals, jac, &y0, 1e-9, 50)?;
    // (mu0, mu1, mu2) with mu1 < mu0 < mu2.
    let mut s = [y[0], y[1], y[2]];
    s.sort_by(f64::total_cmp);
    Ok([s[1], s[0], s[2]])
}

fn cycle_for(surface: &SurfaceSpec, idx: usize) -> Path {
    let cl = surface.clearance_around(idx);
    surface.a_cycle(idx, cl)
}
