use super::SurfaceSpec;
use crate::error::Error;
use crate::quad;
use crate::spectral::ProblemParams;
use crate::{c64, Result, C64};

/// A xi-parametrized g-function derivative of the rational-over-w form
///
///   g'(k) = 4 * prod (k - zeros) / w(k),
///
/// where zeros are the real zeros plus conjugate pairs counted once. Pairs
/// whose points coincide with cut endpoints cancel against w in closed form,
/// leaving square-root (not pole) behavior across those cuts.
#[derive(Debug, Clone)]
pub struct GPrimeSpec {
    pub xi: f64,
    pub surface: SurfaceSpec,
    pub real_zeros: Vec<f64>,
    pub pair_zeros: Vec<C64>,
    /// Real additive constant fixing g at infinity: g ~ 2k^2 + xi k + g0.
    /// Zero when the constant is not pinned by a closed form.
    pub g0: f64,
    /// Cut indices whose sqrt factors moved to the numerator by cancellation.
    cancelled: Vec<bool>,
    /// Numerator roots remaining after cancellation.
    residual_roots: Vec<C64>,
}

impl GPrimeSpec {
    /// Build the spec, performing closed-form cancellation of numerator
    /// zero-pairs against matching cut endpoints.
    pub fn new(
        xi: f64,
        surface: SurfaceSpec,
        real_zeros: Vec<f64>,
        pair_zeros: Vec<C64>,
        g0: f64,
    ) -> Self {
        let mut roots: Vec<C64> = real_zeros.iter().map(|&m| c64(m, 0.0)).collect();
        for &z in &pair_zeros {
            roots.push(z);
            roots.push(z.conj());
        }
        let mut cancelled = vec![false; surface.cuts.len()];
        let scale: f64 = surface
            .cuts
            .iter()
            .flat_map(|c| c.endpoints())
            .map(C64::norm)
            .fold(1.0, f64::max);
        for (i, cut) in surface.cuts.iter().enumerate() {
            let take = |pt: C64, pool: &mut Vec<C64>| -> Option<usize> {
                pool.iter().position(|&r| (r - pt).norm() < 1e-10 * scale)
            };
            let mut trial = roots.clone();
            let ip = take(cut.p, &mut trial);
            if let Some(ip) = ip {
                trial.remove(ip);
                if let Some(iq) = take(cut.q, &mut trial) {
                    trial.remove(iq);
                    roots = trial;
                    cancelled[i] = true;
                }
            }
        }
        GPrimeSpec {
            xi,
            surface,
            real_zeros,
            pair_zeros,
            g0,
            cancelled,
            residual_roots: roots,
        }
    }

    /// Genus-0 plane-wave spec for side `j`: two real zeros over the single
    /// cut Sigma_j, with the closed-form anchor constant omega_j - xi B_j.
    pub fn genus0(params: &ProblemParams, xi: f64, j: usize) -> Result<Self> {
        let (mu1, mu2) = genus0_zeros(params, xi, j)?;
        let surface = SurfaceSpec::from_upper_points(&[params.e(j)]);
        Ok(GPrimeSpec::new(
            xi,
            surface,
            vec![mu1, mu2],
            vec![],
            params.omega(j) - xi * params.wavenumber(j),
        ))
    }

    /// Genus-1 spec at xi = 0 for the symmetric shock with A >= B:
    /// g'(0,k) = 4 k (k^2 + alpha0^2) / w1(k), alpha0 = sqrt(A^2 - B^2).
    pub fn genus1_xi0(params: &ProblemParams) -> Result<Self> {
        if !params.is_symmetric_shock() {
            return Err(Error::NotSymmetricShock);
        }
        let (a, b) = (params.a2, params.b2);
        if a < b {
            return Err(Error::WrongRegime("genus-1 xi=0 form requires A >= B"));
        }
        let alpha0 = (a * a - b * b).sqrt();
        let surface = SurfaceSpec::from_upper_points(&[params.e(1), params.e(2)]);
        let (real_zeros, pair_zeros) = if alpha0 > 1e-12 {
            (vec![0.0], vec![c64(0.0, alpha0)])
        } else {
            (vec![0.0, 0.0, 0.0], vec![])
        };
        Ok(GPrimeSpec::new(0.0, surface, real_zeros, pair_zeros, 0.0))
    }

    /// Genus-1 small-xi spec with three real zeros over the two E-cuts.
    pub fn genus1_smallxi(params: &ProblemParams, xi: f64, mus: [f64; 3]) -> Self {
        let surface = SurfaceSpec::from_upper_points(&[params.e(1), params.e(2)]);
        GPrimeSpec::new(xi, surface, mus.to_vec(), vec![], 0.0)
    }

    /// Genus-1 elliptic spec (rarefaction/scenario-5 form) over Sigma_2 and
    /// the beta pair cut.
    pub fn genus1_elliptic(params: &ProblemParams, xi: f64, mu: f64, beta: C64) -> Self {
        let surface = SurfaceSpec::from_upper_points(&[params.e(2), beta]);
        GPrimeSpec::new(xi, surface, vec![mu], vec![beta], 0.0)
    }

    /// Genus-2 spec over Sigma_1, Sigma_2 and the alpha pair cut.
    pub fn genus2(params: &ProblemParams, xi: f64, mu1: f64, mu2: f64, alpha: C64) -> Self {
        let surface =
            SurfaceSpec::from_upper_points(&[params.e(1), params.e(2), alpha]);
        GPrimeSpec::new(xi, surface, vec![mu1, mu2], vec![alpha], 0.0)
    }

    /// Genus-3 spec over Sigma_1, Sigma_2 and the mirrored [alpha, beta] cuts.
    pub fn genus3(params: &ProblemParams, xi: f64, mu: f64, alpha: C64, beta: C64) -> Self {
        let surface = SurfaceSpec::genus3(params.e(1), params.e(2), alpha, beta);
        GPrimeSpec::new(xi, surface, vec![mu], vec![alpha, beta], 0.0)
    }

    /// Evaluate g'(k); errs on the cuts.
    pub fn eval(&self, k: C64) -> Result<C64> {
        if self.surface.on_cut(k).is_some() {
            return Err(Error::OnCutWithoutSide);
        }
        Ok(self.eval_unchecked(k))
    }

    /// Evaluate g'(k) without the on-cut guard (quadrature nodes are off-cut
    /// by construction).
    pub fn eval_unchecked(&self, k: C64) -> C64 {
        let mut num = c64(4.0, 0.0);
        for &r in &self.residual_roots {
            num *= k - r;
        }
        let mut den = c64(1.0, 0.0);
        for (cut, &cancel) in self.surface.cuts.iter().zip(&self.cancelled) {
            let s = super::sqrt_pair(cut.p, cut.q, k);
            if cancel {
                num *= s;
            } else {
                den *= s;
            }
        }
        num / den
    }

    /// Counterclockwise a-cycle period around cut `idx`.
    pub fn a_period(&self, idx: usize, tol: f64) -> Result<C64> {
        let cl = self.surface.clearance_around(idx);
        let path = self.surface.a_cycle(idx, cl);
        Ok(quad::integrate(|k| self.eval_unchecked(k), &path, tol)?.value)
    }

    /// Laurent data (c1, c0, cm1) of g' at infinity; for a valid spec these
    /// are (4, xi, 0).
    pub fn expansion_coeffs(&self, radius: f64) -> (C64, C64, C64) {
        laurent_top3(|k| self.eval_unchecked(k), radius)
    }

    /// Worst violation of the defining conditions: expansion coefficients at
    /// two radii plus all a-cycle periods.
    pub fn condition_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for r in [1e3, 1e4] {
            let (c1, c0, cm1) = self.expansion_coeffs(r);
            worst = worst.max((c1 - 4.0).norm());
            worst = worst.max((c0 - self.xi).norm());
            worst = worst.max(cm1.norm());
        }
        for idx in 0..self.surface.cuts.len() {
            worst = worst.max(self.a_period(idx, 1e-10)?.norm());
        }
        Ok(worst)
    }
}

/// The two real zeros of the genus-0 plane-wave g' for side `j`:
/// mu_{1,2} = B_j/2 - xi/8 -+ sqrt((xi + 4 B_j)^2 - 32 A_j^2)/8.
pub fn genus0_zeros(params: &ProblemParams, xi: f64, j: usize) -> Result<(f64, f64)> {
    let (a, b) = (params.amp(j), params.wavenumber(j));
    let disc = (xi + 4.0 * b) * (xi + 4.0 * b) - 32.0 * a * a;
    if disc < 0.0 {
        return Err(Error::WrongRegime(
            "genus-0 zeros are complex: xi is inside the merged band",
        ));
    }
    let s = disc.sqrt() / 8.0;
    let c = b / 2.0 - xi / 8.0;
    Ok((c - s, c + s))
}

/// Leading Laurent coefficients (c1, c0, c-1) of f(k) = c1 k + c0 + c-1/k + ...
/// from an 8-point DFT on the circle |k| = radius; contamination from deeper
/// coefficients is O(radius^-8).
///
/// Two passes: the first estimates the linear part, the second extracts the
/// small bins from f minus that part so the O(radius) terms cannot swamp the
/// O(1/radius) coefficient in floating point.
pub fn laurent_top3<F: Fn(C64) -> C64>(f: F, radius: f64) -> (C64, C64, C64) {
    const N: usize = 8;
    let nodes: Vec<C64> = (0..N)
        .map(|j| C64::from_polar(radius, std::f64::consts::TAU * j as f64 / N as f64))
        .collect();
    let vals: Vec<C64> = nodes.iter().map(|&k| f(k)).collect();
    let bin = |vals: &[C64], m: i32| -> C64 {
        let mut s = c64(0.0, 0.0);
        for (j, v) in vals.iter().enumerate() {
            let ang = -std::f64::consts::TAU * m as f64 * j as f64 / N as f64;
            s += v * C64::from_polar(1.0, ang);
        }
        s / N as f64
    };
    let c1a = bin(&vals, 1) / radius;
    let c0a = bin(&vals, 0);
    let reduced: Vec<C64> = nodes
        .iter()
        .zip(&vals)
        .map(|(&k, &v)| v - c1a * k - c0a)
        .collect();
    let c1 = c1a + bin(&reduced, 1) / radius;
    let c0 = c0a + bin(&reduced, 0);
    let cm1 = bin(&reduced, -1) * radius;
    (c1, c0, cm1)
}
