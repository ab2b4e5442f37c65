use super::periods::{periods_matrix, PeriodMatrices};
use crate::error::Error;
use crate::quad::{integrate, lu_solve};
use crate::spectral::ProblemParams;
use crate::surfaces::{sqrt_pair, xi_e1_closed_form, Cut, GPrimeSpec, SurfaceSpec};
use crate::{c64, Result, C64};
use serde::Serialize;

/// Minimum allowed distance from alpha to a branch point E_j; below this the
/// log-degeneration makes the cycle quadrature unreliable.
const MIN_E_DIST: f64 = 1e-6;

/// Unknown vector (xi, alpha) of the genus-2 condition system with derived
/// quantities. The two real zeros mu1 < mu2 are determined by alpha and xi
/// through the closed-form expansion conditions.
#[derive(Debug, Clone, Copy)]
pub struct ParamStateG2 {
    pub params: ProblemParams,
    pub xi: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl ParamStateG2 {
    pub fn new(params: ProblemParams, xi: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        let st = ParamStateG2 {
            params,
            xi,
            alpha1,
            alpha2,
        };
        st.check_domain()?;
        Ok(st)
    }

    /// Constructor without the branch-point proximity refusal; quadrature
    /// accuracy degrades below 1e-6. Used by the boundary-map test utility.
    fn new_near_boundary(
        params: ProblemParams,
        xi: f64,
        alpha1: f64,
        alpha2: f64,
    ) -> Result<Self> {
        let st = ParamStateG2 {
            params,
            xi,
            alpha1,
            alpha2,
        };
        if !params.is_symmetric_shock() {
            return Err(Error::NotSymmetricShock);
        }
        if st.alpha2 <= 0.0 || st.mu_discriminant() <= 0.0 {
            return Err(Error::WrongRegime("state outside the solver domain"));
        }
        Ok(st)
    }

    pub fn alpha(&self) -> C64 {
        c64(self.alpha1, self.alpha2)
    }

    fn ab(&self) -> (f64, f64) {
        (self.params.a2, self.params.b2)
    }

    pub fn check_domain(&self) -> Result<()> {
        if !self.params.is_symmetric_shock() {
            return Err(Error::NotSymmetricShock);
        }
        if self.alpha2 <= 0.0 {
            return Err(Error::WrongRegime("alpha must lie in the upper half-plane"));
        }
        for j in [1, 2] {
            if (self.alpha() - self.params.e(j)).norm() < MIN_E_DIST * (1.0 - 1e-9) {
                return Err(Error::DomainTooClose {
                    min_dist: MIN_E_DIST,
                });
            }
        }
        if self.mu_discriminant() <= 0.0 {
            return Err(Error::WrongRegime("mu discriminant must be positive"));
        }
        Ok(())
    }

    /// Discriminant under the square root of the mu formulas.
    pub fn mu_discriminant(&self) -> f64 {
        mu_discriminant(&self.params, self.xi, self.alpha1, self.alpha2 * self.alpha2)
    }

    /// mu1 < mu2 expressed through xi and alpha.
    pub fn mus(&self) -> Result<(f64, f64)> {
        let d = self.mu_discriminant();
        if d <= 0.0 {
            return Err(Error::WrongRegime("mu discriminant must be positive"));
        }
        let s = d.sqrt();
        let base = -4.0 * self.alpha1 - self.xi;
        Ok(((base - s) / 8.0, (base + s) / 8.0))
    }

    pub fn surface(&self) -> SurfaceSpec {
        SurfaceSpec::from_upper_points(&[self.params.e(1), self.params.e(2), self.alpha()])
    }

    /// The g' spec carried by this state.
    pub fn gprime_spec(&self) -> Result<GPrimeSpec> {
        let (m1, m2) = self.mus()?;
        Ok(GPrimeSpec::genus2(&self.params, self.xi, m1, m2, self.alpha()))
    }

    /// Matrix P of the alpha-derivative differentials.
    pub fn p_matrix(&self) -> [[f64; 2]; 2] {
        let (a, b) = self.ab();
        p_matrix(a, b, self.xi, self.alpha1, self.alpha2)
    }

    pub fn det_p(&self) -> f64 {
        let p = self.p_matrix();
        p[0][0] * p[1][1] - p[0][1] * p[1][0]
    }

    /// G vector of the xi-derivative decomposition.
    pub fn g_vector(&self) -> [f64; 2] {
        let (a1, a2) = (self.alpha1, self.alpha2);
        [a1 * (a1 * a1 + a2 * a2), a2 * a2 - a1 * a1]
    }

    pub fn periods(&self, tol: f64) -> Result<PeriodMatrices> {
        periods_matrix(&self.surface(), tol)
    }
}

fn mu_discriminant(params: &ProblemParams, xi: f64, alpha1: f64, v: f64) -> f64 {
    let (a, b) = (params.a2, params.b2);
    -48.0 * alpha1 * alpha1 - 8.0 * alpha1 * xi - 64.0 * a * a + 32.0 * v + 64.0 * b * b + xi * xi
}

fn p_matrix(a: f64, b: f64, xi: f64, a1: f64, a2: f64) -> [[f64; 2]; 2] {
    let (a2sq, asq, bsq) = (a2 * a2, a * a, b * b);
    let p11 = 12.0 * a1 * a1 * a1 + 2.0 * a1 * a1 * xi + 6.0 * a1 * a2sq + 4.0 * a1 * asq
        + a2sq * xi
        - 4.0 * a1 * bsq;
    let p21 = -12.0 * a1 * a1 - 2.0 * a1 * xi - 4.0 * asq + 6.0 * a2sq + 4.0 * bsq;
    let p12 = a2 * (a1 * xi + 4.0 * asq - 6.0 * a2sq - 4.0 * bsq);
    let p22 = a2 * (12.0 * a1 + xi);
    [[p11, p12], [p21, p22]]
}

/// dg/dk in the symmetric-product form valid for any sign of the mu
/// discriminant and of v = alpha2^2:
/// 4 (k^2 - s1 k + s2) S_alpha(k) / (S_1(k) S_2(k)).
struct SmoothDg {
    e1: C64,
    e2: C64,
    s1: f64,
    s2: f64,
    ap: C64,
    aq: C64,
}

impl SmoothDg {
    fn new(params: &ProblemParams, xi: f64, alpha1: f64, v: f64) -> Self {
        let d = mu_discriminant(params, xi, alpha1, v);
        let base = 4.0 * alpha1 + xi;
        let s1 = -base / 4.0;
        let s2 = (base * base - d) / 64.0;
        // Pair (alpha, conj alpha) for v >= 0 degenerates to a real pair for
        // v < 0; both are roots of (k - alpha1)^2 + v.
        let root = c64(v, 0.0).sqrt();
        let ap = alpha1 + c64(0.0, 1.0) * root;
        let aq = alpha1 - c64(0.0, 1.0) * root;
        SmoothDg {
            e1: params.e(1),
            e2: params.e(2),
            s1,
            s2,
            ap,
            aq,
        }
    }

    fn alpha_cut(&self) -> Cut {
        Cut {
            p: self.aq,
            q: self.ap,
        }
    }

    fn eval(&self, k: C64) -> C64 {
        let num = 4.0 * (k * k - self.s1 * k + self.s2) * sqrt_pair(self.ap, self.aq, k);
        let den =
            sqrt_pair(self.e1, self.e1.conj(), k) * sqrt_pair(self.e2, self.e2.conj(), k);
        num / den
    }
}

/// Cycle geometry shared by the F, Jacobian and ODE integrals: rectangles
/// around Sigma_1 and Sigma_2 kept clear of the alpha cut.
fn cycle_paths(
    params: &ProblemParams,
    alpha_cut: &Cut,
) -> Result<[crate::quad::Path; 2]> {
    let cuts = [
        Cut::conjugate_pair(params.e(1)),
        Cut::conjugate_pair(params.e(2)),
    ];
    let mut paths = Vec::with_capacity(2);
    for j in 0..2 {
        let other = &cuts[1 - j];
        let gap = cuts[j].dist_to_cut(other).min(cuts[j].dist_to_cut(alpha_cut));
        let cl = gap.min(1.0) / 4.0;
        if cl < 1e-9 {
            return Err(Error::DomainTooClose { min_dist: 1e-6 });
        }
        let surface = SurfaceSpec {
            cuts: vec![cuts[j], *other, *alpha_cut],
        };
        let path = surface.a_cycle(0, cl);
        surface.check_path_clearance(&path, cl)?;
        paths.push(path);
    }
    Ok([paths[0].clone(), paths[1].clone()])
}

/// F in the smooth coordinates (alpha1, v = alpha2^2); analytic across both
/// the mu-merge (discriminant 0) and the alpha-real-axis (v = 0) boundaries.
fn f_smooth(
    params: &ProblemParams,
    xi: f64,
    alpha1: f64,
    v: f64,
    tol: f64,
) -> Result<([f64; 2], f64)> {
    let dg = SmoothDg::new(params, xi, alpha1, v);
    let paths = cycle_paths(params, &dg.alpha_cut())?;
    let mut out = [0.0f64; 2];
    let mut imres = 0.0f64;
    for j in 0..2 {
        let val = integrate(|k| dg.eval(k), &paths[j], tol)?.value;
        // F_j = (1/i) oint dg is real by Schwarz symmetry.
        out[j] = val.im;
        imres = imres.max(val.re.abs());
    }
    Ok((out, imres))
}

/// F(state) = (1/i) (oint_{a1} dg, oint_{a2} dg); both components are real,
/// the imaginary residue is returned alongside.
pub fn f_eval(state: &ParamStateG2, tol: f64) -> Result<([f64; 2], f64)> {
    state.check_domain()?;
    f_smooth(
        &state.params,
        state.xi,
        state.alpha1,
        state.alpha2 * state.alpha2,
        tol,
    )
}

/// Exact Jacobian D_alpha F = Re[-i * raw * P] with raw the a-cycle period
/// matrix of k^l / w.
pub fn jacobian_alpha(state: &ParamStateG2, tol: f64) -> Result<[[f64; 2]; 2]> {
    state.check_domain()?;
    let pm = state.periods(tol)?;
    let p = state.p_matrix();
    let mut j = [[0.0f64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let z = pm.raw[r][0] * p[0][c] + pm.raw[r][1] * p[1][c];
            // -i z: real part is Im z.
            j[r][c] = z.im;
        }
    }
    Ok(j)
}

/// Right-hand side of the continuation ODE
/// d(alpha)/d(xi) = -P^{-1} G - P^{-1} A (oint_{a_j} k^2 (k - alpha1)/w dk)_j.
pub fn ode_rhs(state: &ParamStateG2, tol: f64) -> Result<[f64; 2]> {
    state.check_domain()?;
    let pm = state.periods(tol)?;
    let p = state.p_matrix();
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if det.abs() < 1e-12 {
        return Err(Error::SingularP);
    }
    let surface = state.surface();
    let a1 = state.alpha1;
    let mut v = [c64(0.0, 0.0); 2];
    for j in 0..2 {
        let cl = surface.clearance_around(j);
        let path = surface.a_cycle(j, cl);
        v[j] = integrate(
            |k| k * k * (k - a1) / surface.w_unchecked(k),
            &path,
            tol,
        )?
        .value;
    }
    let g = state.g_vector();
    let mut rhs_vec = [0.0f64; 2];
    for r in 0..2 {
        let av = pm.inverse[r][0] * v[0] + pm.inverse[r][1] * v[1];
        rhs_vec[r] = g[r] + av.re;
    }
    let sol = lu_solve(
        &vec![p[0].to_vec(), p[1].to_vec()],
        &[-rhs_vec[0], -rhs_vec[1]],
    )?;
    Ok([sol[0], sol[1]])
}

/// Newton-correct alpha at fixed xi using the exact Jacobian.
fn correct_alpha(
    params: &ProblemParams,
    xi: f64,
    mut alpha: C64,
    tol: f64,
    max_iter: usize,
    quad_tol: f64,
) -> Result<(C64, f64)> {
    let mut res;
    for _ in 0..max_iter {
        let state = ParamStateG2::new(*params, xi, alpha.re, alpha.im)?;
        let (f, _) = f_eval(&state, quad_tol)?;
        res = f[0].abs().max(f[1].abs());
        if res <= tol {
            return Ok((alpha, res));
        }
        let j = jacobian_alpha(&state, quad_tol)?;
        let dx = lu_solve(&vec![j[0].to_vec(), j[1].to_vec()], &[-f[0], -f[1]])?;
        let mut lambda = 1.0f64;
        loop {
            let trial = alpha + c64(lambda * dx[0], lambda * dx[1]);
            let ok = ParamStateG2::new(*params, xi, trial.re, trial.im)
                .and_then(|s| f_eval(&s, quad_tol));
            match ok {
                Ok((ft, _)) => {
                    let rt = ft[0].abs().max(ft[1].abs());
                    if rt < res || lambda < 1.0 / 256.0 {
                        alpha = trial;
                        break;
                    }
                }
                Err(_) if lambda >= 1.0 / 256.0 => {}
                Err(e) => return Err(e),
            }
            lambda *= 0.5;
        }
    }
    let state = ParamStateG2::new(*params, xi, alpha.re, alpha.im)?;
    let (f, _) = f_eval(&state, quad_tol)?;
    res = f[0].abs().max(f[1].abs());
    if res <= tol {
        Ok((alpha, res))
    } else {
        Err(Error::NewtonFailure { tol, residual: res })
    }
}

/// Expansion constant c1 of the boundary curve alpha(xi) at xi_E1:
/// c1 = 2 B E1 / (A^2 + 4iAB - 3B^2 - B|E2|).
pub fn c1_constant(params: &ProblemParams) -> Result<C64> {
    if !params.is_symmetric_shock() {
        return Err(Error::NotSymmetricShock);
    }
    let (a, b) = (params.a2, params.b2);
    let e1 = params.e(1);
    let den = c64(a * a - 3.0 * b * b - b * params.e(2).norm(), 4.0 * a * b);
    Ok(2.0 * b * e1 / den)
}

/// Start the genus-2 branch at xi = xi_E1 - delta: predictor
/// alpha = E1 + c1 delta / |ln delta|, then Newton correction at fixed xi.
pub fn genus2_start(params: &ProblemParams, delta: f64) -> Result<ParamStateG2> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::WrongRegime("delta must lie in (0, 1)"));
    }
    let xi_e1 = xi_e1_closed_form(params)?;
    let ratio = params.a2 / params.b2;
    if ratio >= 2.0 / 7.0 * (2.0 + 3.0 * std::f64::consts::SQRT_2) {
        return Err(Error::WrongRegime(
            "genus-2 start requires A/B < 2/7 (2 + 3 sqrt 2)",
        ));
    }
    let c1 = c1_constant(params)?;
    let predictor = params.e(1) + c1 * delta / delta.ln().abs();
    let xi = xi_e1 - delta;
    let (alpha, _res) = correct_alpha(params, xi, predictor, 1e-10, 30, 1e-12)
        .map_err(|e| match e {
            Error::NewtonFailure { tol, residual } => Error::NewtonFailure { tol, residual },
            other => other,
        })?;
    ParamStateG2::new(*params, xi, alpha.re, alpha.im)
}

/// One accepted sample along the traced genus-2 curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceSample {
    pub xi: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub det_p: f64,
    pub residual: f64,
}

/// Why the trace stopped, with the terminal xi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum Termination {
    MuMerge { xi_m: f64 },
    AlphaRealAxis { xi_m: f64 },
    AlphaHitsE { xi_m: f64, branch_point: usize },
    ReachedXiMin { xi_m: f64 },
    CorrectorDivergence { xi_m: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceResult {
    pub samples: Vec<TraceSample>,
    pub termination: Termination,
    /// Cycle-basis note recorded in serialized outputs.
    pub cycle_basis: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct TraceOptions {
    pub delta_start: f64,
    pub h_init: f64,
    pub h_min: f64,
    pub xi_floor: f64,
    pub newton_tol: f64,
    pub quad_tol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            delta_start: 1e-3,
            h_init: 0.02,
            h_min: 1e-6,
            xi_floor: -1.0,
            newton_tol: 1e-10,
            quad_tol: 1e-12,
        }
    }
}

/// Detection thresholds from the continuation contract.
const ALPHA_AXIS_TOL: f64 = 1e-5;
const MU_GAP_TOL: f64 = 1e-5;
const HITS_E_TOL: f64 = 1e-4;
/// Entering the endgame when either degeneracy measure shrinks below this.
const WATCH: f64 = 0.05;

/// Trace the genus-2 parameter curve from xi_E1 - delta downward: RK4
/// predictor on the continuation ODE, Newton corrector at frozen xi, step
/// halving on corrector failure, and endgame continuation in the smooth
/// coordinates (alpha1, alpha2^2) for event location.
pub fn trace_genus2(params: &ProblemParams, opts: &TraceOptions) -> Result<TraceResult> {
    let start = genus2_start(params, opts.delta_start)?;
    let mut samples = Vec::new();
    let push = |samples: &mut Vec<TraceSample>, st: &ParamStateG2, res: f64| {
        if let Ok((m1, m2)) = st.mus() {
            samples.push(TraceSample {
                xi: st.xi,
                alpha1: st.alpha1,
                alpha2: st.alpha2,
                mu1: m1,
                mu2: m2,
                det_p: st.det_p(),
                residual: res,
            });
        }
    };
    let (f0v, _) = f_eval(&start, opts.quad_tol)?;
    push(&mut samples, &start, f0v[0].abs().max(f0v[1].abs()));

    let mut state = start;
    let mut h = opts.h_init;
    let cycle_basis =
        "a1: rectangle around [conj E1, E1]; a2: rectangle around [conj E2, E2]; counterclockwise";

    loop {
        // Hard event thresholds on the current state.
        let (m1, m2) = state.mus()?;
        if state.alpha2 < ALPHA_AXIS_TOL {
            return Ok(TraceResult {
                samples,
                termination: Termination::AlphaRealAxis { xi_m: state.xi },
                cycle_basis,
            });
        }
        if m2 - m1 < MU_GAP_TOL {
            return Ok(TraceResult {
                samples,
                termination: Termination::MuMerge { xi_m: state.xi },
                cycle_basis,
            });
        }
        for j in [1usize, 2] {
            if (state.alpha() - state.params.e(j)).norm() < HITS_E_TOL && state.xi < xi_e1_closed_form(params)? - 10.0 * opts.delta_start
            {
                return Ok(TraceResult {
                    samples,
                    termination: Termination::AlphaHitsE {
                        xi_m: state.xi,
                        branch_point: j,
                    },
                    cycle_basis,
                });
            }
        }
        if state.xi <= opts.xi_floor {
            return Ok(TraceResult {
                samples,
                termination: Termination::ReachedXiMin { xi_m: state.xi },
                cycle_basis,
            });
        }
        // Endgame once a degeneracy measure is small.
        if state.alpha2 < WATCH || (m2 - m1) < WATCH {
            let term = endgame(params, &state, &mut samples, opts)?;
            return Ok(TraceResult {
                samples,
                termination: term,
                cycle_basis,
            });
        }

        // RK4 predictor in decreasing xi.
        let rhs = |xi: f64, y: &[f64]| -> Result<Vec<f64>> {
            let st = ParamStateG2::new(*params, xi, y[0], y[1])?;
            let r = ode_rhs(&st, opts.quad_tol.max(1e-11))?;
            Ok(vec![r[0], r[1]])
        };
        let predicted = crate::quad::ode_step_rk4(
            &rhs,
            &[state.alpha1, state.alpha2],
            state.xi,
            -h,
        );
        let xi_new = state.xi - h;
        let corrected = predicted.and_then(|y| {
            correct_alpha(params, xi_new, c64(y[0], y[1]), opts.newton_tol, 12, opts.quad_tol)
        });
        match corrected {
            Ok((alpha, res)) => {
                state = ParamStateG2::new(*params, xi_new, alpha.re, alpha.im)?;
                push(&mut samples, &state, res);
            }
            Err(_) if h > opts.h_min => {
                h *= 0.5;
            }
            Err(_) => {
                let term = endgame(params, &state, &mut samples, opts)?;
                return Ok(TraceResult {
                    samples,
                    termination: term,
                    cycle_basis,
                });
            }
        }
    }
}

/// Newton solve of F = 0 in the smooth coordinates (alpha1, v) at fixed xi,
/// with finite-difference Jacobian. Valid across v = 0 and the mu merge.
fn solve_smooth(
    params: &ProblemParams,
    xi: f64,
    seed: [f64; 2],
    tol: f64,
    quad_tol: f64,
) -> Result<([f64; 2], f64)> {
    let f = |y: &[f64]| -> Result<Vec<f64>> {
        let (v, _) = f_smooth(params, xi, y[0], y[1], quad_tol)?;
        Ok(vec![v[0], v[1]])
    };
    let jac = |y: &[f64]| -> Result<Vec<Vec<f64>>> {
        let h = 1e-7;
        let mut m = vec![vec![0.0; 2]; 2];
        for c in 0..2 {
            let mut yp = [y[0], y[1]];
            let mut ym = [y[0], y[1]];
            yp[c] += h;
            ym[c] -= h;
            let (fp, _) = f_smooth(params, xi, yp[0], yp[1], quad_tol)?;
            let (fm, _) = f_smooth(params, xi, ym[0], ym[1], quad_tol)?;
            for r in 0..2 {
                m[r][c] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        Ok(m)
    };
    let (y, rep) = crate::quad::newton_solve(f, jac, &seed, tol, 25)?;
    Ok(([y[0], y[1]], rep.residual))
}

/// Endgame near a terminal event: continue in (alpha1, v = alpha2^2), where
/// F is analytic through both v = 0 and the mu merge, then bisect xi to the
/// zero crossing of whichever degeneracy measure hits first.
fn endgame(
    params: &ProblemParams,
    last: &ParamStateG2,
    samples: &mut Vec<TraceSample>,
    opts: &TraceOptions,
) -> Result<Termination> {
    let quad_tol = opts.quad_tol.max(1e-12);
    let dsc = |xi: f64, y: [f64; 2]| mu_discriminant(params, xi, y[0], y[1]);
    let mut xi = last.xi;
    let mut y = [last.alpha1, last.alpha2 * last.alpha2];
    let mut h = (opts.h_init).min(0.01);
    let mut prev: Option<(f64, [f64; 2])> = None;

    let record = |samples: &mut Vec<TraceSample>, xi: f64, y: [f64; 2], res: f64| {
        if y[1] > 0.0 {
            if let Ok(st) = ParamStateG2::new(*params, xi, y[0], y[1].sqrt()) {
                if let Ok((m1, m2)) = st.mus() {
                    samples.push(TraceSample {
                        xi,
                        alpha1: st.alpha1,
                        alpha2: st.alpha2,
                        mu1: m1,
                        mu2: m2,
                        det_p: st.det_p(),
                        residual: res,
                    });
                }
            }
        }
    };

    // Bisect xi between a good state (measure > 0) and a crossed state.
    let bisect = |mut lo: (f64, [f64; 2]),
                  mut hi: (f64, [f64; 2]),
                  pick: &dyn Fn(f64, [f64; 2]) -> f64|
     -> Result<(f64, [f64; 2])> {
        // lo.0 > hi.0; measure positive at lo, non-positive at hi.
        for _ in 0..80 {
            let mid_xi = 0.5 * (lo.0 + hi.0);
            let seed = [
                0.5 * (lo.1[0] + hi.1[0]),
                0.5 * (lo.1[1] + hi.1[1]),
            ];
            let (ym, _res) = solve_smooth(params, mid_xi, seed, opts.newton_tol, quad_tol)?;
            let m = pick(mid_xi, ym);
            if m.abs() < 1e-10 {
                return Ok((mid_xi, ym));
            }
            if m > 0.0 {
                lo = (mid_xi, ym);
            } else {
                hi = (mid_xi, ym);
            }
            if (lo.0 - hi.0).abs() < 1e-13 {
                break;
            }
        }
        Ok(lo)
    };

    loop {
        let v = y[1];
        let d = dsc(xi, y);
        let alpha2_now = v.max(0.0).sqrt();
        let gap_now = d.max(0.0).sqrt() / 4.0;
        if alpha2_now < ALPHA_AXIS_TOL && (v <= gap_now * gap_now * 16.0 || gap_now >= ALPHA_AXIS_TOL) {
            return Ok(Termination::AlphaRealAxis { xi_m: xi });
        }
        if gap_now < MU_GAP_TOL {
            return Ok(Termination::MuMerge { xi_m: xi });
        }
        if xi <= opts.xi_floor {
            return Ok(Termination::ReachedXiMin { xi_m: xi });
        }
        // Near the origin both measures can vanish together (the merge-at-
        // origin scenario, |alpha| ~ xi^{2/5}); classify as the alpha pair
        // reaching the axis once xi is negligible.
        if xi < 1e-4 && v < WATCH * WATCH && alpha2_now <= 4.0 * gap_now.max(1e-12) {
            return Ok(Termination::AlphaRealAxis { xi_m: xi });
        }
        // While a degeneracy measure is pending near the origin, approach
        // xi = 0 geometrically instead of stepping across it (the symmetric
        // continuation would re-enter the mirror branch unnoticed).
        let h_eff = if xi > 0.0 && (v < WATCH * WATCH || d < 16.0 * WATCH * WATCH) {
            h.min((xi / 2.0).max(1e-6))
        } else {
            h
        };
        let xi_new = (xi - h_eff).max(opts.xi_floor - 1e-12);
        let seed = match prev {
            Some((xp, yp)) if (xi - xp).abs() > 1e-15 => {
                let t = (xi_new - xi) / (xi - xp);
                [y[0] + t * (y[0] - yp[0]), y[1] + t * (y[1] - yp[1])]
            }
            _ => y,
        };
        match solve_smooth(params, xi_new, seed, opts.newton_tol, quad_tol) {
            Ok((ynew, res_new)) => {
                let vnew = ynew[1];
                let dnew = dsc(xi_new, ynew);
                if vnew <= 0.0 {
                    let (xr, yr) = bisect((xi, y), (xi_new, ynew), &|_, yy| yy[1])?;
                    record(samples, xr, yr, opts.newton_tol);
                    return Ok(Termination::AlphaRealAxis { xi_m: xr });
                }
                if dnew <= 0.0 {
                    let (xr, yr) = bisect((xi, y), (xi_new, ynew), &dsc)?;
                    record(samples, xr, yr, opts.newton_tol);
                    return Ok(Termination::MuMerge { xi_m: xr });
                }
                // Avoid overshooting a fast-shrinking measure.
                if vnew < 0.3 * v || dnew < 0.3 * d {
                    h *= 0.5;
                }
                record(samples, xi_new, ynew, res_new);
                prev = Some((xi, y));
                xi = xi_new;
                y = ynew;
            }
            Err(_) => {
                h *= 0.5;
                if h < 1e-9 {
                    let alpha2_now = y[1].max(0.0).sqrt();
                    let gap_now = dsc(xi, y).max(0.0).sqrt() / 4.0;
                    return Ok(if alpha2_now <= gap_now {
                        Termination::AlphaRealAxis { xi_m: xi }
                    } else {
                        Termination::MuMerge { xi_m: xi }
                    });
                }
            }
        }
    }
}

/// The regularizing map phi(alpha) = E1 + (alpha - E1)/|ln|alpha - E1||.
/// Test utility validating the boundary analysis at xi_E1; not used by the
/// runtime continuation.
pub fn regularizing_map(params: &ProblemParams, alpha: C64) -> C64 {
    let e1 = params.e(1);
    let r = (alpha - e1).norm();
    if r == 0.0 {
        return e1;
    }
    e1 + (alpha - e1) / r.ln().abs()
}

/// The modified boundary map F~(xi, alpha) = (F1(xi, phi(alpha)),
/// F2(xi, phi(alpha)) |ln|alpha - E1||). Test utility.
pub fn f_tilde(params: &ProblemParams, xi: f64, alpha: C64, quad_tol: f64) -> Result<[f64; 2]> {
    let e1 = params.e(1);
    let scale = (alpha - e1).norm().ln().abs();
    let mapped = regularizing_map(params, alpha);
    let st = ParamStateG2::new_near_boundary(*params, xi, mapped.re, mapped.im)?;
    let (f, _) = f_smooth(
        &st.params,
        st.xi,
        st.alpha1,
        st.alpha2 * st.alpha2,
        quad_tol,
    )?;
    Ok([f[0], f[1] * scale])
}

/// Boundary data of the map F at alpha = E1:
/// f0(xi) = -8 sqrt(B) Im(sqrt(E2)) (xi - xi_E1).
pub fn f0_boundary(params: &ProblemParams, xi: f64) -> Result<f64> {
    let b = params.b2;
    let xi_e1 = xi_e1_closed_form(params)?;
    Ok(-8.0 * b.sqrt() * params.e(2).sqrt().im * (xi - xi_e1))
}

/// Q(xi) = -2i A^2 + A (xi - 12 B) + 2i B (4B - xi).
pub fn q_poly(params: &ProblemParams, xi: f64) -> C64 {
    let (a, b) = (params.a2, params.b2);
    c64(a * (xi - 12.0 * b), -2.0 * a * a + 2.0 * b * (4.0 * b - xi))
}

/// The linear coefficients (q1, q2) of D_alpha F2 at alpha = E1.
pub fn q12_boundary(params: &ProblemParams, xi: f64) -> (f64, f64) {
    let b = params.b2;
    let z = q_poly(params, xi) / (b.sqrt() * params.e(2).sqrt());
    (-std::f64::consts::PI * z.im, std::f64::consts::PI * z.re)
}

/// d00(xi) = -i conj(Q(xi)) / (sqrt(B) sqrt(conj E2)).
pub fn d00_boundary(params: &ProblemParams, xi: f64) -> C64 {
    let b = params.b2;
    c64(0.0, -1.0) * q_poly(params, xi).conj() / (b.sqrt() * params.e(2).conj().sqrt())
}
