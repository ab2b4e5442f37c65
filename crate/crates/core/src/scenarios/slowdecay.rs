use crate::error::Error;
use crate::quad::integrate_fn;
use crate::spectral::{CaseTag, CutSide, ProblemParams};
use crate::{c64, Result, C64};
use serde::Serialize;

/// Coefficients of the Zakharov-Manakov slow-decay asymptotics
/// q ~ c0 t^{-1/2} exp(i (c1 t + c2 log t + c3)).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlowDecayCoeffs {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    /// None when the reflection coefficient vanishes at the stationary point
    /// (arg r undefined).
    pub c3: Option<f64>,
    pub nu: f64,
    /// Imaginary part of chi~(-xi/4) (the quantity itself is purely
    /// imaginary; the real-part residue is below 1e-9).
    pub chi_tilde_im: f64,
}

fn log_one_plus_r2(params: &ProblemParams, s: f64) -> f64 {
    match params.reflection(s) {
        Ok((r, _)) => (1.0 + r.norm_sqr()).ln(),
        Err(_) => 0.0,
    }
}

/// Cauchy integral of f over the real ray (-inf, upper], split at the
/// interior discontinuity points `breaks` (the feet of the vertical cuts,
/// where |a| and hence f jump), with a window subtraction around the nearest
/// point when k is close to the ray.
fn cauchy_ray<F: Fn(f64) -> f64>(
    f: &F,
    upper: f64,
    breaks: &[f64],
    k: C64,
    tol: f64,
) -> Result<C64> {
    let split = upper - 1e3;
    // Tail via s = split - u/(1-u), u in (0,1).
    let mut total = integrate_fn(
        |u: C64| {
            let uu = u.re;
            let s = split - uu / (1.0 - uu);
            let ds = -1.0 / ((1.0 - uu) * (1.0 - uu));
            f(s) / (s - k) * ds
        },
        c64(1.0 - 1e-8, 0.0),
        c64(0.0, 0.0),
        tol,
    )?
    .value;
    // Piece boundaries: discontinuities of f inside (split, upper).
    let mut knots = vec![split];
    for &b in breaks {
        if b > split && b < upper {
            knots.push(b);
        }
    }
    knots.push(upper);
    knots.sort_by(f64::total_cmp);
    for w in knots.windows(2) {
        total += cauchy_piece(f, w[0], w[1], k, tol)?;
    }
    Ok(total)
}

/// Cauchy integral over one smooth piece [a, b] of the real axis.
fn cauchy_piece<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, k: C64, tol: f64) -> Result<C64> {
    let near = k.im.abs() < 0.1 && k.re > a - 0.1 && k.re < b + 0.1;
    if !near {
        return Ok(integrate_fn(
            |s: C64| c64(f(s.re), 0.0) / (s - k),
            c64(a, 0.0),
            c64(b, 0.0),
            tol,
        )?
        .value);
    }
    let s0 = k.re.clamp(a, b);
    let w = 0.5f64.min(b - a);
    let (wa, wb) = ((s0 - w).max(a), (s0 + w).min(b));
    let f0 = f(s0);
    let mut v = integrate_fn(
        |s: C64| c64(f(s.re) - f0, 0.0) / (s - k),
        c64(wa, 0.0),
        c64(wb, 0.0),
        tol,
    )?
    .value;
    v += f0 * ((wb - k) / (wa - k)).ln();
    if wa > a {
        v += cauchy_piece(f, a, wa, k, tol)?;
    }
    if wb < b {
        v += cauchy_piece(f, wb, b, k, tol)?;
    }
    Ok(v)
}

/// Cauchy integral of log(a_-/a_+) along Sigma_2 (both halves), with window
/// subtraction when k is near the segment. The integrand has integrable log
/// singularities at the branch points; the segment is clipped off them.
fn cauchy_sigma2(params: &ProblemParams, k: C64, tol: f64) -> Result<C64> {
    let e2 = params.e(2);
    let clip = 1e-9;
    // J_d = a_-/a_+ on the upper half; a_+*/a_-* = conj(1/J_upper(conj s))
    // on the lower half.
    let logj = |s: C64| -> C64 {
        let su = if s.im >= 0.0 { s } else { s.conj() };
        let (ap, _) = params.step_scattering_boundary(2, su, CutSide::Plus);
        let (am, _) = params.step_scattering_boundary(2, su, CutSide::Minus);
        let lu = (am / ap).ln();
        if s.im >= 0.0 {
            lu
        } else {
            -lu.conj()
        }
    };
    // Upper half B2 -> E2 and lower half conj(E2) -> B2, oriented upwards.
    let mut total = c64(0.0, 0.0);
    for (a, b) in [
        (e2.conj() + c64(0.0, clip), c64(e2.re, 0.0)),
        (c64(e2.re, 0.0), e2 - c64(0.0, clip)),
    ] {
        let seg = b - a;
        let len = seg.norm();
        let t_near = ((k - a) / seg).re.clamp(0.0, 1.0);
        let dist = (k - (a + seg * t_near)).norm();
        if dist < 0.1 * len {
            let w = (0.25f64).min(0.45 * len.min(1.0));
            let t0 = t_near.clamp(w / len, 1.0 - w / len);
            let s0 = a + seg * t0;
            let j0 = logj(s0);
            let (sa, sb) = (a + seg * (t0 - w / len), a + seg * (t0 + w / len));
            let mut v = integrate_fn(|s| (logj(s) - j0) / (s - k), sa, sb, tol)?.value;
            v += j0 * ((sb - k) / (sa - k)).ln();
            v += integrate_fn(|s| logj(s) / (s - k), a, sa, tol)?.value;
            v += integrate_fn(|s| logj(s) / (s - k), sb, b, tol)?.value;
            total += v;
        } else {
            total += integrate_fn(|s| logj(s) / (s - k), a, b, tol)?.value;
        }
    }
    Ok(total)
}

fn check_sector(params: &ProblemParams, xi: f64) -> Result<()> {
    if params.case_tag() != CaseTag::Rarefaction {
        return Err(Error::WrongRegime(
            "slow decay sector exists in the rarefaction case",
        ));
    }
    let (lo, hi) = (-4.0 * params.b1, -4.0 * params.b2);
    if !(xi > lo && xi < hi) {
        return Err(Error::OutsideSector { xi });
    }
    Ok(())
}

/// The scalar d-function d = d0 d1 d2 solving the diagonal jump problem on
/// Sigma_d = (-inf, -xi/4) u Sigma_2, normalized to 1 at infinity.
pub fn dfunction(params: &ProblemParams, xi: f64, k: C64) -> Result<C64> {
    check_sector(params, xi)?;
    let z0 = -xi / 4.0;
    if (k.im.abs() < 1e-9 && k.re <= z0) || (k.re - params.b2).abs() < 1e-9 && k.im.abs() <= params.a2 {
        return Err(Error::OnContour);
    }
    let tol = 1e-9;
    let f = |s: f64| log_one_plus_r2(params, s);
    let breaks = [params.b1, params.b2];
    let i_real = cauchy_ray(&f, z0, &breaks, k, tol)?;
    let i_sigma = cauchy_sigma2(params, k, tol)?;
    let two_pi_i = c64(0.0, 2.0 * std::f64::consts::PI);
    Ok(((i_real + i_sigma) / two_pi_i).exp())
}

/// nu(-xi/4) = -(1/2 pi) log(1 + |r(-xi/4)|^2).
pub fn nu_stationary(params: &ProblemParams, xi: f64) -> Result<f64> {
    let (r, _) = params.reflection(-xi / 4.0)?;
    Ok(-(1.0 + r.norm_sqr()).ln() / (2.0 * std::f64::consts::PI))
}

/// chi(-xi/4) = -(1/2 pi i) int_{-inf}^{-xi/4} ln(-xi/4 - s) d ln(1+|r(s)|^2)
/// as a Stieltjes integral: smooth density plus the jump atom at the foot
/// of Sigma_2 (where |a| and hence ln(1+|r|^2) jump). Purely imaginary.
fn chi_stationary(params: &ProblemParams, xi: f64) -> Result<C64> {
    let z0 = -xi / 4.0;
    let df = |s: f64| {
        let h = 1e-6;
        (log_one_plus_r2(params, s + h) - log_one_plus_r2(params, s - h)) / (2.0 * h)
    };
    let tol = 1e-9;
    // Tail.
    let split = z0 - 1e3;
    let tail = integrate_fn(
        |u: C64| {
            let uu = u.re;
            let s = split - uu / (1.0 - uu);
            let ds = -1.0 / ((1.0 - uu) * (1.0 - uu));
            c64((z0 - s).ln() * df(s) * ds, 0.0)
        },
        c64(1.0 - 1e-8, 0.0),
        c64(0.0, 0.0),
        tol,
    )?
    .value;
    // Smooth pieces between split, the cut feet, and z0.
    let mut knots = vec![split];
    let mut atoms = c64(0.0, 0.0);
    for b in [params.b1, params.b2] {
        if b > split && b < z0 {
            knots.push(b);
            let gap = 2e-7;
            let jump = log_one_plus_r2(params, b + gap) - log_one_plus_r2(params, b - gap);
            atoms += jump * (z0 - b).ln();
        }
    }
    knots.push(z0);
    knots.sort_by(f64::total_cmp);
    let mut main = c64(0.0, 0.0);
    for wnd in knots.windows(2) {
        let (a, b) = (wnd[0], wnd[1]);
        if (b - z0).abs() < 1e-14 {
            // Last piece carries the integrable log endpoint: freeze the
            // density there, where int ln(z0 - s) ds is closed-form.
            let w = (0.25f64).min(b - a);
            let aa = b - w;
            if aa > a {
                main += integrate_fn(
                    |s: C64| c64((z0 - s.re).ln() * df(s.re), 0.0),
                    c64(a, 0.0),
                    c64(aa, 0.0),
                    tol,
                )?
                .value;
            }
            let d0 = df(z0 - 1e-7);
            main += c64(d0 * (w * w.ln() - w), 0.0);
            main += integrate_fn(
                |s: C64| c64((z0 - s.re).ln() * (df(s.re) - d0), 0.0),
                c64(aa, 0.0),
                c64(z0 - 1e-9, 0.0),
                tol,
            )?
            .value;
        } else {
            main += integrate_fn(
                |s: C64| c64((z0 - s.re).ln() * df(s.re), 0.0),
                c64(a + 1e-9, 0.0),
                c64(b - 1e-9, 0.0),
                tol,
            )?
            .value;
        }
    }
    let total = tail + main + atoms;
    // chi = -(1/2 pi i) * (real integral): purely imaginary.
    Ok(-total / c64(0.0, 2.0 * std::f64::consts::PI))
}

/// chi~(-xi/4) = chi(-xi/4) + the Sigma_2 contribution of log(d1 d2).
pub fn chi_tilde(params: &ProblemParams, xi: f64) -> Result<C64> {
    check_sector(params, xi)?;
    let z0 = c64(-xi / 4.0, 0.0);
    let chi = chi_stationary(params, xi)?;
    let sig = cauchy_sigma2(params, z0, 1e-9)? / c64(0.0, 2.0 * std::f64::consts::PI);
    Ok(chi + sig)
}

/// Closed-form slow-decay coefficients on -4 B1 < xi < -4 B2.
pub fn slow_decay_coeffs(params: &ProblemParams, xi: f64) -> Result<SlowDecayCoeffs> {
    check_sector(params, xi)?;
    let z0 = -xi / 4.0;
    let (r, _) = params.reflection(z0)?;
    let l = (1.0 + r.norm_sqr()).ln();
    let nu = -l / (2.0 * std::f64::consts::PI);
    let c0 = (l / (4.0 * std::f64::consts::PI)).sqrt();
    let c1 = xi * xi / 4.0;
    let c2 = -nu;
    if r.norm() < 1e-13 {
        return Ok(SlowDecayCoeffs {
            c0,
            c1,
            c2,
            c3: None,
            nu,
            chi_tilde_im: 0.0,
        });
    }
    let ct = chi_tilde(params, xi)?;
    debug_assert!(ct.re.abs() < 1e-8, "chi~ should be purely imaginary");
    let arg_gamma = lngamma(c64(0.0, nu)).im;
    let c3 = -3.0 * 2.0f64.ln() * nu + std::f64::consts::FRAC_PI_4 + arg_gamma - r.arg()
        + 2.0 * ct.im;
    Ok(SlowDecayCoeffs {
        c0,
        c1,
        c2,
        c3: Some(c3),
        nu,
        chi_tilde_im: ct.im,
    })
}

/// Principal-branch log Gamma via the Lanczos approximation (g = 7, n = 9);
/// |error| < 1e-12 on the strip needed here.
pub fn lngamma(z: C64) -> C64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return c64(pi.ln(), 0.0) - (pi * z).sin().ln() - lngamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = c64(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rarefaction() -> ProblemParams {
        ProblemParams::new(1.0, 1.0, 1.0, -1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn lngamma_against_reflection_identity() {
        // |Gamma(i nu)|^2 = pi / (nu sinh(pi nu)).
        for nu in [0.05, 0.3, 1.0, 2.5] {
            let lg = lngamma(c64(0.0, nu));
            let m2 = (2.0 * lg.re).exp();
            let want = std::f64::consts::PI / (nu * (std::f64::consts::PI * nu).sinh());
            assert!((m2 - want).abs() < 1e-12 * want, "nu = {nu}");
        }
        // Gamma(4) = 6.
        assert!((lngamma(c64(4.0, 0.0)).re - 6.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn d_normalizes_to_one_at_infinity() {
        let p = rarefaction();
        let d = dfunction(&p, -2.0, c64(1e5, 1e4)).unwrap();
        assert!((d - 1.0).norm() < 1e-3, "d = {d}");
    }

    #[test]
    fn d_jump_on_real_ray() {
        // d+/d- = 1 + |r|^2 on (-inf, -xi/4).
        let p = rarefaction();
        let xi = -2.0;
        for s in [-1.2, -2.5, -5.0] {
            if s >= -xi / 4.0 {
                continue;
            }
            let eps = 1e-6;
            let dp = dfunction(&p, xi, c64(s, eps)).unwrap();
            let dm = dfunction(&p, xi, c64(s, -eps)).unwrap();
            let (r, _) = p.reflection(s).unwrap();
            let want = 1.0 + r.norm_sqr();
            let got = dp / dm;
            assert!(
                (got - want).norm() < 1e-5 * want.abs(),
                "s = {s}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn d_jump_on_sigma2() {
        // d+/d- = a-/a+ on Sigma_2 in C+ (the + side is the left).
        let p = rarefaction();
        let xi = -2.0;
        for t in [0.3, 0.6] {
            let k = c64(p.b2, t * p.a2);
            let eps = 1e-6;
            let dp = dfunction(&p, xi, k + c64(-eps, 0.0)).unwrap();
            let dm = dfunction(&p, xi, k + c64(eps, 0.0)).unwrap();
            let (ap, _) = p.step_scattering_boundary(2, k, CutSide::Plus);
            let (am, _) = p.step_scattering_boundary(2, k, CutSide::Minus);
            let want = am / ap;
            let got = dp / dm;
            assert!(
                (got - want).norm() < 1e-5 * want.norm(),
                "t = {t}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn coefficient_values_and_identity() {
        let p = rarefaction();
        let c = slow_decay_coeffs(&p, -2.0).unwrap();
        assert!((c.c1 - 1.0).abs() < 1e-15, "c1 = {}", c.c1);
        assert!(c.nu <= 0.0);
        // c0^2 = -nu/2.
        assert!((c.c0 * c.c0 + c.nu / 2.0).abs() < 1e-10);
        assert!(c.c3.is_some());
        assert!(matches!(slow_decay_coeffs(&p, 10.0), Err(Error::OutsideSector { .. })));
    }
}
