//! Branch functions, background solutions, and the explicit pure-step
//! scattering data and jump matrices of the basic RH problem.
//!
//! All evaluators are pure functions over an immutable [`ProblemParams`].

use crate::error::Error;
use crate::quad::Mat2;
use crate::{c64, Result, C64};
use serde::Serialize;

/// Which side of an upward-oriented vertical cut a boundary value is taken
/// from. `Plus` is the left side (Re k < B_j), `Minus` the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Plus,
    Minus,
}

/// Case tag determined by the sign of B1 - B2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    Rarefaction,
    Shock,
    Equal,
}

/// The six step parameters with derived branch points.
#[derive(Debug, Clone, Copy)]
pub struct ProblemParams {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl ProblemParams {
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if !(a1 > 0.0 && a2 > 0.0) {
            return Err(Error::NonPositiveAmplitude);
        }
        Ok(ProblemParams {
            a1,
            a2,
            b1,
            b2,
            phi1,
            phi2,
        })
    }

    /// Branch point E_j = B_j + i A_j.
    pub fn e(&self, j: usize) -> C64 {
        match j {
            1 => c64(self.b1, self.a1),
            2 => c64(self.b2, self.a2),
            _ => panic!("cut index must be 1 or 2"),
        }
    }

    pub fn amp(&self, j: usize) -> f64 {
        if j == 1 {
            self.a1
        } else {
            self.a2
        }
    }

    pub fn wavenumber(&self, j: usize) -> f64 {
        if j == 1 {
            self.b1
        } else {
            self.b2
        }
    }

    pub fn phase(&self, j: usize) -> f64 {
        if j == 1 {
            self.phi1
        } else {
            self.phi2
        }
    }

    /// omega_j = A_j^2 - 2 B_j^2.
    pub fn omega(&self, j: usize) -> f64 {
        let (a, b) = (self.amp(j), self.wavenumber(j));
        a * a - 2.0 * b * b
    }

    /// phi = phi1 - phi2.
    pub fn phi(&self) -> f64 {
        self.phi1 - self.phi2
    }

    pub fn case_tag(&self) -> CaseTag {
        if self.b1 > self.b2 {
            CaseTag::Rarefaction
        } else if self.b1 < self.b2 {
            CaseTag::Shock
        } else {
            CaseTag::Equal
        }
    }

    /// True for the symmetric shock normalization A1 = A2, B2 = -B1 > 0.
    pub fn is_symmetric_shock(&self) -> bool {
        self.case_tag() == CaseTag::Shock
            && (self.a1 - self.a2).abs() < 1e-12
            && (self.b1 + self.b2).abs() < 1e-12
            && self.b2 > 0.0
    }

    fn on_cut(&self, j: usize, k: C64) -> bool {
        let e = self.e(j);
        (k.re - e.re).abs() < 1e-14 && k.im.abs() <= e.im + 1e-14
    }

    fn offset(&self, side: CutSide) -> C64 {
        // Boundary values are limits from the prescribed side; the cuts are
        // vertical so the normal is horizontal. Plus = left of upward
        // orientation.
        match side {
            CutSide::Plus => c64(-1e-8, 0.0),
            CutSide::Minus => c64(1e-8, 0.0),
        }
    }

    /// nu_j(k) = ((k - E_j)/(k - conj E_j))^{1/4}, analytic off Sigma_j with
    /// nu_j -> 1 at infinity. The principal fourth root of the Moebius ratio
    /// puts the discontinuity exactly on the segment.
    pub fn nu(&self, j: usize, k: C64) -> Result<C64> {
        if self.on_cut(j, k) {
            return Err(Error::OnCutWithoutSide);
        }
        Ok(self.nu_unchecked(j, k))
    }

    fn nu_unchecked(&self, j: usize, k: C64) -> C64 {
        let e = self.e(j);
        let ratio = (k - e) / (k - e.conj());
        ratio.powf(0.25)
    }

    /// Boundary value of nu_j on Sigma_j from the given side, Richardson
    /// extrapolated from offsets delta and 2*delta.
    pub fn nu_boundary(&self, j: usize, k: C64, side: CutSide) -> C64 {
        let d = self.offset(side);
        2.0 * self.nu_unchecked(j, k + d) - self.nu_unchecked(j, k + 2.0 * d)
    }

    /// X_j(k) = sqrt((k - E_j)(k - conj E_j)), X_j ~ k - B_j at infinity.
    pub fn branch_x(&self, j: usize, k: C64) -> Result<C64> {
        if self.on_cut(j, k) {
            return Err(Error::OnCutWithoutSide);
        }
        let e = self.e(j);
        Ok(crate::surfaces::sqrt_pair(e, e.conj(), k))
    }

    /// Omega_j(k) = 2 (k + B_j) X_j(k), Omega_j ~ 2k^2 + omega_j at infinity.
    pub fn branch_omega(&self, j: usize, k: C64) -> Result<C64> {
        Ok(2.0 * (k + self.wavenumber(j)) * self.branch_x(j, k)?)
    }

    /// The matrix calE_j(k) built from nu_j.
    pub fn cal_e(&self, j: usize, k: C64) -> Result<Mat2> {
        let nu = self.nu(j, k)?;
        Ok(cal_e_from_nu(nu))
    }

    /// N_j(k) = e^{i phi_j sigma3 / 2} calE_j(k) e^{-i phi_j sigma3 / 2}.
    pub fn n_matrix(&self, j: usize, k: C64) -> Result<Mat2> {
        let e = self.cal_e(j, k)?;
        let ph = c64(0.0, self.phase(j)).exp();
        // Conjugation by e^{i phi/2 sigma3} multiplies the off-diagonal
        // entries by e^{+-i phi}.
        Ok([[e[0][0], e[0][1] * ph], [e[1][0] / ph, e[1][1]]])
    }

    /// Background solution Phi_0j(x,t,k)
    ///   = e^{(-i B_j x + i omega_j t) sigma3} N_j(k)
    ///     e^{(-i X_j(k) x - i Omega_j(k) t) sigma3}.
    pub fn background_phi0(&self, j: usize, x: f64, t: f64, k: C64) -> Result<Mat2> {
        let n = self.n_matrix(j, k)?;
        let left = c64(0.0, -self.wavenumber(j) * x + self.omega(j) * t).exp();
        let right = (c64(0.0, -x) * self.branch_x(j, k)? - c64(0.0, t) * self.branch_omega(j, k)?).exp();
        Ok([
            [n[0][0] * left * right, n[0][1] * left / right],
            [n[1][0] / left * right, n[1][1] / left / right],
        ])
    }

    /// Explicit pure-step spectral functions (a(k), b(k)).
    ///
    /// Valid off Sigma_1, Sigma_2 and away from the branch points; the cut
    /// structure of a and b is inherited from nu_1 and nu_2.
    pub fn step_scattering(&self, k: C64) -> Result<(C64, C64)> {
        for j in [1, 2] {
            if (k - self.e(j)).norm() < 1e-13 || (k - self.e(j).conj()).norm() < 1e-13 {
                return Err(Error::AtBranchPoint);
            }
        }
        if self.on_cut(1, k) || self.on_cut(2, k) {
            return Err(Error::OnCutWithoutSide);
        }
        let nu1 = self.nu_unchecked(1, k);
        let nu2 = self.nu_unchecked(2, k);
        Ok(self.scattering_from_nu(nu1, nu2))
    }

    fn scattering_from_nu(&self, nu1: C64, nu2: C64) -> (C64, C64) {
        let (p1, m1) = (nu1 + 1.0 / nu1, nu1 - 1.0 / nu1);
        let (p2, m2) = (nu2 + 1.0 / nu2, nu2 - 1.0 / nu2);
        let ephi = c64(0.0, self.phi()).exp();
        let a = 0.25 * (-m1 * m2 / ephi + p1 * p2);
        let b = 0.25
            * (c64(0.0, self.phi2).exp() * p1 * m2 - c64(0.0, self.phi1).exp() * m1 * p2);
        (a, b)
    }

    /// Boundary values (a, b) on Sigma_j from the given side.
    pub fn step_scattering_boundary(&self, j: usize, k: C64, side: CutSide) -> (C64, C64) {
        let d = self.offset(side);
        let f = |kk: C64| {
            self.scattering_from_nu(self.nu_unchecked(1, kk), self.nu_unchecked(2, kk))
        };
        let (a1v, b1v) = f(k + d);
        let (a2v, b2v) = f(k + 2.0 * d);
        let _ = j;
        (2.0 * a1v - a2v, 2.0 * b1v - b2v)
    }

    /// Schwarz conjugate a*(k) = conj(a(conj k)) via the closed form.
    pub fn step_scattering_star(&self, k: C64) -> Result<(C64, C64)> {
        let (a, b) = self.step_scattering(k.conj())?;
        Ok((a.conj(), b.conj()))
    }

    /// Reflection coefficients r = b*/a and r~ = b/a for real k.
    pub fn reflection(&self, k: f64) -> Result<(C64, C64)> {
        if (k - self.b1).abs() < 1e-12 || (k - self.b2).abs() < 1e-12 {
            return Err(Error::OnCutWithoutSide);
        }
        let (a, b) = self.step_scattering(c64(k, 0.0))?;
        if a.norm() < 1e-13 {
            return Err(Error::ZeroDenominator);
        }
        Ok((b.conj() / a, b / a))
    }

    /// Jump matrix J(x, t, k) = e^{-i(kx + 2k^2 t) sigma3} J0(k)
    /// e^{i(kx + 2k^2 t) sigma3} on the named contour part.
    pub fn jump_matrix(&self, x: f64, t: f64, k: C64, part: ContourPart) -> Result<Mat2> {
        let j0 = self.jump_j0(k, part)?;
        let ph = (c64(0.0, 1.0) * (k * x + 2.0 * k * k * t)).exp();
        // e^{-z sigma3} M e^{z sigma3} scales the off-diagonals by e^{-2z}, e^{2z}.
        Ok([
            [j0[0][0], j0[0][1] / (ph * ph)],
            [j0[1][0] * ph * ph, j0[1][1]],
        ])
    }

    /// The (x,t)-independent factor J0 on each contour part.
    pub fn jump_j0(&self, k: C64, part: ContourPart) -> Result<Mat2> {
        let one = c64(1.0, 0.0);
        let zero = c64(0.0, 0.0);
        match part {
            ContourPart::RealAxis => {
                let (r, _) = self.reflection(k.re)?;
                let rs = r.conj();
                Ok([[one + r * rs, rs], [r, one]])
            }
            ContourPart::Sigma1Plus => {
                let (ap, _) = self.step_scattering_boundary(1, k, CutSide::Plus);
                let (am, _) = self.step_scattering_boundary(1, k, CutSide::Minus);
                if (ap * am).norm() < 1e-13 {
                    return Err(Error::ZeroDenominator);
                }
                let c = c64(0.0, 1.0) * c64(0.0, -self.phi1).exp() / (ap * am);
                Ok([[one, zero], [c, one]])
            }
            ContourPart::Sigma2Plus => {
                let (ap, _) = self.step_scattering_boundary(2, k, CutSide::Plus);
                let (am, _) = self.step_scattering_boundary(2, k, CutSide::Minus);
                if ap.norm() < 1e-13 || am.norm() < 1e-13 {
                    return Err(Error::ZeroDenominator);
                }
                let c = c64(0.0, 1.0) * c64(0.0, self.phi2).exp();
                Ok([[am / ap, c], [zero, ap / am]])
            }
            ContourPart::Sigma1Minus => {
                let m = self.jump_j0(k.conj(), ContourPart::Sigma1Plus)?;
                Ok(sigma2_conj_star(&m))
            }
            ContourPart::Sigma2Minus => {
                let m = self.jump_j0(k.conj(), ContourPart::Sigma2Plus)?;
                Ok(sigma2_conj_star(&m))
            }
        }
    }
}

/// Contour part selector for [`ProblemParams::jump_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourPart {
    RealAxis,
    Sigma1Plus,
    Sigma1Minus,
    Sigma2Plus,
    Sigma2Minus,
}

fn cal_e_from_nu(nu: C64) -> Mat2 {
    let p = 0.5 * (nu + 1.0 / nu);
    let m = 0.5 * (nu - 1.0 / nu);
    [[p, m], [m, p]]
}

/// sigma2 M* sigma2 with M*(k) := conj(M(conj k)) already applied by caller.
fn sigma2_conj_star(m: &Mat2) -> Mat2 {
    // sigma2 [[a,b],[c,d]]* sigma2 = [[d*, -c*], [-b*, a*]]
    [
        [m[1][1].conj(), -m[1][0].conj()],
        [-m[0][1].conj(), m[0][0].conj()],
    ]
}

/// Determinant of a 2x2 complex matrix.
pub fn det2(m: &Mat2) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Matrix product of 2x2 complex matrices.
pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[c64(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn symmetric_shock() -> ProblemParams {
        ProblemParams::new(1.0, 1.0, -1.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn nu_normalization_at_infinity() {
        let p = symmetric_shock();
        let k = c64(1e6, 3.0);
        assert!((p.nu(2, k).unwrap() - 1.0).norm() < 1e-5);
        assert!((p.branch_x(2, k).unwrap() - (k - 1.0)).norm() < 1e-5);
        assert!((p.branch_omega(2, k).unwrap() - (2.0 * k * k + p.omega(2))).norm() < 2e-5 * 2e12);
    }

    #[test]
    fn nu_value_at_origin() {
        let p = symmetric_shock();
        let v = p.nu(2, c64(0.0, 0.0)).unwrap();
        let expect = C64::from_polar(1.0, std::f64::consts::PI / 8.0);
        assert!((v - expect).norm() < 1e-14, "nu2(0) = {v}");
    }

    #[test]
    fn nu_boundary_relation() {
        // nu_+ = i nu_- on the interior of Sigma_j.
        let p = symmetric_shock();
        for j in [1usize, 2] {
            for s in [-0.7, -0.2, 0.3, 0.8] {
                let k = c64(p.wavenumber(j), s * p.amp(j));
                let plus = p.nu_boundary(j, k, CutSide::Plus);
                let minus = p.nu_boundary(j, k, CutSide::Minus);
                assert!(
                    (plus - c64(0.0, 1.0) * minus).norm() < 1e-7,
                    "j={j} s={s}: {plus} vs i*{minus}"
                );
            }
        }
    }

    #[test]
    fn nu_schwarz_symmetry() {
        let p = ProblemParams::new(0.8, 1.3, -0.4, 0.9, 0.3, -0.8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = c64(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0));
            let nu = p.nu(1, k).unwrap();
            let nu_star = p.nu(1, k.conj()).unwrap().conj();
            assert!((nu_star - 1.0 / nu).norm() < 1e-12);
            let x = p.branch_x(1, k).unwrap();
            let x_star = p.branch_x(1, k.conj()).unwrap().conj();
            assert!((x_star - x).norm() < 1e-12);
        }
    }

    #[test]
    fn background_is_unimodular_and_symmetric() {
        let p = ProblemParams::new(1.2, 0.7, 0.5, -0.9, 1.1, 0.4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let j = if rng.gen_bool(0.5) { 1 } else { 2 };
            let k = c64(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
            let x = rng.gen_range(-1.0..1.0);
            let t = rng.gen_range(-1.0..1.0);
            let m = p.background_phi0(j, x, t, k).unwrap();
            assert!((det2(&m) - 1.0).norm() < 1e-10, "det = {}", det2(&m));
            // sigma2 conjugation symmetry M = sigma2 M*(k) sigma2.
            let ms = p.background_phi0(j, x, t, k.conj()).unwrap();
            let sym = sigma2_m_star_sigma2(&ms);
            let scale = m.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
            for i in 0..2 {
                for l in 0..2 {
                    assert!((m[i][l] - sym[i][l]).norm() < 1e-12 * scale);
                }
            }
        }
    }

    fn sigma2_m_star_sigma2(m_at_kbar: &Mat2) -> Mat2 {
        [
            [m_at_kbar[1][1].conj(), -m_at_kbar[1][0].conj()],
            [-m_at_kbar[0][1].conj(), m_at_kbar[0][0].conj()],
        ]
    }

    #[test]
    fn background_identity_at_infinity() {
        let p = symmetric_shock();
        let m = p.background_phi0(1, 0.0, 0.0, c64(1e6, 1.0)).unwrap();
        assert!((m[0][0] - 1.0).norm() < 1e-5 && (m[1][1] - 1.0).norm() < 1e-5);
        assert!(m[0][1].norm() < 1e-5 && m[1][0].norm() < 1e-5);
    }

    #[test]
    fn scattering_identical_backgrounds_is_trivial() {
        let p = ProblemParams::new(1.3, 1.3, 0.4, 0.4, 0.7, 0.7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let k = c64(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
            if (k.re - 0.4).abs() < 0.05 {
                continue;
            }
            let (a, b) = p.step_scattering(k).unwrap();
            assert!((a - 1.0).norm() < 1e-13 && b.norm() < 1e-13);
        }
    }

    #[test]
    fn scattering_symmetric_shock_at_origin() {
        let p = symmetric_shock();
        let (a, b) = p.step_scattering(c64(0.0, 1e-300)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a - s).norm() < 1e-12, "a(0) = {a}");
        assert!((b - c64(0.0, s)).norm() < 1e-12, "b(0) = {b}");
    }

    #[test]
    fn scattering_normalization_at_infinity() {
        let p = symmetric_shock();
        let (a, b) = p.step_scattering(c64(1e6, 0.0)).unwrap();
        assert!((a - 1.0).norm() < 1e-5 && b.norm() < 1e-5);
    }

    #[test]
    fn unit_determinant_on_real_axis() {
        let p = symmetric_shock();
        for i in 0..200 {
            let k = -10.0 + 20.0 * (i as f64 + 0.5) / 200.0;
            if (k - 1.0).abs() < 0.02 || (k + 1.0).abs() < 0.02 {
                continue;
            }
            let (a, b) = p.step_scattering(c64(k, 0.0)).unwrap();
            let det = a.norm_sqr() + b.norm_sqr();
            assert!((det - 1.0).abs() < 1e-12, "det S at k={k}: {det}");
        }
    }

    #[test]
    fn reflection_modulus_and_decay() {
        let p = symmetric_shock();
        let (r, rt) = p.reflection(0.0).unwrap();
        assert!((r.norm() - 1.0).abs() < 1e-12);
        assert!((r - rt.conj()).norm() < 1e-12);
        let (r, _) = p.reflection(1e6).unwrap();
        assert!(r.norm() < 1e-5);
    }

    #[test]
    fn reflection_jump_on_sigma1() {
        // r_+ - r_- = i e^{-i phi1} / (a_+ a_-) on Sigma_1.
        let p = ProblemParams::new(1.0, 1.0, -1.0, 1.0, 0.4, -0.2).unwrap();
        for s in [0.2, 0.5, 0.8] {
            let k = c64(p.b1, s * p.a1);
            let (ap, bp) = p.step_scattering_boundary(1, k, CutSide::Plus);
            let (am, bm) = p.step_scattering_boundary(1, k, CutSide::Minus);
            // b*(k) boundary values: conj of b at conj(k) approached from the
            // mirrored side (same horizontal offset sign).
            let (_, bps) = p.step_scattering_boundary(1, k.conj(), CutSide::Plus);
            let (_, bms) = p.step_scattering_boundary(1, k.conj(), CutSide::Minus);
            let rp = bps.conj() / ap;
            let rm = bms.conj() / am;
            let rhs = c64(0.0, 1.0) * c64(0.0, -p.phi1).exp() / (ap * am);
            assert!(
                ((rp - rm) - rhs).norm() < 1e-7 * rhs.norm().max(1.0),
                "s={s}: {} vs {rhs}",
                rp - rm
            );
            let _ = (bp, bm);
        }
    }

    #[test]
    fn jump_matrix_properties() {
        let p = symmetric_shock();
        // Identity on the real axis for identical backgrounds.
        let pid = ProblemParams::new(1.0, 1.0, 0.3, 0.3, 0.1, 0.1).unwrap();
        let j = pid.jump_matrix(0.4, 0.2, c64(2.0, 0.0), ContourPart::RealAxis).unwrap();
        assert!((j[0][0] - 1.0).norm() < 1e-13 && j[0][1].norm() < 1e-13 && j[1][0].norm() < 1e-13);

        // (1,2) entry on Sigma_2 in C+ is i e^{i phi2} e^{-2i t theta}.
        let pp = ProblemParams::new(1.0, 1.0, -1.0, 1.0, 0.3, 0.9).unwrap();
        let k = c64(1.0, 0.5);
        let (x, t) = (0.7, 0.4);
        let j = pp.jump_matrix(x, t, k, ContourPart::Sigma2Plus).unwrap();
        let expect = c64(0.0, 1.0)
            * c64(0.0, pp.phi2).exp()
            * (c64(0.0, -2.0) * (k * x + 2.0 * k * k * t)).exp();
        assert!((j[0][1] - expect).norm() < 1e-10 * expect.norm());

        // det J = 1 at random points on all parts.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let x = rng.gen_range(-1.0..1.0);
            let t = rng.gen_range(0.1..1.0);
            let (part, k) = match rng.gen_range(0..5) {
                0 => (ContourPart::RealAxis, c64(rng.gen_range(-3.0..3.0), 0.0)),
                1 => (ContourPart::Sigma1Plus, c64(-1.0, rng.gen_range(0.05..0.95))),
                2 => (ContourPart::Sigma2Plus, c64(1.0, rng.gen_range(0.05..0.95))),
                3 => (ContourPart::Sigma1Minus, c64(-1.0, -rng.gen_range(0.05..0.95))),
                _ => (ContourPart::Sigma2Minus, c64(1.0, -rng.gen_range(0.05..0.95))),
            };
            if matches!(part, ContourPart::RealAxis) && ((k.re - 1.0).abs() < 0.05 || (k.re + 1.0).abs() < 0.05)
            {
                continue;
            }
            let j = p.jump_matrix(x, t, k, part).unwrap();
            assert!((det2(&j) - 1.0).norm() < 1e-9, "det = {}", det2(&j));
        }
    }

    #[test]
    fn rejects_invalid_amplitudes() {
        assert!(ProblemParams::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(ProblemParams::new(1.0, -2.0, 0.0, 1.0, 0.0, 0.0).is_err());
    }
}
