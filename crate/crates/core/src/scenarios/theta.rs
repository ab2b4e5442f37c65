use crate::error::Error;
use crate::{c64, Result, C64};

/// Truncated Jacobi theta series
/// Theta(z) = sum_{|m| <= m_max} exp(2 pi i (tau m^2 / 2 + m z)),
/// returned with a bound on the truncation error.
pub fn theta_jacobi(z: C64, tau: C64, m_max: usize) -> Result<(C64, f64)> {
    if tau.im <= 0.0 {
        return Err(Error::WrongRegime("theta requires Im tau > 0"));
    }
    let two_pi_i = c64(0.0, std::f64::consts::TAU);
    let mut s = c64(1.0, 0.0);
    for m in 1..=m_max as i64 {
        let mf = m as f64;
        let quad = two_pi_i * (tau * (mf * mf / 2.0));
        let e = quad.exp();
        s += e * ((two_pi_i * mf * z).exp() + (-two_pi_i * mf * z).exp());
    }
    // First omitted term and geometric tail bound.
    let m1 = (m_max + 1) as f64;
    let t = (-std::f64::consts::PI * tau.im * m1 * m1
        + std::f64::consts::TAU * z.im.abs() * m1)
        .exp();
    let ratio = (-std::f64::consts::PI * tau.im * (2.0 * m1 + 1.0)
        + std::f64::consts::TAU * z.im.abs())
    .exp();
    let bound = if ratio < 1.0 {
        2.0 * t / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    Ok((s, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn periodicity_and_evenness() {
        let tau = c64(0.3, 1.2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
            let (a, _) = theta_jacobi(z, tau, 24).unwrap();
            let (b, _) = theta_jacobi(z + 1.0, tau, 24).unwrap();
            let (c, _) = theta_jacobi(-z, tau, 24).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
            assert!((a - c).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn value_at_lemniscatic_point() {
        let (v, bound) = theta_jacobi(c64(0.0, 0.0), c64(0.0, 1.0), 10).unwrap();
        assert!((v.re - 1.0864348112133080).abs() < 1e-12, "theta = {v}");
        assert!(v.im.abs() < 1e-15);
        assert!(bound < 1e-50);
    }

    #[test]
    fn rejects_lower_half_tau() {
        assert!(theta_jacobi(c64(0.0, 0.0), c64(0.0, -1.0), 5).is_err());
    }
}
