use crate::error::Error;
use crate::Result;

/// Bracketed 1-d root finding: bisection to the requested tolerance followed
/// by one secant polish. Requires f(lo) * f(hi) < 0.
pub fn find_root_1d<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::NoSignChange);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || 0.5 * (b - a).abs() < 1e-16 * m.abs().max(1.0) {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
        if fm.abs() <= tol && (b - a).abs() < 1e-10 * m.abs().max(1.0) {
            break;
        }
    }
    // Secant polish inside the bracket.
    let mut x = if fa.abs() < fb.abs() { a } else { b };
    let denom = fb - fa;
    if denom != 0.0 {
        let xs = a - fa * (b - a) / denom;
        if xs >= lo && xs <= hi && f(xs).abs() < f(x).abs() {
            x = xs;
        }
    }
    if f(x).abs() <= tol {
        Ok(x)
    } else {
        Err(Error::NonConvergence { est: f(x).abs() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let x = find_root_1d(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn merge_threshold_closed_form() {
        // (xi + 4B)^2 - 32 A^2 with A = B = 1 has the root 4(sqrt(2) - 1).
        let x = find_root_1d(|xi| (xi + 4.0) * (xi + 4.0) - 32.0, 0.0, 4.0, 1e-12).unwrap();
        assert!((x - 4.0 * (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-10, "x = {x}");
        assert!((x - 1.65685424).abs() < 1e-7);
    }

    #[test]
    fn identity_at_zero() {
        let x = find_root_1d(|x| x, -1.0, 1.0, 1e-14).unwrap();
        assert!(x.abs() < 1e-14);
    }

    #[test]
    fn no_sign_change_detected() {
        assert!(matches!(
            find_root_1d(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoSignChange)
        ));
    }
}
