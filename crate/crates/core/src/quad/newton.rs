use crate::error::Error;
use crate::quad::linalg::lu_solve;
use crate::Result;

/// Iteration report returned alongside the solution.
#[derive(Debug, Clone, Copy)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual: f64,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Damped Newton iteration on F: R^n -> R^n with infinity-norm residual.
///
/// The step is damped by factors of 1/2 while the residual would increase.
/// Returns the solution with its report once ||F||_inf <= tol.
pub fn newton_solve<F, J>(
    f: F,
    jac: J,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, NewtonReport)>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
    J: Fn(&[f64]) -> Result<Vec<Vec<f64>>>,
{
    let mut x = x0.to_vec();
    let mut fx = f(&x)?;
    let mut res = inf_norm(&fx);
    for it in 0..max_iter {
        if res <= tol {
            return Ok((
                x,
                NewtonReport {
                    iterations: it,
                    residual: res,
                },
            ));
        }
        let j = jac(&x)?;
        let neg_f: Vec<f64> = fx.iter().map(|v| -v).collect();
        let dx = lu_solve(&j, &neg_f)?;
        let mut lambda = 1.0;
        loop {
            let xt: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + lambda * d).collect();
            match f(&xt) {
                Ok(ft) => {
                    let rt = inf_norm(&ft);
                    if rt < res || lambda < 1.0 / 1024.0 {
                        x = xt;
                        fx = ft;
                        res = rt;
                        break;
                    }
                }
                Err(_) if lambda >= 1.0 / 1024.0 => {}
                Err(e) => return Err(e),
            }
            lambda *= 0.5;
        }
    }
    if res <= tol {
        Ok((
            x,
            NewtonReport {
                iterations: max_iter,
                residual: res,
            },
        ))
    } else {
        Err(Error::NewtonFailure { tol, residual: res })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_1d() {
        let (x, rep) = newton_solve(
            |x| Ok(vec![x[0] - 1.0]),
            |_| Ok(vec![vec![1.0]]),
            &[5.0],
            1e-14,
            50,
        )
        .unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!(rep.residual <= 1e-14);
    }

    #[test]
    fn circle_line_intersection() {
        let f = |x: &[f64]| Ok(vec![x[0] * x[0] + x[1] * x[1] - 1.0, x[0] - x[1]]);
        let j = |x: &[f64]| Ok(vec![vec![2.0 * x[0], 2.0 * x[1]], vec![1.0, -1.0]]);
        let (x, _) = newton_solve(f, j, &[1.0, 0.0], 1e-13, 50).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((x[0] - s).abs() < 1e-12 && (x[1] - s).abs() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        // No real root: x^2 + 1 = 0.
        let r = newton_solve(
            |x| Ok(vec![x[0] * x[0] + 1.0]),
            |x| Ok(vec![vec![2.0 * x[0]]]),
            &[3.0],
            1e-12,
            25,
        );
        assert!(r.is_err());
    }
}
