use crate::Result;

/// One classical RK4 step for x' = rhs(s, x) from `s` with step `h`.
/// Deterministic for fixed inputs; rhs failures propagate.
pub fn ode_step_rk4<F>(rhs: F, x: &[f64], s: f64, h: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let add = |x: &[f64], k: &[f64], c: f64| -> Vec<f64> {
        x.iter().zip(k).map(|(a, b)| a + c * b).collect()
    };
    let k1 = rhs(s, x)?;
    let k2 = rhs(s + 0.5 * h, &add(x, &k1, 0.5 * h))?;
    let k3 = rhs(s + 0.5 * h, &add(x, &k2, 0.5 * h))?;
    let k4 = rhs(s + h, &add(x, &k3, h))?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}
