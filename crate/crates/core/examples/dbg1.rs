use stepnls_core::solvers::{genus3_seed_xi0, solve_genus3};
use stepnls_core::spectral::ProblemParams;
use stepnls_core::surfaces::GEvaluator;

fn main() {
    let p = ProblemParams::new(2.0, 2.0, -1.0, 1.0, 0.0, 0.0).unwrap();
    let seed = genus3_seed_xi0(&p, 0.12).unwrap();
    let sol = solve_genus3(&p, 0.05, &seed).unwrap();
    println!("alpha={} beta={} mu={}", sol.alpha, sol.beta, sol.mu);
    let spec = sol.gprime_spec();
    for (i, cut) in spec.surface.cuts.iter().enumerate() {
        println!("cut {i}: [{}, {}] clearance_around={:.4e}", cut.p, cut.q, spec.surface.clearance_around(i));
        match spec.a_period(i, 1e-10) {
            Ok(v) => println!("  period = {v}"),
            Err(e) => println!("  period err: {e}"),
        }
    }
    match spec.condition_residual() {
        Ok(r) => println!("condition residual {r:.3e}"),
        Err(e) => println!("condition residual err: {e}"),
    }
    match GEvaluator::new(&spec, true) {
        Ok(_) => println!("evaluator ok"),
        Err(e) => println!("evaluator err: {e}"),
    }
}
