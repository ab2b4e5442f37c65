//! Integration tests for the genus-2 continuation: boundary start, exact
//! Jacobian along the curve, trace terminations, and the regularized
//! boundary map.

use stepnls_core::c64;
use stepnls_core::solvers::{
    self, f_eval, f_tilde, genus2_start, jacobian_alpha, ode_rhs, trace_genus2, ParamStateG2,
    Termination, TraceOptions,
};
use stepnls_core::spectral::ProblemParams;
use stepnls_core::surfaces::xi_e1_closed_form;

fn shock(a: f64, b: f64) -> ProblemParams {
    ProblemParams::new(a, a, -b, b, 0.0, 0.0).unwrap()
}

#[test]
fn start_approaches_genus0_zeros_and_c1_direction() {
    let p = shock(1.0, 1.0);
    let st = genus2_start(&p, 1e-3).unwrap();
    let (m1, m2) = st.mus().unwrap();
    // Limits of the genus-0 zeros at xi_E1.
    assert!((m1 - (-0.9508019290339786)).abs() < 1e-2, "mu1 = {m1}");
    assert!((m2 - 0.7436951478474312).abs() < 1e-2, "mu2 = {m2}");
    let c1 = solvers::c1_constant(&p).unwrap();
    let dir = (st.alpha() - p.e(1)).arg() - c1.arg();
    assert!(dir.abs().to_degrees() < 5.0, "direction error {} deg", dir.abs().to_degrees());
    assert!(st.alpha1 > p.e(1).re, "alpha must start right of Re E1");
    let (f, _) = f_eval(&st, 1e-12).unwrap();
    assert!(f[0].abs().max(f[1].abs()) < 1e-10);
}

#[test]
fn f_limit_at_boundary_matches_f0() {
    // F1 -> f0(xi) as alpha -> E1 at fixed xi; A = B = 1, xi = xi_E1 - 0.5.
    let p = shock(1.0, 1.0);
    let xi_e1 = xi_e1_closed_form(&p).unwrap();
    let xi = xi_e1 - 0.5;
    let alpha = c64(p.e(1).re + 1e-6, p.e(1).im);
    let st = ParamStateG2::new(p, xi, alpha.re, alpha.im).unwrap();
    let (f, _) = f_eval(&st, 1e-12).unwrap();
    let f0 = solvers::f0_boundary(&p, xi).unwrap();
    assert!((f0 - 1.8203594422489093).abs() < 1e-12);
    assert!((f[0] - f0).abs() < 5e-3, "F1 = {} vs f0 = {f0}", f[0]);
    assert!(f[1].abs() < 1e-3, "F2 = {}", f[1]);
}

#[test]
fn f_vanishes_at_the_corner_limit() {
    // F -> 0 at (xi_E1, E1); probe at the offset used in the contract.
    let p = shock(1.0, 1.0);
    let xi_e1 = xi_e1_closed_form(&p).unwrap();
    let c1 = solvers::c1_constant(&p).unwrap();
    let alpha = p.e(1) + 1e-4 * c1 / c1.norm();
    let st = ParamStateG2::new(p, xi_e1, alpha.re, alpha.im).unwrap();
    let (f, _) = f_eval(&st, 1e-12).unwrap();
    // The leading corner term Im{d00 (alpha-E1) ln(alpha-E1)} is already
    // ~6.2e-3 at this offset; F1 vanishes only like r ln r.
    assert!(f[0].abs() < 1.2e-2, "F1 = {}", f[0]);
    assert!(f[1].abs() < 1e-3, "F2 = {}", f[1]);
}

#[test]
fn ode_rhs_consistent_with_implicit_function_formula() {
    let p = shock(1.0, 1.0);
    let st0 = genus2_start(&p, 1e-2).unwrap();
    // Walk a few states down the curve.
    let mut states = vec![st0];
    let opts = TraceOptions {
        delta_start: 1e-2,
        h_init: 0.05,
        xi_floor: 4.0,
        ..Default::default()
    };
    let tr = trace_genus2(&p, &opts).unwrap();
    for s in tr.samples.iter().skip(4).step_by(5).take(5) {
        states.push(ParamStateG2::new(p, s.xi, s.alpha1, s.alpha2).unwrap());
    }
    for st in &states {
        let rhs = ode_rhs(st, 1e-12).unwrap();
        // -(D_alpha F)^{-1} d_xi F with d_xi F by central differences.
        let h = 1e-5;
        let sp = ParamStateG2::new(p, st.xi + h, st.alpha1, st.alpha2).unwrap();
        let sm = ParamStateG2::new(p, st.xi - h, st.alpha1, st.alpha2).unwrap();
        let (fp, _) = f_eval(&sp, 1e-12).unwrap();
        let (fm, _) = f_eval(&sm, 1e-12).unwrap();
        let dxi = [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)];
        let j = jacobian_alpha(st, 1e-12).unwrap();
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let expect = [
            -(j[1][1] * dxi[0] - j[0][1] * dxi[1]) / det,
            -(-j[1][0] * dxi[0] + j[0][0] * dxi[1]) / det,
        ];
        let scale = expect[0].abs().max(expect[1].abs()).max(1e-12);
        let err = (rhs[0] - expect[0]).abs().max((rhs[1] - expect[1]).abs()) / scale;
        assert!(err < 1e-4, "xi = {}: ode rhs {rhs:?} vs implicit {expect:?}", st.xi);
    }
}

#[test]
fn trace_terminations_match_the_scenario_tables() {
    // A/B = 0.5: alpha reaches the real axis inside (0, xi_E1).
    let p = shock(0.5, 1.0);
    let xi_e1 = xi_e1_closed_form(&p).unwrap();
    let tr = trace_genus2(&p, &TraceOptions::default()).unwrap();
    match tr.termination {
        Termination::AlphaRealAxis { xi_m } => {
            assert!(xi_m > 0.0 && xi_m < xi_e1, "xi_alpha = {xi_m}");
        }
        other => panic!("A/B=0.5 terminated as {other:?}"),
    }
    for s in &tr.samples {
        assert!(s.residual < 1e-8, "residual {} at xi {}", s.residual, s.xi);
        assert!(s.det_p > 0.0 && s.alpha2 > 0.0 && s.mu1 < s.mu2);
    }
    // Samples strictly decreasing in xi.
    assert!(tr.samples.windows(2).all(|w| w[1].xi < w[0].xi));

    // A/B = 1: everything merges at the origin.
    let p = shock(1.0, 1.0);
    let tr = trace_genus2(&p, &TraceOptions::default()).unwrap();
    match tr.termination {
        Termination::AlphaRealAxis { xi_m } => {
            assert!(xi_m.abs() < 0.05, "xi_m = {xi_m}");
        }
        other => panic!("A/B=1 terminated as {other:?}"),
    }
    let last = tr.samples.last().unwrap();
    assert!(
        (last.alpha1 * last.alpha1 + last.alpha2 * last.alpha2).sqrt() < 0.05,
        "alpha at termination: ({}, {})",
        last.alpha1,
        last.alpha2
    );

    // A/B = 1.5: the real zeros merge inside (0, xi_E1).
    let p = shock(1.5, 1.0);
    let xi_e1 = xi_e1_closed_form(&p).unwrap();
    let tr = trace_genus2(&p, &TraceOptions::default()).unwrap();
    match tr.termination {
        Termination::MuMerge { xi_m } => {
            assert!(xi_m > 0.0 && xi_m < xi_e1, "xi_mu = {xi_m}");
        }
        other => panic!("A/B=1.5 terminated as {other:?}"),
    }
}

#[test]
fn half_step_trace_agrees_at_matched_xi() {
    let p = shock(1.0, 1.0);
    let base = TraceOptions {
        h_init: 0.02,
        xi_floor: 3.6,
        ..Default::default()
    };
    let half = TraceOptions {
        h_init: 0.01,
        xi_floor: 3.6,
        ..Default::default()
    };
    let t1 = trace_genus2(&p, &base).unwrap();
    let t2 = trace_genus2(&p, &half).unwrap();
    let mut matched = 0;
    for s1 in &t1.samples {
        if let Some(s2) = t2.samples.iter().find(|s| (s.xi - s1.xi).abs() < 1e-9) {
            let d = (s1.alpha1 - s2.alpha1).abs().max((s1.alpha2 - s2.alpha2).abs());
            assert!(d < 1e-6, "xi = {}: step-size disagreement {d}", s1.xi);
            matched += 1;
        }
    }
    assert!(matched > 10, "only {matched} matched xi values");
}

#[test]
fn regularized_boundary_map_has_the_paper_jacobian() {
    // F~(x0) = 0 and DF~(x0) rows [f0', -Im d00, -Re d00], [0, q1, q2];
    // convergence toward the corner is logarithmic, so tolerances are coarse.
    let p = shock(1.0, 1.0);
    let xi_e1 = xi_e1_closed_form(&p).unwrap();
    let d00 = solvers::d00_boundary(&p, xi_e1);
    let (q1, q2) = solvers::q12_boundary(&p, xi_e1);
    let f0p = -8.0 * p.b2.sqrt() * p.e(2).sqrt().im;

    let c1 = solvers::c1_constant(&p).unwrap();
    let probe = |r: f64| -> ([f64; 2], [[f64; 2]; 3]) {
        let alpha = p.e(1) + r * c1 / c1.norm();
        let ft = f_tilde(&p, xi_e1, alpha, 1e-12).unwrap();
        let h = 1e-6;
        let d_xi = {
            let fp = f_tilde(&p, xi_e1 + h, alpha, 1e-12).unwrap();
            let fm = f_tilde(&p, xi_e1 - h, alpha, 1e-12).unwrap();
            [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)]
        };
        let d_a1 = {
            let fp = f_tilde(&p, xi_e1, alpha + c64(h, 0.0), 1e-12).unwrap();
            let fm = f_tilde(&p, xi_e1, alpha - c64(h, 0.0), 1e-12).unwrap();
            [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)]
        };
        let d_a2 = {
            let fp = f_tilde(&p, xi_e1, alpha + c64(0.0, h), 1e-12).unwrap();
            let fm = f_tilde(&p, xi_e1, alpha - c64(0.0, h), 1e-12).unwrap();
            [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)]
        };
        (ft, [d_xi, d_a1, d_a2])
    };
    let (ft, g1) = probe(1e-3);
    assert!(ft[0].abs() < 2e-2, "F~1 = {}", ft[0]);
    assert!(ft[1].abs() < 2e-2, "F~2 = {}", ft[1]);
    let (_, g2) = probe(2e-5);
    // The smooth row converges directly; accept a few percent.
    let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1.0);
    assert!(rel(g2[0][0], f0p) < 0.05, "d_xi F~1 = {} vs {}", g2[0][0], f0p);
    assert!(g2[0][1].abs() < 0.05 * q2.abs(), "d_xi F~2 = {}", g2[0][1]);
    assert!(rel(g2[1][1], q1) < 0.01, "d_a1 F~2 = {} vs {q1}", g2[1][1]);
    assert!(rel(g2[2][1], q2) < 0.01, "d_a2 F~2 = {} vs {q2}", g2[2][1]);
    // The d00 row converges like ln|ln r|/|ln r| with a 1/|ln r| subleading
    // term: fit L (1 + u) + c w at the two radii and compare L.
    let fit = |a: f64, b: f64, r1: f64, r2: f64| -> f64 {
        let u = |r: f64| {
            let l = (r as f64).ln().abs();
            l.ln() / l
        };
        let w = |r: f64| 1.0 / (r as f64).ln().abs();
        let det = (1.0 + u(r1)) * w(r2) - (1.0 + u(r2)) * w(r1);
        (a * w(r2) - b * w(r1)) / det
    };
    let e_a1 = fit(g1[1][0], g2[1][0], 1e-3, 2e-5);
    let e_a2 = fit(g1[2][0], g2[2][0], 1e-3, 2e-5);
    assert!(rel(e_a1, -d00.im) < 0.1, "d_a1 F~1 -> {e_a1} vs {}", -d00.im);
    assert!(rel(e_a2, -d00.re) < 0.1, "d_a2 F~1 -> {e_a2} vs {}", -d00.re);
}
