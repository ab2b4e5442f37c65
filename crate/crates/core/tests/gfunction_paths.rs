//! Cross-checks of the anchored g evaluation against independent integration
//! routes, on solved parameter states where g is single-valued.

use stepnls_core::quad::{integrate, Path, Segment};
use stepnls_core::solvers::{genus3_seed_xi0, solve_genus3, trace_genus2, TraceOptions};
use stepnls_core::spectral::ProblemParams;
use stepnls_core::surfaces::{GEvaluator, SignatureTable, Window};
use stepnls_core::{c64, C64};

fn shock(a: f64, b: f64) -> ProblemParams {
    ProblemParams::new(a, a, -b, b, 0.0, 0.0).unwrap()
}

#[test]
fn genus3_column_crossing_agrees_with_detour_route() {
    // Solve the genus-3 system, then evaluate g below the oblique
    // [alpha, beta] cut twice: through the column (cut-crossing correction)
    // and along a hand-built detour that avoids all cuts.
    let p = shock(2.0, 1.0);
    let seed = genus3_seed_xi0(&p, 0.12).unwrap();
    let sol = solve_genus3(&p, 0.05, &seed).unwrap();
    let spec = sol.gprime_spec();
    let ev = GEvaluator::new(&spec, true).unwrap();

    // Target below the cut, inside its (tiny) x-range so the column descent
    // crosses it.
    let x = 0.5 * (sol.alpha.re + sol.beta.re);
    let z = c64(x, 0.5);
    let through = ev.eval(z).unwrap();

    // Detour: anchor -> deep below -> left of all alpha-cuts -> up across
    // the real axis away from every cut -> horizontally to the target.
    let k0 = c64(ev.anchor(), 0.0);
    let y_low = -(p.a2 + 3.0);
    let x_mid = -0.5;
    let path = Path::new(vec![
        Segment::Line { a: k0, b: c64(k0.re, y_low) },
        Segment::Line { a: c64(k0.re, y_low), b: c64(x_mid, y_low) },
        Segment::Line { a: c64(x_mid, y_low), b: c64(x_mid, 0.5) },
        Segment::Line { a: c64(x_mid, 0.5), b: z },
    ]);
    let detour: C64 = integrate(|k| spec.eval(k).unwrap(), &path, 1e-11)
        .unwrap()
        .value;
    let independent = ev.anchor_value() + detour;
    assert!(
        (through - independent).norm() < 1e-7,
        "column route {through} vs detour {independent}"
    );
}

#[test]
fn genus2_signature_table_crossings_match_state_zeros() {
    // Mid-curve genus-2 state: the traced Im g = 0 level set crosses the
    // real axis at the state's mu zeros.
    let p = shock(1.0, 1.0);
    let opts = TraceOptions {
        xi_floor: 3.0,
        ..Default::default()
    };
    let tr = trace_genus2(&p, &opts).unwrap();
    let s = tr.samples.last().unwrap();
    let st = stepnls_core::solvers::ParamStateG2::new(p, s.xi, s.alpha1, s.alpha2).unwrap();
    let spec = st.gprime_spec().unwrap();
    let window = Window {
        re0: -2.5,
        re1: 2.5,
        im0: -2.0,
        im1: 2.0,
    };
    let table = SignatureTable::build(&spec, window, 140, 100, false).unwrap();
    for m in [s.mu1, s.mu2] {
        let best = table
            .real_crossings
            .iter()
            .map(|&x| (x - m).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(best < 5.0 / 140.0, "crossing near {m}: err {best}");
    }
}

#[test]
fn genus3_signature_table_builds_and_is_consistent() {
    let p = shock(2.0, 1.0);
    let seed = genus3_seed_xi0(&p, 0.12).unwrap();
    let sol = solve_genus3(&p, 0.05, &seed).unwrap();
    let spec = sol.gprime_spec();
    let window = Window {
        re0: -2.5,
        re1: 2.5,
        im0: -2.8,
        im1: 2.8,
    };
    let table = SignatureTable::build(&spec, window, 120, 90, false).unwrap();
    // The real zero mu ~ 0 must appear as a crossing.
    let best = table
        .real_crossings
        .iter()
        .map(|&x| (x - sol.mu).abs())
        .fold(f64::INFINITY, f64::min);
    assert!(best < 5.0 / 120.0, "crossing near mu = {}: err {best}", sol.mu);
    // Sign field is plus-minus and mirrored rows are negated.
    let rows = table.region_signs.len();
    for r in 0..rows / 2 {
        for c in 0..table.region_signs[r].len() {
            let a = table.region_signs[r][c];
            let b = table.region_signs[rows - 1 - r][c];
            assert!(a == -b && a.abs() == 1);
        }
    }
}

#[test]
fn genus0_merge_event_detected_at_xi_merge() {
    // At xi = xi_merge the genus-0 zeros coincide; the signature table must
    // register the zerosMerge event.
    let p = shock(1.0, 1.0);
    let xi = stepnls_core::surfaces::xi_merge_closed_form(&p).unwrap();
    let spec =
        stepnls_core::surfaces::GPrimeSpec::genus0(&p, xi + 2e-7, 2).unwrap();
    let window = Window {
        re0: -2.0,
        re1: 2.0,
        im0: -1.8,
        im1: 1.8,
    };
    let table = SignatureTable::build(&spec, window, 90, 70, false).unwrap();
    assert!(table
        .events
        .iter()
        .any(|e| matches!(e.kind, stepnls_core::surfaces::SignatureEventKind::ZerosMerge)));
}
