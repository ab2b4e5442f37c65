//! Scenario classification, sector-diagram assembly and the closed-form
//! asymptotic evaluators.

mod slowdecay;
mod theta;

pub use slowdecay::{chi_tilde, dfunction, lngamma, nu_stationary, slow_decay_coeffs, SlowDecayCoeffs};
pub use theta::theta_jacobi;

use crate::error::Error;
use crate::solvers::{
    solve_genus1_elliptic, trace_genus2, Genus1Elliptic, Termination, TraceOptions,
};
use crate::spectral::{CaseTag, ProblemParams};
use crate::surfaces::{
    ab_threshold, xi_e1_closed_form, xi_merge_closed_form, GEvaluator, GPrimeSpec,
};
use crate::{c64, Result, C64};
use serde::Serialize;

/// Asymptotic scenario per the shock/rarefaction classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Scenario {
    Rarefaction,
    Shock1,
    Shock2,
    Shock3,
    Shock4,
    Shock5,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub case: CaseTag,
    pub scenario: Option<Scenario>,
    /// Amplitude ratio A/B after symmetric normalization (shock only).
    pub a_over_b: Option<f64>,
    pub xi_e1: Option<f64>,
    pub xi_merge: Option<f64>,
}

/// Parameter transform record of the reduction q -> A q(A(x+4Bt), A^2 t) e^{...}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransformRecord {
    pub a: f64,
    pub b: f64,
    pub phase_shift: f64,
}

/// Reduce parameters to the normal form B2' = -B1' = 1 (shock),
/// B1' = -B2' = 1 (rarefaction) or B' = 0 (equal), with phi2' = 0.
pub fn reduce(params: &ProblemParams) -> (ProblemParams, TransformRecord) {
    let (a, b) = match params.case_tag() {
        CaseTag::Shock => (
            2.0 / (params.b2 - params.b1),
            (params.b1 + params.b2) / (params.b1 - params.b2),
        ),
        CaseTag::Rarefaction => (
            2.0 / (params.b1 - params.b2),
            (params.b1 + params.b2) / (params.b2 - params.b1),
        ),
        CaseTag::Equal => (1.0, -params.b1),
    };
    let rec = TransformRecord {
        a,
        b,
        phase_shift: -params.phi2,
    };
    let out = ProblemParams {
        a1: a * params.a1,
        a2: a * params.a2,
        b1: params.b1 * a + b,
        b2: params.b2 * a + b,
        phi1: params.phi1 - params.phi2,
        phi2: 0.0,
    };
    (out, rec)
}

/// Invert the reduction transform.
pub fn reduce_inverse(normalized: &ProblemParams, rec: &TransformRecord) -> ProblemParams {
    ProblemParams {
        a1: normalized.a1 / rec.a,
        a2: normalized.a2 / rec.a,
        b1: (normalized.b1 - rec.b) / rec.a,
        b2: (normalized.b2 - rec.b) / rec.a,
        phi1: normalized.phi1 - rec.phase_shift,
        phi2: normalized.phi2 - rec.phase_shift,
    }
}

/// Classify the parameters into rarefaction or one of the five symmetric
/// shock scenarios (by A/B against 1 and 2/7 (2 + 3 sqrt 2)).
pub fn classify(params: &ProblemParams) -> Result<Classification> {
    match params.case_tag() {
        CaseTag::Equal => Err(Error::EqualBCase),
        CaseTag::Rarefaction => Ok(Classification {
            case: CaseTag::Rarefaction,
            scenario: Some(Scenario::Rarefaction),
            a_over_b: None,
            xi_e1: None,
            xi_merge: None,
        }),
        CaseTag::Shock => {
            let (norm, _) = reduce(params);
            let symmetric = (norm.a1 - norm.a2).abs() < 1e-12;
            let scenario = if symmetric {
                let ratio = norm.a2 / norm.b2;
                let bv = ab_threshold();
                Some(if (ratio - 1.0).abs() < 1e-12 {
                    Scenario::Shock2
                } else if ratio < 1.0 {
                    Scenario::Shock1
                } else if (ratio - bv).abs() < 1e-12 {
                    Scenario::Shock4
                } else if ratio < bv {
                    Scenario::Shock3
                } else {
                    Scenario::Shock5
                })
            } else {
                None
            };
            let (xi_e1, xi_merge) = if symmetric {
                (
                    Some(xi_e1_closed_form(&norm)?),
                    Some(xi_merge_closed_form(&norm)?),
                )
            } else {
                (None, None)
            };
            Ok(Classification {
                case: CaseTag::Shock,
                scenario,
                a_over_b: symmetric.then(|| norm.a2 / norm.b2),
                xi_e1,
                xi_merge,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum GenusLabel {
    Genus0,
    Genus1,
    Genus2,
    Genus3,
    SlowDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    ClosedForm,
    Traced,
    TracedFailed,
}

#[derive(Debug, Clone, Serialize)]
pub struct Boundary {
    pub xi: f64,
    pub genus_left: GenusLabel,
    pub genus_right: GenusLabel,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sector {
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub genus: GenusLabel,
    pub description: String,
}

/// Sector diagram: ordered boundaries with provenance and the genus labels
/// of the tiled xi-line.
#[derive(Debug, Clone, Serialize)]
pub struct SectorDiagram {
    pub scenario: Scenario,
    pub boundaries: Vec<Boundary>,
    pub sectors: Vec<Sector>,
}

impl SectorDiagram {
    /// Fan SVG over the upper (x, t) half-plane: one shaded wedge per sector.
    pub fn to_svg(&self) -> String {
        let (w, h) = (800.0, 420.0);
        let xmax = self
            .boundaries
            .iter()
            .map(|b| b.xi.abs())
            .fold(4.0f64, f64::max)
            * 1.6;
        let colors = [
            ("genus0", "#f2e8cf"),
            ("genus1", "#a7c957"),
            ("genus2", "#6a994e"),
            ("genus3", "#386641"),
            ("slowDecay", "#bc4749"),
        ];
        let color = |g: GenusLabel| match g {
            GenusLabel::Genus0 => colors[0].1,
            GenusLabel::Genus1 => colors[1].1,
            GenusLabel::Genus2 => colors[2].1,
            GenusLabel::Genus3 => colors[3].1,
            GenusLabel::SlowDecay => colors[4].1,
        };
        // Map a slope xi = x/t (t = 1 line scaled) into the wedge fan.
        let ox = w / 2.0;
        let oy = h - 20.0;
        let scale = (w / 2.0 - 20.0) / xmax;
        let pt = |xi: f64| -> (f64, f64) {
            let x = ox + xi.clamp(-xmax, xmax) * scale * 0.9;
            let y = oy - (h - 60.0);
            (x, y)
        };
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n"
        ));
        for s in &self.sectors {
            let (x0, y0) = pt(s.xi_lo.max(-xmax));
            let (x1, y1) = pt(s.xi_hi.min(xmax));
            svg.push_str(&format!(
                "<path d=\"M{ox:.1} {oy:.1} L{x0:.1} {y0:.1} L{x1:.1} {y1:.1} Z\" fill=\"{}\" stroke=\"#333\" stroke-width=\"0.5\"><title>{}</title></path>\n",
                color(s.genus),
                s.description
            ));
        }
        for b in &self.boundaries {
            let (x, y) = pt(b.xi);
            svg.push_str(&format!(
                "<line x1=\"{ox:.1}\" y1=\"{oy:.1}\" x2=\"{x:.1}\" y2=\"{y:.1}\" stroke=\"#111\" stroke-width=\"1\"/>\n"
            ));
            svg.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">xi={:.4}</text>\n",
                y - 5.0,
                b.xi
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Assemble the sector diagram for the classified scenario. Closed-form
/// boundaries are exact; interior shock boundaries are traced with the
/// genus-2 continuation or the genus-1 family.
pub fn sector_diagram(params: &ProblemParams) -> Result<SectorDiagram> {
    let cls = classify(params)?;
    match cls.scenario {
        Some(Scenario::Rarefaction) => rarefaction_diagram(params),
        Some(s) => {
            let (norm, _) = reduce(params);
            shock_diagram(&norm, s)
        }
        None => Err(Error::NotSymmetricShock),
    }
}

fn rarefaction_diagram(params: &ProblemParams) -> Result<SectorDiagram> {
    let s2 = 4.0 * std::f64::consts::SQRT_2;
    let bounds = [
        -4.0 * params.b1 - s2 * params.a1,
        -4.0 * params.b1,
        -4.0 * params.b2,
        -4.0 * params.b2 + s2 * params.a2,
    ];
    let labels = [
        GenusLabel::Genus0,
        GenusLabel::Genus1,
        GenusLabel::SlowDecay,
        GenusLabel::Genus1,
        GenusLabel::Genus0,
    ];
    let desc = [
        "plane wave (left background)",
        "modulated elliptic wave",
        "slow Zakharov-Manakov decay",
        "modulated elliptic wave",
        "plane wave (right background)",
    ];
    let mut boundaries = Vec::new();
    for (i, &xi) in bounds.iter().enumerate() {
        boundaries.push(Boundary {
            xi,
            genus_left: labels[i],
            genus_right: labels[i + 1],
            provenance: Provenance::ClosedForm,
        });
    }
    let mut sectors = Vec::new();
    let inf = f64::INFINITY;
    let edges = [[-inf, bounds[0]], [bounds[0], bounds[1]], [bounds[1], bounds[2]], [bounds[2], bounds[3]], [bounds[3], inf]];
    for i in 0..5 {
        sectors.push(Sector {
            xi_lo: edges[i][0],
            xi_hi: edges[i][1],
            genus: labels[i],
            description: desc[i].to_string(),
        });
    }
    Ok(SectorDiagram {
        scenario: Scenario::Rarefaction,
        boundaries,
        sectors,
    })
}

fn shock_diagram(norm: &ProblemParams, scenario: Scenario) -> Result<SectorDiagram> {
    let xi_e1 = xi_e1_closed_form(norm)?;
    let xi_merge = xi_merge_closed_form(norm)?;
    // Positive half-line boundaries; mirrored afterwards.
    let mut half: Vec<(f64, GenusLabel, GenusLabel, Provenance)> = Vec::new();
    match scenario {
        Scenario::Shock1 | Scenario::Shock2 | Scenario::Shock3 => {
            let trace = trace_genus2(norm, &TraceOptions::default());
            match trace {
                Ok(tr) => {
                    let (xi_m, inner, prov) = match tr.termination {
                        Termination::AlphaRealAxis { xi_m } => {
                            (xi_m, GenusLabel::Genus1, Provenance::Traced)
                        }
                        Termination::MuMerge { xi_m } => {
                            (xi_m, GenusLabel::Genus3, Provenance::Traced)
                        }
                        Termination::AlphaHitsE { xi_m, .. }
                        | Termination::ReachedXiMin { xi_m }
                        | Termination::CorrectorDivergence { xi_m } => {
                            (xi_m, GenusLabel::Genus1, Provenance::TracedFailed)
                        }
                    };
                    if matches!(scenario, Scenario::Shock2) {
                        // The genus-1 band is the single point xi = 0.
                        half.push((
                            xi_m.max(0.0),
                            GenusLabel::Genus1,
                            GenusLabel::Genus2,
                            prov,
                        ));
                    } else {
                        half.push((xi_m, inner, GenusLabel::Genus2, prov));
                    }
                }
                Err(_) => {
                    half.push((
                        f64::NAN,
                        GenusLabel::Genus1,
                        GenusLabel::Genus2,
                        Provenance::TracedFailed,
                    ));
                }
            }
            half.push((
                xi_e1,
                GenusLabel::Genus2,
                GenusLabel::Genus0,
                Provenance::ClosedForm,
            ));
        }
        Scenario::Shock4 => {
            half.push((
                xi_e1,
                GenusLabel::Genus3,
                GenusLabel::Genus0,
                Provenance::ClosedForm,
            ));
        }
        Scenario::Shock5 => {
            let xi_new = trace_xi_e1_new(norm, xi_merge)?;
            half.push((
                xi_new,
                GenusLabel::Genus3,
                GenusLabel::Genus1,
                Provenance::Traced,
            ));
            half.push((
                xi_merge,
                GenusLabel::Genus1,
                GenusLabel::Genus0,
                Provenance::ClosedForm,
            ));
        }
        Scenario::Rarefaction => unreachable!(),
    }

    let mut boundaries = Vec::new();
    for &(xi, gl, gr, prov) in half.iter().rev() {
        if xi.is_finite() && xi > 1e-9 {
            boundaries.push(Boundary {
                xi: -xi,
                genus_left: gr,
                genus_right: gl,
                provenance: prov,
            });
        }
    }
    for &(xi, gl, gr, prov) in &half {
        boundaries.push(Boundary {
            xi,
            genus_left: gl,
            genus_right: gr,
            provenance: prov,
        });
    }

    let mut sectors = Vec::new();
    let inner_genus = half[0].1;
    let descr = |g: GenusLabel| match g {
        GenusLabel::Genus0 => "plane wave",
        GenusLabel::Genus1 => "modulated elliptic wave",
        GenusLabel::Genus2 => "genus-2 hyperelliptic transition",
        GenusLabel::Genus3 => "genus-3 hyperelliptic band",
        GenusLabel::SlowDecay => "slow decay",
    };
    // Tile: (-inf, -b_n) ... inner ... (b_n, inf).
    let pos: Vec<&(f64, GenusLabel, GenusLabel, Provenance)> =
        half.iter().filter(|b| b.0.is_finite()).collect();
    if let Some(first) = pos.first() {
        sectors.push(Sector {
            xi_lo: -first.0,
            xi_hi: first.0,
            genus: inner_genus,
            description: format!("{} (residual region)", descr(inner_genus)),
        });
    }
    for w in pos.windows(2) {
        sectors.push(Sector {
            xi_lo: w[0].0,
            xi_hi: w[1].0,
            genus: w[0].2,
            description: descr(w[0].2).to_string(),
        });
        sectors.insert(
            0,
            Sector {
                xi_lo: -w[1].0,
                xi_hi: -w[0].0,
                genus: w[0].2,
                description: descr(w[0].2).to_string(),
            },
        );
    }
    if let Some(last) = pos.last() {
        sectors.push(Sector {
            xi_lo: last.0,
            xi_hi: f64::INFINITY,
            genus: last.2,
            description: descr(last.2).to_string(),
        });
        sectors.insert(
            0,
            Sector {
                xi_lo: f64::NEG_INFINITY,
                xi_hi: -last.0,
                genus: last.2,
                description: descr(last.2).to_string(),
            },
        );
    }
    Ok(SectorDiagram {
        scenario,
        boundaries,
        sectors,
    })
}

/// Scenario 5: trace the genus-1 elliptic family down from xi_merge and find
/// the xi at which the infinite branch of Im g = 0 passes through E_1.
fn trace_xi_e1_new(norm: &ProblemParams, xi_merge: f64) -> Result<f64> {
    let merged = norm.b2 / 2.0 - xi_merge / 8.0;
    let mut seed = (merged, c64(merged, 0.0));
    let e1 = norm.e(1);
    let im_at = |sol: &Genus1Elliptic, xi: f64| -> Result<f64> {
        let spec = GPrimeSpec::genus1_elliptic(norm, xi, sol.mu, sol.beta);
        let ev = GEvaluator::with_tol(&spec, true, 1e-9)?;
        ev.eval_im(e1)
    };
    let xi_hi = xi_merge - 1e-3;
    let mut sol = solve_genus1_elliptic(norm, xi_hi, seed)?;
    let mut f_hi = im_at(&sol, xi_hi)?;
    let mut xi_lo = xi_hi;
    let steps = 40;
    let mut bracket = None;
    for i in 1..=steps {
        let xi = xi_merge - 1e-3 - (xi_merge - 2e-3) * i as f64 / steps as f64;
        seed = (sol.mu, sol.beta);
        sol = solve_genus1_elliptic(norm, xi, seed)?;
        let f = im_at(&sol, xi)?;
        if f * f_hi < 0.0 {
            bracket = Some((xi, xi_lo));
            break;
        }
        xi_lo = xi;
        f_hi = f;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::BracketFailure)?;
    // Bisection with genus-1 re-solve at each midpoint.
    let mut f_lo = {
        let s = solve_genus1_elliptic(norm, lo, (sol.mu, sol.beta))?;
        im_at(&s, lo)?
    };
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        let s = solve_genus1_elliptic(norm, mid, (sol.mu, sol.beta))?;
        sol = s;
        let f = im_at(&sol, mid)?;
        if f.abs() < 1e-10 || (hi - lo) < 1e-10 {
            return Ok(mid);
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Leading plane-wave term A_j e^{-2i B_j x + 2 i omega_j t + i phi_j}.
///
/// The xi-dependent phase correction psi_j(xi) is not computed (the papers
/// pin it only at |xi| -> infinity); the flag records that the phase is the
/// leading-order background phase.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave {
    pub value: C64,
    pub phase: &'static str,
}

pub fn plane_wave_asym(params: &ProblemParams, j: usize, x: f64, t: f64) -> Result<PlaneWave> {
    if !(t > 0.0) {
        return Err(Error::WrongRegime("plane-wave asymptotics needs t > 0"));
    }
    let xi = x / t;
    let inside = match params.case_tag() {
        CaseTag::Rarefaction => {
            if j == 1 {
                xi < -4.0 * params.b1 - 4.0 * std::f64::consts::SQRT_2 * params.a1
            } else {
                xi > -4.0 * params.b2 + 4.0 * std::f64::consts::SQRT_2 * params.a2
            }
        }
        CaseTag::Shock => {
            let (norm, rec) = reduce(params);
            if (norm.a1 - norm.a2).abs() > 1e-12 {
                return Err(Error::NotSymmetricShock);
            }
            let edge = xi_e1_closed_form(&norm)?.max(xi_merge_closed_form(&norm)?);
            // xi' = x'/t' with x' = A(x + 4Bt), t' = A^2 t: xi' = (xi + 4B)/A.
            let xi_p = (xi + 4.0 * rec.b) / rec.a;
            if j == 1 {
                xi_p < -edge
            } else {
                xi_p > edge
            }
        }
        CaseTag::Equal => return Err(Error::EqualBCase),
    };
    if !inside {
        return Err(Error::OutsideSector { xi });
    }
    let (a, b, om, ph) = (
        params.amp(j),
        params.wavenumber(j),
        params.omega(j),
        params.phase(j),
    );
    let value = a * (c64(0.0, 1.0) * (-2.0 * b * x + 2.0 * om * t + ph)).exp();
    Ok(PlaneWave {
        value,
        phase: "leading order at |xi| -> infinity only",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_cases() {
        let r = ProblemParams::new(1.0, 1.0, 1.0, -1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&r).unwrap().scenario, Some(Scenario::Rarefaction));
        let s = ProblemParams::new(1.0, 1.0, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&s).unwrap().scenario, Some(Scenario::Shock2));
        let e = ProblemParams::new(1.0, 1.0, 0.5, 0.5, 0.0, 0.0).unwrap();
        assert!(matches!(classify(&e), Err(Error::EqualBCase)));
        // boundary ratio
        let bv = ab_threshold();
        let s4 = ProblemParams::new(bv, bv, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&s4).unwrap().scenario, Some(Scenario::Shock4));
        let s5 = ProblemParams::new(2.0, 2.0, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&s5).unwrap().scenario, Some(Scenario::Shock5));
        let s1 = ProblemParams::new(0.5, 0.5, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&s1).unwrap().scenario, Some(Scenario::Shock1));
        let s3 = ProblemParams::new(1.5, 1.5, -1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(classify(&s3).unwrap().scenario, Some(Scenario::Shock3));
    }

    #[test]
    fn reduce_shock_example() {
        let p = ProblemParams::new(1.0, 1.0, -3.0, 1.0, 0.3, 0.7).unwrap();
        let (n, rec) = reduce(&p);
        assert!((rec.a - 0.5).abs() < 1e-15 && (rec.b - 0.5).abs() < 1e-15);
        assert!((n.b1 + 1.0).abs() < 1e-15 && (n.b2 - 1.0).abs() < 1e-15);
        assert!(n.phi2 == 0.0);
        let back = reduce_inverse(&n, &rec);
        assert!((back.a1 - p.a1).abs() < 1e-14);
        assert!((back.b1 - p.b1).abs() < 1e-14);
        assert!((back.b2 - p.b2).abs() < 1e-14);
        assert!((back.phi1 - p.phi1).abs() < 1e-14);
    }

    #[test]
    fn reduce_identity_on_normalized() {
        let p = ProblemParams::new(1.0, 1.0, -1.0, 1.0, 0.4, 0.0).unwrap();
        let (n, rec) = reduce(&p);
        assert!((rec.a - 1.0).abs() < 1e-15 && rec.b.abs() < 1e-15);
        assert!((n.a1 - 1.0).abs() < 1e-15 && (n.b1 + 1.0).abs() < 1e-15);
    }

    #[test]
    fn classify_invariant_under_reduce() {
        let p = ProblemParams::new(0.7, 0.7, -2.0, 0.5, 0.1, -0.4).unwrap();
        let c1 = classify(&p).unwrap();
        let (n, _) = reduce(&p);
        let c2 = classify(&n).unwrap();
        assert_eq!(c1.scenario, c2.scenario);
        assert_eq!(c1.case, c2.case);
    }

    #[test]
    fn rarefaction_diagram_boundaries() {
        let p = ProblemParams::new(1.0, 1.0, 1.0, -1.0, 0.0, 0.0).unwrap();
        let d = sector_diagram(&p).unwrap();
        let s2 = 4.0 * std::f64::consts::SQRT_2;
        let expect = [-4.0 - s2, -4.0, 4.0, 4.0 + s2];
        assert_eq!(d.boundaries.len(), 4);
        for (b, e) in d.boundaries.iter().zip(expect) {
            assert!((b.xi - e).abs() < 1e-12);
        }
        let genus: Vec<GenusLabel> = d.sectors.iter().map(|s| s.genus).collect();
        assert_eq!(
            genus,
            vec![
                GenusLabel::Genus0,
                GenusLabel::Genus1,
                GenusLabel::SlowDecay,
                GenusLabel::Genus1,
                GenusLabel::Genus0
            ]
        );
    }

    #[test]
    fn plane_wave_modulus_and_frequencies() {
        let p = ProblemParams::new(1.0, 1.3, 1.0, -1.0, 0.2, 0.9).unwrap();
        let (x, t) = (-30.0, 1.0);
        let pw = plane_wave_asym(&p, 1, x, t).unwrap();
        assert!((pw.value.norm() - p.a1).abs() < 1e-12);
        // t-frequency: (1/2i) d/dt log value = omega_j.
        let h = 1e-6;
        let vp = plane_wave_asym(&p, 1, x, t + h).unwrap().value;
        let vm = plane_wave_asym(&p, 1, x, t - h).unwrap().value;
        let ft = ((vp / vm).ln() / (2.0 * h)).im / 2.0;
        assert!((ft - p.omega(1)).abs() < 1e-5);
        // x-frequency: -2 B_j.
        let vp = plane_wave_asym(&p, 1, x + h, t).unwrap().value;
        let vm = plane_wave_asym(&p, 1, x - h, t).unwrap().value;
        let fx = ((vp / vm).ln() / (2.0 * h)).im;
        assert!((fx + 2.0 * p.b1).abs() < 1e-5);
        assert!(plane_wave_asym(&p, 2, -30.0, 1.0).is_err());
    }
}
