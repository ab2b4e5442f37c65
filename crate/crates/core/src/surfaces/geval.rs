use super::gprime::GPrimeSpec;
use crate::error::Error;
use crate::quad::integrate_fn;
use crate::{c64, Result, C64};

/// Anchored evaluator for g(k) = integral of g' along cut-avoiding paths.
///
/// The anchor is the real point k0 = max(Re of cut endpoints) + 2 with the
/// real anchor value g(k0) = 2 k0^2 + xi k0 + g0 - int_{k0}^{inf}(g' - 4s - xi) ds.
/// Points are reached by going up from the anchor to a horizontal line above
/// all cuts and descending vertically; descents across oblique cuts are
/// corrected with the per-cut constant g_+ + g_- = 2 g(endpoint), which is
/// well-defined whenever the spec's a-periods vanish.
pub struct GEvaluator {
    spec: GPrimeSpec,
    k0: f64,
    g_k0: C64,
    y_top: f64,
    g_top_anchor: C64,
    cut_constants: Vec<C64>,
    tol: f64,
}

impl GEvaluator {
    pub fn new(spec: &GPrimeSpec, acknowledge_conditions: bool) -> Result<Self> {
        Self::with_tol(spec, acknowledge_conditions, 1e-9)
    }

    pub fn with_tol(spec: &GPrimeSpec, acknowledge_conditions: bool, tol: f64) -> Result<Self> {
        if !acknowledge_conditions {
            let residual = spec.condition_residual()?;
            if residual > 1e-6 {
                return Err(Error::ConditionsNotSatisfied { residual });
            }
        }
        let endpoints: Vec<C64> = spec
            .surface
            .cuts
            .iter()
            .flat_map(|c| c.endpoints())
            .collect();
        let k0 = endpoints.iter().map(|e| e.re).fold(f64::MIN, f64::max) + 2.0;
        let y_top = endpoints.iter().map(|e| e.im).fold(0.0f64, f64::max) + 1.5;
        let xi = spec.xi;

        // Anchor value: integrate (g' - 4s - xi) in from +infinity along the
        // real axis with s = k0 + t/(1-t).
        let tail = integrate_fn(
            |t: C64| {
                let tt = t.re;
                let s = k0 + tt / (1.0 - tt);
                let ds = 1.0 / ((1.0 - tt) * (1.0 - tt));
                (spec.eval_unchecked(c64(s, 0.0)) - 4.0 * s - xi) * ds
            },
            c64(0.0, 0.0),
            c64(1.0 - 1e-9, 0.0),
            tol,
        )?
        .value;
        let g_k0 = 2.0 * k0 * k0 + xi * k0 + spec.g0 - tail;

        // g at the top of the anchor column.
        let up = integrate_fn(
            |k| spec.eval_unchecked(k),
            c64(k0, 0.0),
            c64(k0, y_top),
            tol,
        )?
        .value;
        let g_top_anchor = g_k0 + up;

        let mut ev = GEvaluator {
            spec: spec.clone(),
            k0,
            g_k0,
            y_top,
            g_top_anchor,
            cut_constants: vec![c64(0.0, 0.0); spec.surface.cuts.len()],
            tol,
        };

        // Per-cut constants 2 g(top endpoint), highest cut first so that any
        // descent crossings hit cuts whose constants are already known.
        let mut order: Vec<usize> = (0..spec.surface.cuts.len()).collect();
        order.sort_by(|&a, &b| {
            spec.surface.cuts[b]
                .top()
                .im
                .total_cmp(&spec.surface.cuts[a].top().im)
        });
        let mut have = vec![false; order.len()];
        for idx in order {
            let e = ev.spec.surface.cuts[idx].top();
            let g_e = ev.eval_endpoint(e, &have)?;
            ev.cut_constants[idx] = 2.0 * g_e;
            have[idx] = true;
        }
        Ok(ev)
    }

    pub fn anchor(&self) -> f64 {
        self.k0
    }

    /// g at the anchor point (real up to the reported residue).
    pub fn anchor_value(&self) -> C64 {
        self.g_k0
    }

    /// g at the top endpoint `e` of cut `own`, descending from above with a
    /// sqrt substitution for the final approach. The approach runs along the
    /// straight extension of the cut beyond `e`, which cannot re-touch the
    /// cut or (for mirrored pairs) pass through its twin's endpoint. `have`
    /// marks cuts whose crossing constants are available.
    fn eval_endpoint(&self, e: C64, own: usize, have: &[bool]) -> Result<C64> {
        let cut = &self.spec.surface.cuts[own];
        let other = if (cut.p - e).norm() > (cut.q - e).norm() {
            cut.p
        } else {
            cut.q
        };
        let dir = if (e - other).norm() < 1e-14 {
            c64(0.0, 1.0)
        } else {
            (e - other) / (e - other).norm()
        };
        let mut h0: f64 = 0.5;
        for (i, c) in self.spec.surface.cuts.iter().enumerate() {
            if i == own {
                continue;
            }
            let d = c.dist_to_point(e);
            if d > 1e-12 {
                h0 = h0.min(0.5 * d);
            }
        }
        let start = e + h0 * dir;
        let x = start.re;
        let mut g = self.top_value(x)?;
        let crossings = self.column_crossings(x, start.im, self.y_top)?;
        for &(_, cut_idx) in &crossings {
            if !have[cut_idx] {
                return Err(Error::PathBlocked);
            }
        }
        g = self.integrate_down(x, self.y_top, start.im, g, &crossings)?;
        // Final approach k = e + dir tau^2.
        let t0 = h0.sqrt();
        let seg = integrate_fn(
            |t: C64| {
                let tau = t.re;
                let k = e + dir * (tau * tau);
                self.spec.eval_unchecked(k) * dir * 2.0 * tau
            },
            c64(t0, 0.0),
            c64(1e-9, 0.0),
            self.tol,
        )?
        .value;
        Ok(g + seg)
    }

    /// g at (x, y_top): anchor top value plus horizontal leg.
    fn top_value(&self, x: f64) -> Result<C64> {
        let leg = integrate_fn(
            |k| self.spec.eval_unchecked(k),
            c64(self.k0, self.y_top),
            c64(x, self.y_top),
            self.tol,
        )?
        .value;
        Ok(self.g_top_anchor + leg)
    }

    /// Crossings (y, cut index) of the vertical line at `x`, between heights
    /// y_lo and y_hi, sorted by descending y. Vertical cuts never cross a
    /// (nudged) column.
    fn column_crossings(&self, x: f64, y_lo: f64, y_hi: f64) -> Result<Vec<(f64, usize)>> {
        let mut out = Vec::new();
        for (i, cut) in self.spec.surface.cuts.iter().enumerate() {
            let dx = cut.q.re - cut.p.re;
            if dx.abs() < 1e-12 {
                // A column on a vertical cut's line is blocked only if the
                // descent range actually enters the cut (descending onto its
                // top endpoint from above is fine).
                if (x - cut.p.re).abs() < 1e-12 && y_lo < cut.top().im - 1e-12 {
                    return Err(Error::PathBlocked);
                }
                continue;
            }
            let t = (x - cut.p.re) / dx;
            if t > 1e-9 && t < 1.0 - 1e-9 {
                let y_c = cut.p.im + t * (cut.q.im - cut.p.im);
                if y_c > y_lo + 1e-13 && y_c < y_hi - 1e-13 {
                    out.push((y_c, i));
                }
            }
        }
        out.sort_by(|a, b| b.0.total_cmp(&a.0));
        Ok(out)
    }

    /// Integrate g' down the column at `x` from y_hi to y_lo starting from
    /// value `g`, applying the two-sided boundary relation g_below = c - g
    /// at each cut crossing.
    fn integrate_down(
        &self,
        x: f64,
        y_hi: f64,
        y_lo: f64,
        mut g: C64,
        crossings: &[(f64, usize)],
    ) -> Result<C64> {
        let mut y_cur = y_hi;
        for &(y_c, cut_idx) in crossings {
            g += integrate_fn(
                |k| self.spec.eval_unchecked(k),
                c64(x, y_cur),
                c64(x, y_c),
                self.tol,
            )?
            .value;
            g = self.cut_constants[cut_idx] - g;
            y_cur = y_c;
        }
        g += integrate_fn(
            |k| self.spec.eval_unchecked(k),
            c64(x, y_cur),
            c64(x, y_lo),
            self.tol,
        )?
        .value;
        Ok(g)
    }

    /// Evaluate g at `z` (any half-plane; the lower half uses Schwarz
    /// symmetry g(conj k) = conj g(k)).
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.im < 0.0 {
            return Ok(self.eval(z.conj())?.conj());
        }
        // Branch endpoints have well-defined values from the cut constants.
        for (i, cut) in self.spec.surface.cuts.iter().enumerate() {
            for e in cut.endpoints() {
                if (z - e).norm() < 1e-9 {
                    return Ok(self.cut_constants[i] / 2.0);
                }
            }
        }
        let mut x = z.re;
        // Nudge off vertical-cut columns.
        for cut in &self.spec.surface.cuts {
            if (cut.q.re - cut.p.re).abs() < 1e-12 && (x - cut.p.re).abs() < 1e-12 {
                x += 1e-9;
            }
        }
        let scale = 1.0 + z.norm();
        if self.spec.surface.dist_to_cuts(c64(x, z.im)) < 1e-13 * scale {
            return Err(Error::OnCutWithoutSide);
        }
        if z.im >= self.y_top {
            let up = integrate_fn(
                |k| self.spec.eval_unchecked(k),
                c64(x, self.y_top),
                c64(x, z.im),
                self.tol,
            )?
            .value;
            return Ok(self.top_value(x)? + up);
        }
        let g_top = self.top_value(x)?;
        let crossings = self.column_crossings(x, z.im, self.y_top)?;
        self.integrate_down(x, self.y_top, z.im, g_top, &crossings)
    }

    /// Im g at `z`.
    pub fn eval_im(&self, z: C64) -> Result<f64> {
        Ok(self.eval(z)?.im)
    }

    /// g at every height of a descending list `ys` (all >= 0) on the column
    /// at `x`. Much cheaper than repeated point evaluation.
    pub fn column(&self, x: f64, ys: &[f64]) -> Result<Vec<C64>> {
        debug_assert!(ys.windows(2).all(|w| w[0] > w[1]));
        let mut x = x;
        for cut in &self.spec.surface.cuts {
            if (cut.q.re - cut.p.re).abs() < 1e-12 && (x - cut.p.re).abs() < 1e-12 {
                x += 1e-9;
            }
        }
        let mut out = Vec::with_capacity(ys.len());
        let y_start = ys[0].max(self.y_top);
        let mut g = self.top_value(x)?;
        if y_start > self.y_top {
            g += integrate_fn(
                |k| self.spec.eval_unchecked(k),
                c64(x, self.y_top),
                c64(x, y_start),
                self.tol,
            )?
            .value;
        }
        let mut y_cur = y_start;
        let all_crossings = self.column_crossings(x, ys[ys.len() - 1], y_start)?;
        let mut cross_iter = all_crossings.iter().peekable();
        for &y in ys {
            while let Some(&&(y_c, cut_idx)) = cross_iter.peek() {
                if y_c <= y {
                    break;
                }
                g += integrate_fn(
                    |k| self.spec.eval_unchecked(k),
                    c64(x, y_cur),
                    c64(x, y_c),
                    self.tol,
                )?
                .value;
                g = self.cut_constants[cut_idx] - g;
                y_cur = y_c;
                cross_iter.next();
            }
            if (y - y_cur).abs() > 0.0 {
                g += integrate_fn(
                    |k| self.spec.eval_unchecked(k),
                    c64(x, y_cur),
                    c64(x, y),
                    self.tol,
                )?
                .value;
                y_cur = y;
            }
            out.push(g);
        }
        Ok(out)
    }
}
