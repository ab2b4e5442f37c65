use super::geval::GEvaluator;
use super::gprime::GPrimeSpec;
use crate::{c64, Result, C64};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Rectangular window in the complex plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Window {
    pub re0: f64,
    pub re1: f64,
    pub im0: f64,
    pub im1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SignatureEventKind {
    HitsE1,
    HitsE2,
    ZerosMerge,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SignatureEvent {
    pub kind: SignatureEventKind,
    pub xi: f64,
    /// Distance (hits events) or zero gap (merge events) that triggered.
    pub metric: f64,
}

/// Traced level set Im g = 0 with sampled sign field and detected events.
#[derive(Debug, Clone)]
pub struct SignatureTable {
    pub xi: f64,
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    /// Point chains approximating Im g = 0 (both half-planes).
    pub polylines: Vec<Vec<(f64, f64)>>,
    /// Sign of Im g at cell centers, row-major, ny rows by nx columns
    /// covering the full (mirrored) window.
    pub region_signs: Vec<Vec<i8>>,
    /// Real-axis crossing abscissas of the non-real branches.
    pub real_crossings: Vec<f64>,
    pub events: Vec<SignatureEvent>,
}

const LEVEL_TOL: f64 = 1e-8;

impl SignatureTable {
    /// March the level set Im g = 0 on an nx-by-ny grid over `window`.
    ///
    /// Only the upper half is computed; the lower half is mirrored through
    /// the Schwarz antisymmetry of Im g. `acknowledge` is forwarded to the
    /// g evaluator's condition check.
    pub fn build(
        spec: &GPrimeSpec,
        window: Window,
        nx: usize,
        ny: usize,
        acknowledge: bool,
    ) -> Result<SignatureTable> {
        let ev = GEvaluator::with_tol(spec, acknowledge, 1e-9)?;
        let im_hi = window.im1.abs().max(window.im0.abs());
        let half_rows = (ny / 2).max(8);
        let dy = im_hi / half_rows as f64;
        let dx = (window.re1 - window.re0) / nx as f64;

        // Node rows at (j + 1/2) dy, j = half_rows-1 .. 0 (descending), so the
        // axis row is excluded and mirroring is exact.
        let ys: Vec<f64> = (0..half_rows)
            .rev()
            .map(|j| (j as f64 + 0.5) * dy)
            .collect();
        let xs: Vec<f64> = (0..=nx).map(|i| window.re0 + i as f64 * dx).collect();

        let columns: Vec<Vec<f64>> = xs
            .par_iter()
            .map(|&x| {
                ev.column(x, &ys)
                    .map(|col| col.iter().map(|g| g.im).collect())
            })
            .collect::<Result<Vec<_>>>()?;

        // vals[i][j]: Im g at (xs[i], ys_asc[j]) with rows ascending in y.
        let rows = half_rows;
        let val = |i: usize, j: usize| columns[i][rows - 1 - j];
        let y_at = |j: usize| (j as f64 + 0.5) * dy;

        // Marching squares over the upper half grid.
        let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();
        for i in 0..nx {
            for j in 0..rows - 1 {
                let f00 = val(i, j);
                let f10 = val(i + 1, j);
                let f01 = val(i, j + 1);
                let f11 = val(i + 1, j + 1);
                let x0 = xs[i];
                let x1 = xs[i + 1];
                let y0 = y_at(j);
                let y1 = y_at(j + 1);
                let near_cut = spec
                    .surface
                    .cuts
                    .iter()
                    .any(|c| c.dist_to_point(c64(0.5 * (x0 + x1), 0.5 * (y0 + y1))) < dx + dy);
                let mut pts: Vec<(f64, f64)> = Vec::new();
                let mut edge = |fa: f64, fb: f64, pa: (f64, f64), pb: (f64, f64)| {
                    if (fa > 0.0) != (fb > 0.0) {
                        let t = fa / (fa - fb);
                        let lin = (pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1));
                        // Polish the crossing along the grid edge itself.
                        let p = if near_cut {
                            lin
                        } else {
                            refine_on_edge(&ev, pa, pb, fa, fb, lin)
                        };
                        pts.push(p);
                    }
                };
                edge(f00, f10, (x0, y0), (x1, y0));
                edge(f10, f11, (x1, y0), (x1, y1));
                edge(f11, f01, (x1, y1), (x0, y1));
                edge(f01, f00, (x0, y1), (x0, y0));
                if pts.len() == 2 {
                    segments.push((pts[0], pts[1]));
                } else if pts.len() == 4 {
                    // Saddle cell: connect by pairs along x.
                    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
                    segments.push((pts[0], pts[1]));
                    segments.push((pts[2], pts[3]));
                }
            }
        }

        let upper_polylines = chain_segments(&segments, dx.min(dy) * 1e-6);
        let mut polylines = upper_polylines.clone();
        for pl in &upper_polylines {
            polylines.push(pl.iter().map(|&(x, y)| (x, -y)).collect());
        }

        // Sign field at cell centers over the mirrored window; corner-sum
        // signs are consistent with the traced crossings by construction.
        let mut region_signs: Vec<Vec<i8>> = Vec::with_capacity(2 * (rows - 1));
        let mut upper_rows: Vec<Vec<i8>> = Vec::new();
        for j in 0..rows - 1 {
            let mut row: Vec<i8> = Vec::with_capacity(nx);
            for i in 0..nx {
                let s = val(i, j) + val(i + 1, j) + val(i, j + 1) + val(i + 1, j + 1);
                row.push(if s >= 0.0 { 1 } else { -1 });
            }
            upper_rows.push(row);
        }
        for row in upper_rows.iter().rev() {
            region_signs.push(row.iter().map(|&s| -s).collect());
        }
        region_signs.extend(upper_rows.iter().cloned());

        // Real-axis crossings from the two lowest rows with Richardson
        // extrapolation x(0) ~ (4 x(eps/2) - x(eps)) / 3.
        let cross_rows = [0.5 * dy, 0.25 * dy];
        let mut per_row: Vec<Vec<f64>> = Vec::new();
        for &eps in &cross_rows {
            per_row.push(axis_crossings(&ev, spec, &xs, eps)?);
        }
        let real_crossings = pair_richardson(&per_row[0], &per_row[1], dx);

        let mut table = SignatureTable {
            xi: spec.xi,
            window,
            nx,
            ny,
            polylines,
            region_signs,
            real_crossings,
            events: Vec::new(),
        };
        table.detect_events(spec, im_hi);
        Ok(table)
    }

    fn detect_events(&mut self, spec: &GPrimeSpec, im_hi: f64) {
        // The infinite branch is any polyline reaching the top band of the
        // window.
        let top_band = im_hi - 2.0 * im_hi / (self.ny.max(2) as f64);
        let e_points: Vec<(SignatureEventKind, C64)> = spec
            .surface
            .cuts
            .iter()
            .enumerate()
            .filter(|(_, c)| (c.p - c.q.conj()).norm() < 1e-12)
            .map(|(i, c)| {
                let kind = if i == 0 {
                    SignatureEventKind::HitsE1
                } else {
                    SignatureEventKind::HitsE2
                };
                (kind, c.top())
            })
            .collect();
        for pl in &self.polylines {
            if !pl.iter().any(|&(_, y)| y >= top_band) {
                continue;
            }
            for &(kind, e) in &e_points {
                let d = pl
                    .iter()
                    .map(|&(x, y)| (c64(x, y) - e).norm())
                    .fold(f64::INFINITY, f64::min);
                if d < 1e-3 {
                    self.events.push(SignatureEvent {
                        kind,
                        xi: self.xi,
                        metric: d,
                    });
                }
            }
        }
        let mut zeros = spec.real_zeros.clone();
        zeros.sort_by(f64::total_cmp);
        for w in zeros.windows(2) {
            if w[1] - w[0] < 1e-6 {
                self.events.push(SignatureEvent {
                    kind: SignatureEventKind::ZerosMerge,
                    xi: self.xi,
                    metric: w[1] - w[0],
                });
            }
        }
        self.events.dedup_by(|a, b| a.kind == b.kind);
    }

    /// CSV rows: xi, branch_id, re_k, im_k.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("xi,branch_id,re_k,im_k\n");
        for (id, pl) in self.polylines.iter().enumerate() {
            for &(x, y) in pl {
                out.push_str(&format!("{:.9},{},{:.9},{:.9}\n", self.xi, id, x, y));
            }
        }
        out
    }

    /// SVG: shaded sign regions plus one path per polyline.
    pub fn to_svg(&self) -> String {
        let w = 800.0;
        let h = 500.0;
        let im_hi = self.window.im1.abs().max(self.window.im0.abs());
        let sx = w / (self.window.re1 - self.window.re0);
        let sy = h / (2.0 * im_hi);
        let px = |x: f64| (x - self.window.re0) * sx;
        let py = |y: f64| (im_hi - y) * sy;
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n"
        ));
        // Sign regions: run-length merged rectangles per row.
        let n_rows = self.region_signs.len();
        let cell_h = h / n_rows as f64;
        for (r, row) in self.region_signs.iter().enumerate() {
            let y = r as f64 * cell_h;
            let cell_w = w / row.len() as f64;
            let mut i = 0;
            while i < row.len() {
                let s = row[i];
                let mut j = i;
                while j < row.len() && row[j] == s {
                    j += 1;
                }
                if s < 0 {
                    svg.push_str(&format!(
                        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#d9e7f5\"/>\n",
                        i as f64 * cell_w,
                        y,
                        (j - i) as f64 * cell_w,
                        cell_h
                    ));
                }
                i = j;
            }
        }
        for pl in &self.polylines {
            if pl.is_empty() {
                continue;
            }
            let mut d = String::new();
            for (n, &(x, y)) in pl.iter().enumerate() {
                let c = if n == 0 { 'M' } else { 'L' };
                d.push_str(&format!("{c}{:.3} {:.3} ", px(x), py(y)));
            }
            svg.push_str(&format!(
                "<path d=\"{}\" fill=\"none\" stroke=\"#163a5f\" stroke-width=\"1.2\"/>\n",
                d.trim_end()
            ));
        }
        svg.push_str(&format!(
            "<line x1=\"0\" y1=\"{0:.2}\" x2=\"{w}\" y2=\"{0:.2}\" stroke=\"#888\" stroke-width=\"0.6\"/>\n",
            py(0.0)
        ));
        svg.push_str("</svg>\n");
        svg
    }
}

/// Polish a level crossing along the grid edge [pa, pb] whose corner values
/// fa, fb have opposite signs, starting from the linear interpolant.
fn refine_on_edge(
    ev: &GEvaluator,
    pa: (f64, f64),
    pb: (f64, f64),
    fa: f64,
    fb: f64,
    fallback: (f64, f64),
) -> (f64, f64) {
    let za = c64(pa.0, pa.1);
    let zb = c64(pb.0, pb.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let mut f0 = fa;
    let _ = fb;
    for _ in 0..60 {
        let tm = 0.5 * (t0 + t1);
        let zm = za + (zb - za) * tm;
        let fm = match ev.eval(zm) {
            Ok(g) => g.im,
            Err(_) => return fallback,
        };
        if fm.abs() <= LEVEL_TOL {
            return (zm.re, zm.im);
        }
        if (fm > 0.0) == (f0 > 0.0) {
            t0 = tm;
            f0 = fm;
        } else {
            t1 = tm;
        }
    }
    let zm = za + (zb - za) * (0.5 * (t0 + t1));
    (zm.re, zm.im)
}

/// Chain unordered segments into polylines by matching endpoints.
fn chain_segments(segments: &[((f64, f64), (f64, f64))], quant: f64) -> Vec<Vec<(f64, f64)>> {
    let q = |p: (f64, f64)| -> (i64, i64) {
        (
            (p.0 / quant.max(1e-300)).round() as i64,
            (p.1 / quant.max(1e-300)).round() as i64,
        )
    };
    let mut adj: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, seg) in segments.iter().enumerate() {
        adj.entry(q(seg.0)).or_default().push(i);
        adj.entry(q(seg.1)).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![segments[start].0, segments[start].1];
        // Extend forward then backward.
        for end in 0..2 {
            loop {
                let tip = *chain.last().unwrap();
                let key = q(tip);
                let next = adj
                    .get(&key)
                    .and_then(|ids| ids.iter().find(|&&i| !used[i]).copied());
                match next {
                    Some(i) => {
                        used[i] = true;
                        let (a, b) = segments[i];
                        chain.push(if q(a) == key { b } else { a });
                    }
                    None => break,
                }
            }
            if end == 0 {
                chain.reverse();
            }
        }
        polylines.push(chain);
    }
    polylines
}

/// Zero crossings of Im g along the horizontal line at height `eps`,
/// excluding discontinuous flips across branch cuts.
fn axis_crossings(
    ev: &GEvaluator,
    spec: &GPrimeSpec,
    xs: &[f64],
    eps: f64,
) -> Result<Vec<f64>> {
    let vals: Vec<f64> = xs
        .par_iter()
        .map(|&x| ev.eval_im(c64(x, eps)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    'cell: for i in 0..xs.len() - 1 {
        if (vals[i] > 0.0) == (vals[i + 1] > 0.0) {
            continue;
        }
        // Discard flips across a cut at this height.
        for cut in &spec.surface.cuts {
            let (ylo, yhi) = (cut.p.im.min(cut.q.im), cut.p.im.max(cut.q.im));
            if eps >= ylo && eps <= yhi {
                let t = if (cut.q.im - cut.p.im).abs() > 1e-300 {
                    (eps - cut.p.im) / (cut.q.im - cut.p.im)
                } else {
                    0.5
                };
                let x_cut = cut.p.re + t * (cut.q.re - cut.p.re);
                if x_cut > xs[i] - 1e-12 && x_cut < xs[i + 1] + 1e-12 {
                    continue 'cell;
                }
            }
        }
        let (mut a, mut b) = (xs[i], xs[i + 1]);
        let mut fa = vals[i];
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            let fm = ev.eval_im(c64(m, eps))?;
            if fm.abs() < 1e-13 {
                a = m;
                b = m;
                break;
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Richardson-extrapolate crossings found at eps and eps/2 (paired by
/// proximity within one cell).
fn pair_richardson(at_eps: &[f64], at_half: &[f64], dx: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for &x1 in at_eps {
        if let Some(&x2) = at_half
            .iter()
            .min_by(|a, b| (*a - x1).abs().total_cmp(&(*b - x1).abs()))
        {
            if (x2 - x1).abs() < 2.0 * dx {
                out.push((4.0 * x2 - x1) / 3.0);
                continue;
            }
        }
        out.push(x1);
    }
    out.sort_by(f64::total_cmp);
    out
}
