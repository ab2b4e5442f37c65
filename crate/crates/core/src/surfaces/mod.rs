//! Hyperelliptic surface data and g-function machinery.

mod geval;
mod gprime;
mod signature;
mod thresholds;

pub use geval::GEvaluator;
pub use gprime::{laurent_top3, GPrimeSpec};
pub use signature::{SignatureEvent, SignatureEventKind, SignatureTable, Window};
pub use thresholds::{
    ab_threshold, find_xi_e1, find_xi_merge, xi_e1_closed_form, xi_merge_closed_form,
};

use crate::error::Error;
use crate::quad::{point_segment_dist, Path};
use crate::{Result, C64};

/// sqrt((k - p)(k - q)) with branch cut exactly on the segment [p, q] and
/// asymptotic behavior ~ k as k -> infinity.
///
/// Uses the Zhukovsky-type form d*u*sqrt(1 - 1/u^2) with u = (k - m)/d,
/// m = (p+q)/2, d = (q-p)/2; the principal square root of 1 - 1/u^2 is
/// discontinuous precisely for u in [-1, 1], i.e. for k on the segment.
pub fn sqrt_pair(p: C64, q: C64, k: C64) -> C64 {
    let m = 0.5 * (p + q);
    let d = 0.5 * (q - p);
    if d.norm() == 0.0 {
        return k - m;
    }
    let u = (k - m) / d;
    d * u * (1.0 - 1.0 / (u * u)).sqrt()
}

/// A branch cut: straight segment joining two branch points.
#[derive(Debug, Clone, Copy)]
pub struct Cut {
    pub p: C64,
    pub q: C64,
}

impl Cut {
    /// Conjugate-pair cut [conj(p), p] for a point with Im p > 0.
    pub fn conjugate_pair(p: C64) -> Self {
        Cut { p: p.conj(), q: p }
    }

    pub fn endpoints(&self) -> [C64; 2] {
        [self.p, self.q]
    }

    /// Endpoint with the larger imaginary part.
    pub fn top(&self) -> C64 {
        if self.p.im >= self.q.im {
            self.p
        } else {
            self.q
        }
    }

    pub fn length(&self) -> f64 {
        (self.q - self.p).norm()
    }

    pub fn dist_to_point(&self, z: C64) -> f64 {
        point_segment_dist(z, self.p, self.q)
    }

    /// Distance between two non-intersecting segments (min over the four
    /// endpoint-to-segment distances).
    pub fn dist_to_cut(&self, other: &Cut) -> f64 {
        let d1 = self.dist_to_point(other.p).min(self.dist_to_point(other.q));
        let d2 = other.dist_to_point(self.p).min(other.dist_to_point(self.q));
        d1.min(d2)
    }

    fn sqrt_factor(&self, k: C64) -> C64 {
        sqrt_pair(self.p, self.q, k)
    }

    /// Boundary-value offset direction for the given side: `Plus` is the left
    /// of the orientation p -> q.
    pub fn side_normal(&self, plus: bool) -> C64 {
        let d = self.q - self.p;
        let n = C64::new(0.0, 1.0) * d / d.norm();
        if plus {
            n
        } else {
            -n
        }
    }
}

/// Ordered list of branch cuts defining the two-sheeted surface
/// w^2 = prod (k - p_i), with the sheet fixed by w(k) ~ k^{#cuts} at infinity.
///
/// Invariants: cuts are pairwise disjoint and the cut set is symmetric under
/// conjugation (each cut is a conjugate pair or has a mirrored partner), so
/// that w(conj k) = conj w(k) off the cuts.
#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    pub cuts: Vec<Cut>,
}

impl SurfaceSpec {
    /// Surface from conjugate branch-point pairs (upper members given).
    pub fn from_upper_points(points: &[C64]) -> Self {
        SurfaceSpec {
            cuts: points.iter().map(|&p| Cut::conjugate_pair(p)).collect(),
        }
    }

    /// Genus-3 surface: the two conjugate pairs E1, E2 plus the mirrored cut
    /// pair [alpha, beta] and [conj alpha, conj beta].
    pub fn genus3(e1: C64, e2: C64, alpha: C64, beta: C64) -> Self {
        SurfaceSpec {
            cuts: vec![
                Cut::conjugate_pair(e1),
                Cut::conjugate_pair(e2),
                Cut { p: alpha, q: beta },
                Cut {
                    p: alpha.conj(),
                    q: beta.conj(),
                },
            ],
        }
    }

    pub fn genus(&self) -> usize {
        self.cuts.len() - 1
    }

    /// Clearance radius used when laying out cycles and paths near the cuts:
    /// min(smallest gap between cuts, 1) / 4.
    pub fn clearance(&self) -> f64 {
        let mut gap = 1.0f64;
        for i in 0..self.cuts.len() {
            for j in i + 1..self.cuts.len() {
                gap = gap.min(self.cuts[i].dist_to_cut(&self.cuts[j]));
            }
        }
        gap.min(1.0) / 4.0
    }

    /// Clearance appropriate for a cycle around cut `idx`: distance from that
    /// cut to the nearest other cut, capped at 1, divided by 4.
    pub fn clearance_around(&self, idx: usize) -> f64 {
        let mut gap = 1.0f64;
        for (j, c) in self.cuts.iter().enumerate() {
            if j != idx {
                gap = gap.min(self.cuts[idx].dist_to_cut(c));
            }
        }
        gap.min(1.0) / 4.0
    }

    pub fn dist_to_cuts(&self, z: C64) -> f64 {
        self.cuts
            .iter()
            .map(|c| c.dist_to_point(z))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn on_cut(&self, k: C64) -> Option<usize> {
        self.cuts
            .iter()
            .position(|c| c.dist_to_point(k) < 1e-13 * (1.0 + k.norm()))
    }

    /// Branch-consistent w(k); errs on the cuts.
    pub fn w_eval(&self, k: C64) -> Result<C64> {
        if self.on_cut(k).is_some() {
            return Err(Error::OnCutWithoutSide);
        }
        Ok(self.w_unchecked(k))
    }

    pub fn w_unchecked(&self, k: C64) -> C64 {
        self.cuts.iter().map(|c| c.sqrt_factor(k)).product()
    }

    /// Boundary value of w on cut `idx` from the given side (Richardson
    /// extrapolation from two offsets along the side normal).
    pub fn w_boundary(&self, idx: usize, k: C64, plus: bool) -> C64 {
        let n = self.cuts[idx].side_normal(plus);
        let d = 1e-8 * n;
        2.0 * self.w_unchecked(k + d) - self.w_unchecked(k + 2.0 * d)
    }

    /// Counterclockwise cycle around cut `idx`: a rectangle aligned with the
    /// cut at the given clearance (extended past both endpoints).
    pub fn a_cycle(&self, idx: usize, clearance: f64) -> Path {
        let cut = &self.cuts[idx];
        let (p, q) = if cut.p.im <= cut.q.im {
            (cut.p, cut.q)
        } else {
            (cut.q, cut.p)
        };
        let dir = q - p;
        let len = dir.norm();
        let (chat, nhat) = if len == 0.0 {
            (C64::new(0.0, 1.0), C64::new(-1.0, 0.0))
        } else {
            let c = dir / len;
            (c, C64::new(0.0, 1.0) * c)
        };
        let c = clearance;
        let bl = p - c * chat + c * nhat;
        let br = p - c * chat - c * nhat;
        let tr = q + c * chat - c * nhat;
        let tl = q + c * chat + c * nhat;
        Path::new(vec![
            crate::quad::Segment::Line { a: bl, b: br },
            crate::quad::Segment::Line { a: br, b: tr },
            crate::quad::Segment::Line { a: tr, b: tl },
            crate::quad::Segment::Line { a: tl, b: bl },
        ])
    }

    /// Verify that `path` keeps the clearance distance from every cut.
    pub fn check_path_clearance(&self, path: &Path, clearance: f64) -> Result<()> {
        // Slack covers the O(ulp) rounding of the sampled geometry even when
        // the clearance itself is tiny.
        let slack = clearance * 1e-9 + 1e-12;
        for cut in &self.cuts {
            let d = path.dist_to_segment(cut.p, cut.q, 48);
            if d < clearance - slack {
                return Err(Error::CutCollision {
                    clearance,
                    dist: d,
                });
            }
        }
        Ok(())
    }
}
