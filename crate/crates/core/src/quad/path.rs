use crate::C64;

/// A straight segment or circular arc in the complex plane.
#[derive(Debug, Clone, Copy)]
pub enum Segment {
    Line { a: C64, b: C64 },
    /// Arc traversed from angle `theta0` to `theta1` (radians, counterclockwise
    /// when `theta1 > theta0`).
    Arc {
        center: C64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
}

impl Segment {
    pub fn start(&self) -> C64 {
        match *self {
            Segment::Line { a, .. } => a,
            Segment::Arc {
                center,
                radius,
                theta0,
                ..
            } => center + C64::from_polar(radius, theta0),
        }
    }

    pub fn end(&self) -> C64 {
        match *self {
            Segment::Line { b, .. } => b,
            Segment::Arc {
                center,
                radius,
                theta1,
                ..
            } => center + C64::from_polar(radius, theta1),
        }
    }

    /// Sampled points along the segment (used for clearance checks).
    pub fn sample(&self, n: usize) -> Vec<C64> {
        (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                match *self {
                    Segment::Line { a, b } => a + (b - a) * t,
                    Segment::Arc {
                        center,
                        radius,
                        theta0,
                        theta1,
                    } => center + C64::from_polar(radius, theta0 + (theta1 - theta0) * t),
                }
            })
            .collect()
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { a, b } => Segment::Line { a: b, b: a },
            Segment::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => Segment::Arc {
                center,
                radius,
                theta0: theta1,
                theta1: theta0,
            },
        }
    }
}

/// An oriented chain of segments. Invariant: segments are connected
/// end-to-start; for closed paths the last endpoint returns to the first
/// start point within 1e-14.
#[derive(Debug, Clone)]
pub struct Path {
    pub segments: Vec<Segment>,
}

impl Path {
    pub fn new(segments: Vec<Segment>) -> Self {
        debug_assert!(Path::is_connected(&segments), "path segments must chain");
        Path { segments }
    }

    fn is_connected(segs: &[Segment]) -> bool {
        segs.windows(2)
            .all(|w| (w[0].end() - w[1].start()).norm() < 1e-12)
    }

    pub fn line(a: C64, b: C64) -> Self {
        Path {
            segments: vec![Segment::Line { a, b }],
        }
    }

    /// Closed counterclockwise rectangle with corners `lo` (bottom-left) and
    /// `hi` (top-right).
    pub fn closed_rectangle(lo: C64, hi: C64) -> Self {
        let bl = lo;
        let br = C64::new(hi.re, lo.im);
        let tr = hi;
        let tl = C64::new(lo.re, hi.im);
        Path {
            segments: vec![
                Segment::Line { a: bl, b: br },
                Segment::Line { a: br, b: tr },
                Segment::Line { a: tr, b: tl },
                Segment::Line { a: tl, b: bl },
            ],
        }
    }

    /// Counterclockwise circle.
    pub fn circle(center: C64, radius: f64) -> Self {
        Path {
            segments: vec![Segment::Arc {
                center,
                radius,
                theta0: 0.0,
                theta1: std::f64::consts::TAU,
            }],
        }
    }

    /// Counterclockwise stadium around the segment [p, q] at clearance `r`:
    /// two straight sides parallel to the segment plus two half-circle caps.
    pub fn stadium(p: C64, q: C64, r: f64) -> Self {
        let d = (q - p) / (q - p).norm();
        let n = C64::new(0.0, 1.0) * d;
        let ang_d = d.arg();
        Path {
            segments: vec![
                Segment::Line {
                    a: p - r * n,
                    b: q - r * n,
                },
                Segment::Arc {
                    center: q,
                    radius: r,
                    theta0: ang_d - std::f64::consts::FRAC_PI_2,
                    theta1: ang_d + std::f64::consts::FRAC_PI_2,
                },
                Segment::Line {
                    a: q + r * n,
                    b: p + r * n,
                },
                Segment::Arc {
                    center: p,
                    radius: r,
                    theta0: ang_d + std::f64::consts::FRAC_PI_2,
                    theta1: ang_d + 1.5 * std::f64::consts::PI,
                },
            ],
        }
    }

    pub fn is_closed(&self) -> bool {
        match (self.segments.first(), self.segments.last()) {
            (Some(f), Some(l)) => (l.end() - f.start()).norm() < 1e-14 * self.scale().max(1.0),
            _ => false,
        }
    }

    fn scale(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.start().norm().max(s.end().norm()))
            .fold(0.0, f64::max)
    }

    pub fn reversed(&self) -> Path {
        Path {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// Minimum distance from the path to the segment [p, q], by sampling.
    pub fn dist_to_segment(&self, p: C64, q: C64, samples: usize) -> f64 {
        let mut best = f64::INFINITY;
        for seg in &self.segments {
            for z in seg.sample(samples) {
                best = best.min(point_segment_dist(z, p, q));
            }
        }
        best
    }
}

/// Euclidean distance from point `z` to the segment [p, q].
pub fn point_segment_dist(z: C64, p: C64, q: C64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - p).norm();
    }
    let t = ((z - p).re * d.re + (z - p).im * d.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (p + d * t)).norm()
}
