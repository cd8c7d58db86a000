//! Closed C1 piecewise-cubic interpolation through an ordered point cycle.
//!
//! Centripetal chord-length parameterization (alpha = 1/2) keeps the tight
//! end loops of a shade path free of cusp overshoot.

use crate::planar::{Point2, Vec2};

/// Knot spacing exponent for the centripetal scheme.
const ALPHA: f64 = 0.5;

/// Evaluator for a closed Catmull-Rom spline through `points`.
pub struct ClosedSpline {
    points: Vec<Point2>,
    /// Per-segment knot spans, d[i] = |p[i+1]-p[i]|^alpha.
    spans: Vec<f64>,
    /// Per-knot derivatives dP/dt.
    tangents: Vec<Vec2>,
}

impl ClosedSpline {
    /// Builds the spline. Adjacent points must be distinct.
    pub fn new(points: &[Point2]) -> ClosedSpline {
        let n = points.len();
        assert!(n >= 3, "closed spline needs at least 3 points");
        let spans: Vec<f64> = (0..n)
            .map(|i| {
                let d = points[(i + 1) % n].distance(points[i]);
                assert!(d > 0.0, "coincident adjacent control points");
                d.powf(ALPHA)
            })
            .collect();
        let tangents = (0..n)
            .map(|i| {
                let prev = (i + n - 1) % n;
                let d_prev = spans[prev];
                let d_next = spans[i];
                let back = points[i] - points[prev];
                let fwd = points[(i + 1) % n] - points[i];
                back * (d_next / (d_prev * (d_prev + d_next)))
                    + fwd * (d_prev / (d_next * (d_prev + d_next)))
            })
            .collect();
        ClosedSpline {
            points: points.to_vec(),
            spans,
            tangents,
        }
    }

    pub fn segment_count(&self) -> usize {
        self.points.len()
    }

    pub fn spans(&self) -> &[f64] {
        &self.spans
    }

    /// Point on segment `seg` at local parameter `s` in [0, 1].
    pub fn eval(&self, seg: usize, s: f64) -> Point2 {
        let n = self.points.len();
        let p0 = self.points[seg];
        let p1 = self.points[(seg + 1) % n];
        let d = self.spans[seg];
        let m0 = self.tangents[seg] * d;
        let m1 = self.tangents[(seg + 1) % n] * d;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Point2::new(
            h00 * p0.x + h10 * m0.x + h01 * p1.x + h11 * m1.x,
            h00 * p0.z + h10 * m0.z + h01 * p1.z + h11 * m1.z,
        )
    }
}

/// Samples a closed spline into a polyline whose first and last vertices are
/// equal and whose vertices include every control point.
///
/// The distinct-vertex count is `samples` rounded up to even so the two
/// point-symmetric halves of a shade path receive identical sample
/// allocations; per segment the parameter is sampled uniformly, with counts
/// proportional to the knot spans of the first half mirrored onto the second.
pub fn sample_closed(spline: &ClosedSpline, samples: usize) -> Vec<Point2> {
    let n_seg = spline.segment_count();
    let mut distinct = samples.max(n_seg);
    if distinct % 2 != 0 {
        distinct += 1;
    }
    let counts = if n_seg % 2 == 0 {
        let half_segs = n_seg / 2;
        let mut counts = allocate(&spline.spans()[..half_segs], distinct / 2);
        let mirror = counts.clone();
        counts.extend(mirror);
        counts
    } else {
        allocate(spline.spans(), distinct)
    };
    let mut out = Vec::with_capacity(distinct + 1);
    for (seg, &k) in counts.iter().enumerate() {
        for j in 0..k {
            out.push(spline.eval(seg, j as f64 / k as f64));
        }
    }
    out.push(out[0]);
    out
}

/// Largest-remainder apportionment of `total` samples over `weights`,
/// each bucket receiving at least one.
fn allocate(weights: &[f64], total: usize) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| (q.floor() as usize).max(1)).collect();
    let mut assigned: usize = counts.iter().sum();
    // Hand out remaining samples by descending fractional part, index as
    // tie-break; reclaim overshoot from the largest buckets.
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    let mut i = 0;
    while assigned < total {
        counts[order[i % order.len()]] += 1;
        assigned += 1;
        i += 1;
    }
    while assigned > total {
        let max_i = (0..counts.len())
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
            .unwrap();
        if counts[max_i] > 1 {
            counts[max_i] -= 1;
            assigned -= 1;
        } else {
            break;
        }
    }
    counts
}
