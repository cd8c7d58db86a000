//! The elevation-only shade construction for a torus.
//!
//! Everything happens in the front elevation: the torus outline is a stadium
//! of width `2(R+r)` and height `2r`, and the two profile rings are circles
//! of radius `r` centered on the axis line at `(±R, 0)`. Light follows the
//! drafting convention, descending left to right at 45 degrees in this view.
//!
//! The construction runs in fifteen recorded steps and yields nineteen
//! labeled points; the closed shade path is traced through ten of them in
//! the cyclic order `P, D, n'', H, M, Q, E, o'', I, L`.
//!
//! Three of the prose rules admit more than one geometric reading, so each
//! is an explicit [`InterpretationVariant`] knob. The canonical variant is
//! the one whose incidence checks close exactly; the alternatives are kept
//! so the comparison harness can rank them against the oracle.

use crate::planar::{
    intersect_line_circle, intersect_lines, line_through, perpendicular_foot,
    reflect_direction_across_line, reflect_point_across_line, Circle2, CircleHits, Line2,
    PlanarError, Point2, Tol, TolerancePolicy, Vec2,
};
use crate::spline::{sample_closed, ClosedSpline};
use crate::textfmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("dimensions must be positive, got width {width} x height {height}")]
    NonPositiveDimension { width: f64, height: f64 },
    #[error(
        "spindle torus not supported: width {width} < 2 x height {height}; \
         width must be at least twice the height"
    )]
    SpindleNotSupported { width: f64, height: f64 },
    #[error("incidence check '{assertion}' failed with residual {residual}")]
    InternalInconsistency {
        assertion: &'static str,
        residual: f64,
    },
    #[error("geometry failure: {0}")]
    Planar(#[from] PlanarError),
}

/// Torus outline dimensions in the elevation view, plus the derived radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusElevationSpec {
    /// Full outline width, `2(R + r)`, inches.
    pub width: f64,
    /// Full outline height, `2r`, inches.
    pub height: f64,
    /// Major radius `R` (axis to tube center).
    pub major_radius: f64,
    /// Minor radius `r` (tube radius).
    pub minor_radius: f64,
}

/// `r = height/2`, `R = width/2 - r`. Ring tori have `R > r`; `R = r` is the
/// horn case, and anything narrower (a spindle torus) is rejected.
pub fn derive_radii(width: f64, height: f64) -> Result<(f64, f64), ConstructionError> {
    if !(width > 0.0) || !(height > 0.0) || !width.is_finite() || !height.is_finite() {
        return Err(ConstructionError::NonPositiveDimension { width, height });
    }
    if width < 2.0 * height {
        return Err(ConstructionError::SpindleNotSupported { width, height });
    }
    let minor = height / 2.0;
    let major = width / 2.0 - minor;
    Ok((major, minor))
}

impl TorusElevationSpec {
    pub fn new(width: f64, height: f64) -> Result<Self, ConstructionError> {
        let (major_radius, minor_radius) = derive_radii(width, height)?;
        Ok(TorusElevationSpec {
            width,
            height,
            major_radius,
            minor_radius,
        })
    }

    /// Scene extent used for tolerance scaling.
    pub fn extent(&self) -> f64 {
        self.width.max(self.height)
    }

    /// Compact id used in file names and report rows, e.g. `6x2`.
    pub fn config_id(&self) -> String {
        format!("{}x{}", self.width, self.height)
    }
}

/// How "points H and I originate from perpendicular line drawn from D and E"
/// is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HRule {
    /// Perpendicular to the axis line: H is the second intersection of the
    /// vertical through D with its ring. This reading makes n land exactly
    /// on HD extended.
    VerticalChord,
    /// Perpendicular erected against the ring tangency at D: the chord runs
    /// along the ring normal, so H is the antipode of D on its ring.
    RingTangent,
}

/// How L and M are carried from J and K onto the line LM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LmRule {
    /// L is the orthogonal projection of J onto LM.
    OrthogonalFoot,
    /// L is where the vertical through J meets LM. Typically lands outside
    /// the outline; kept for fidelity to the literal wording.
    VerticalMeet,
}

/// Which ring intersection of the mirrored ray becomes n''.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingPick {
    /// The intersection along the mirrored ray leaving P.
    ForwardRay,
    /// The intersection nearest to the mirrored source point n'.
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterpretationVariant {
    pub h_rule: HRule,
    pub lm_rule: LmRule,
    pub ring_pick: RingPick,
}

impl InterpretationVariant {
    pub const fn canonical() -> Self {
        InterpretationVariant {
            h_rule: HRule::VerticalChord,
            lm_rule: LmRule::OrthogonalFoot,
            ring_pick: RingPick::ForwardRay,
        }
    }

    /// All eight combinations in deterministic enum order.
    pub fn all() -> Vec<InterpretationVariant> {
        let mut out = Vec::with_capacity(8);
        for h_rule in [HRule::VerticalChord, HRule::RingTangent] {
            for lm_rule in [LmRule::OrthogonalFoot, LmRule::VerticalMeet] {
                for ring_pick in [RingPick::ForwardRay, RingPick::Nearest] {
                    out.push(InterpretationVariant {
                        h_rule,
                        lm_rule,
                        ring_pick,
                    });
                }
            }
        }
        out
    }

    pub fn id(&self) -> String {
        format!(
            "{}+{}+{}",
            match self.h_rule {
                HRule::VerticalChord => "vertical_chord",
                HRule::RingTangent => "ring_tangent",
            },
            match self.lm_rule {
                LmRule::OrthogonalFoot => "orthogonal_foot",
                LmRule::VerticalMeet => "vertical_meet",
            },
            match self.ring_pick {
                RingPick::ForwardRay => "forward_ray",
                RingPick::Nearest => "nearest",
            }
        )
    }

    pub fn parse(s: &str) -> Option<InterpretationVariant> {
        let mut parts = s.split('+');
        let h_rule = match parts.next()? {
            "vertical_chord" => HRule::VerticalChord,
            "ring_tangent" => HRule::RingTangent,
            _ => return None,
        };
        let lm_rule = match parts.next()? {
            "orthogonal_foot" => LmRule::OrthogonalFoot,
            "vertical_meet" => LmRule::VerticalMeet,
            _ => return None,
        };
        let ring_pick = match parts.next()? {
            "forward_ray" => RingPick::ForwardRay,
            "nearest" => RingPick::Nearest,
            _ => return None,
        };
        if parts.next().is_some() {
            return None;
        }
        Some(InterpretationVariant {
            h_rule,
            lm_rule,
            ring_pick,
        })
    }
}

/// One recorded construction step.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub index: usize,
    pub op: &'static str,
    pub inputs: Vec<&'static str>,
    pub outputs: Vec<&'static str>,
}

/// Number of steps the construction always records.
pub const STEP_COUNT: usize = 15;

/// The full labeled result of one construction run.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub spec: TorusElevationSpec,
    pub variant: InterpretationVariant,

    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    pub d: Point2,
    pub e: Point2,
    pub p: Point2,
    pub q: Point2,
    pub h: Point2,
    pub i: Point2,
    pub j: Point2,
    pub k: Point2,
    pub l: Point2,
    pub m: Point2,
    pub n: Point2,
    pub o: Point2,
    pub n_prime: Point2,
    pub o_prime: Point2,
    pub n_dprime: Point2,
    pub o_dprime: Point2,

    pub line_ab: Line2,
    pub line_de: Line2,
    pub line_hp: Line2,
    pub line_iq: Line2,
    pub line_lm: Line2,
    pub line_hi: Line2,
    pub line_pd: Line2,
    pub line_qe: Line2,
    pub line_pn: Line2,
    pub line_pn_prime: Line2,
    pub line_pn_dprime: Line2,
    pub line_qo: Line2,
    pub line_qo_prime: Line2,
    pub line_qo_dprime: Line2,

    pub steps: Vec<StepRecord>,
}

/// Display labels paired with point values, in the fixed serialization order.
pub const POINT_LABELS: [&str; 19] = [
    "A", "B", "C", "D", "E", "P", "Q", "H", "I", "J", "K", "L", "M", "n", "o", "n'", "o'", "n''",
    "o''",
];

impl ConstructionTrace {
    pub fn labeled_points(&self) -> [(&'static str, Point2); 19] {
        [
            ("A", self.a),
            ("B", self.b),
            ("C", self.c),
            ("D", self.d),
            ("E", self.e),
            ("P", self.p),
            ("Q", self.q),
            ("H", self.h),
            ("I", self.i),
            ("J", self.j),
            ("K", self.k),
            ("L", self.l),
            ("M", self.m),
            ("n", self.n),
            ("o", self.o),
            ("n'", self.n_prime),
            ("o'", self.o_prime),
            ("n''", self.n_dprime),
            ("o''", self.o_dprime),
        ]
    }

    /// The ten shade-path anchors in trace order.
    pub fn shade_cycle(&self) -> [(&'static str, Point2); 10] {
        [
            ("P", self.p),
            ("D", self.d),
            ("n''", self.n_dprime),
            ("H", self.h),
            ("M", self.m),
            ("Q", self.q),
            ("E", self.e),
            ("o''", self.o_dprime),
            ("I", self.i),
            ("L", self.l),
        ]
    }

    /// The point-symmetric label pairs (second should equal the negation of
    /// the first about C).
    pub fn symmetric_pairs(&self) -> [(&'static str, Point2, Point2); 8] {
        [
            ("sym_de", self.d, self.e),
            ("sym_pq", self.p, self.q),
            ("sym_hi", self.h, self.i),
            ("sym_jk", self.j, self.k),
            ("sym_lm", self.l, self.m),
            ("sym_no", self.n, self.o),
            ("sym_nprime_oprime", self.n_prime, self.o_prime),
            ("sym_ndprime_odprime", self.n_dprime, self.o_dprime),
        ]
    }
}

/// The closed shade curve through the ten traced points.
#[derive(Debug, Clone)]
pub struct ShadePath {
    pub control_labels: [&'static str; 10],
    pub control_points: [Point2; 10],
    /// Closed sampled polyline; first and last vertices are equal.
    pub vertices: Vec<Point2>,
}

fn vertical() -> Vec2 {
    Vec2::new(0.0, 1.0)
}

/// Second intersection of `line` with `ring`, i.e. the hit that is not
/// `known` (which already lies on the ring).
fn other_ring_hit(
    line: Line2,
    ring: Circle2,
    known: Point2,
    tol: &Tol,
) -> Result<Point2, ConstructionError> {
    match intersect_line_circle(line, ring) {
        CircleHits::Two(p, q) => {
            if p.distance(known) > q.distance(known) {
                Ok(p)
            } else {
                Ok(q)
            }
        }
        CircleHits::One(p) if p.distance(known) > tol.length => Ok(p),
        _ => Err(ConstructionError::InternalInconsistency {
            assertion: "ring_chord_second_hit",
            residual: f64::NAN,
        }),
    }
}

/// Runs the fifteen-step construction.
///
/// Incidences the canonical reading guarantees are checked as they are
/// produced and raise [`ConstructionError::InternalInconsistency`] when they
/// fail; the checks that non-canonical variants intentionally break are
/// skipped for those variants and surface as residuals in
/// [`validate_trace`] instead.
pub fn run_construction(
    spec: TorusElevationSpec,
    variant: InterpretationVariant,
) -> Result<ConstructionTrace, ConstructionError> {
    let tol = TolerancePolicy::default().effective(spec.extent());
    let major = spec.major_radius;
    let minor = spec.minor_radius;

    let mut steps = Vec::with_capacity(STEP_COUNT);
    let mut record = |op: &'static str, inputs: Vec<&'static str>, outputs: Vec<&'static str>| {
        let index = steps.len() + 1;
        steps.push(StepRecord {
            index,
            op,
            inputs,
            outputs,
        });
    };

    // 1. The axis line through the ring centers.
    let p = Point2::new(-major, 0.0);
    let q = Point2::new(major, 0.0);
    let line_ab = line_through(p, q, &tol)?;
    record("line_through", vec!["P", "Q"], vec!["AB"]);

    // 2. A and B where the axis line leaves the outline.
    let a = Point2::new(-(major + minor), 0.0);
    let b = Point2::new(major + minor, 0.0);
    record("mark_outline_extremes", vec!["AB"], vec!["A", "B"]);

    let left_ring = Circle2::new(p, minor)?;
    let right_ring = Circle2::new(q, minor)?;
    let diag_up = Vec2::new(1.0, 1.0);

    // 3. D: lower intersection of the 45-degree line through P with the
    //    left ring (the lowest trace of the shade line).
    let diag_p = Line2::from_anchor_dir(p, diag_up)?;
    let d = match intersect_line_circle(diag_p, left_ring) {
        CircleHits::Two(lo, _) => lo,
        _ => unreachable!("line through the ring center always cuts it twice"),
    };
    record("intersect_line_circle", vec!["P", "left ring"], vec!["D"]);

    // 4. E: upper intersection on the right ring (the highest trace).
    let diag_q = Line2::from_anchor_dir(q, diag_up)?;
    let e = match intersect_line_circle(diag_q, right_ring) {
        CircleHits::Two(_, hi) => hi,
        _ => unreachable!(),
    };
    record("intersect_line_circle", vec!["Q", "right ring"], vec!["E"]);

    // 5. Line DE must bisect AB at C.
    let line_de = line_through(d, e, &tol)?;
    let c = a.midpoint(b);
    let c_residual = line_de.distance_to(c);
    if c_residual > tol.length {
        return Err(ConstructionError::InternalInconsistency {
            assertion: "c_on_de",
            residual: c_residual,
        });
    }
    record("line_through", vec!["D", "E"], vec!["DE", "C"]);

    // 6-7. H and I by the perpendicular rule in force, then the check that
    //      connecting them passes through C.
    let (h_dir_left, h_dir_right) = match variant.h_rule {
        HRule::VerticalChord => (vertical(), vertical()),
        HRule::RingTangent => (
            (p - d).normalized().expect("D is distinct from P"),
            (q - e).normalized().expect("E is distinct from Q"),
        ),
    };
    let h = other_ring_hit(Line2::from_anchor_dir(d, h_dir_left)?, left_ring, d, &tol)?;
    record("ring_chord_second_hit", vec!["D", "left ring"], vec!["H"]);
    let i = other_ring_hit(Line2::from_anchor_dir(e, h_dir_right)?, right_ring, e, &tol)?;
    let line_hi = line_through(h, i, &tol)?;
    let hi_residual = line_hi.distance_to(c);
    if hi_residual > tol.length {
        return Err(ConstructionError::InternalInconsistency {
            assertion: "hci_collinear",
            residual: hi_residual,
        });
    }
    record("ring_chord_second_hit", vec!["E", "right ring"], vec!["I", "HI"]);

    // 8-9. J and K where HP and IQ cut DE.
    let line_hp = line_through(h, p, &tol)?;
    let j = intersect_lines(line_hp, line_de, &tol)?;
    record("intersect_lines", vec!["HP", "DE"], vec!["J"]);
    let line_iq = line_through(i, q, &tol)?;
    let k = intersect_lines(line_iq, line_de, &tol)?;
    record("intersect_lines", vec!["IQ", "DE"], vec!["K"]);

    // 10. LM through C, parallel to HP (and so to IQ).
    let parallel_residual = line_hp.dir().cross(line_iq.dir()).abs();
    if parallel_residual > tol.direction {
        return Err(ConstructionError::InternalInconsistency {
            assertion: "hp_parallel_iq",
            residual: parallel_residual,
        });
    }
    let line_lm = Line2::from_anchor_dir(c, line_hp.dir())?;
    record("parallel_through", vec!["C", "HP"], vec!["LM"]);

    // 11. L and M carried from J and K onto LM.
    let (l, m) = match variant.lm_rule {
        LmRule::OrthogonalFoot => (perpendicular_foot(j, line_lm), perpendicular_foot(k, line_lm)),
        LmRule::VerticalMeet => (
            intersect_lines(Line2::from_anchor_dir(j, vertical())?, line_lm, &tol)?,
            intersect_lines(Line2::from_anchor_dir(k, vertical())?, line_lm, &tol)?,
        ),
    };
    record("carry_onto_line", vec!["J", "K", "LM"], vec!["L", "M"]);

    // 12. n' and o': feet of D and E on the vertical outer edge lines.
    let left_edge = Line2::from_anchor_dir(a, vertical())?;
    let right_edge = Line2::from_anchor_dir(b, vertical())?;
    let n_prime = perpendicular_foot(d, left_edge);
    let o_prime = perpendicular_foot(e, right_edge);
    record(
        "perpendicular_foot",
        vec!["D", "E", "outer edges"],
        vec!["n'", "o'"],
    );

    // 13. n and o by mirroring n' and o' across PD and QE. The canonical
    //     perpendicular rule makes n fall on HD extended (and o on IE).
    let line_pd = line_through(p, d, &tol)?;
    let line_qe = line_through(q, e, &tol)?;
    let n = reflect_point_across_line(n_prime, line_pd);
    let o = reflect_point_across_line(o_prime, line_qe);
    if variant.h_rule == HRule::VerticalChord {
        let line_hd = line_through(h, d, &tol)?;
        let n_residual = line_hd.distance_to(n);
        if n_residual > tol.length {
            return Err(ConstructionError::InternalInconsistency {
                assertion: "n_on_hd",
                residual: n_residual,
            });
        }
        let line_ie = line_through(i, e, &tol)?;
        let o_residual = line_ie.distance_to(o);
        if o_residual > tol.length {
            return Err(ConstructionError::InternalInconsistency {
                assertion: "o_on_ie",
                residual: o_residual,
            });
        }
    }
    record("reflect_point", vec!["n'", "PD", "o'", "QE"], vec!["n", "o"]);

    // 14. n'' and o'': mirror the rays P->n' and Q->o' across the lines
    //     through P and Q parallel to HI, then take the ring intersection.
    let axis_p = Line2::from_anchor_dir(p, line_hi.dir())?;
    let axis_q = Line2::from_anchor_dir(q, line_hi.dir())?;
    let dir_pn_prime = (n_prime - p).normalized().expect("n' distinct from P");
    let dir_qo_prime = (o_prime - q).normalized().expect("o' distinct from Q");
    let refl_p = reflect_direction_across_line(dir_pn_prime, axis_p);
    let refl_q = reflect_direction_across_line(dir_qo_prime, axis_q);
    let line_pn_dprime = Line2::from_anchor_dir(p, refl_p)?;
    let line_qo_dprime = Line2::from_anchor_dir(q, refl_q)?;
    let pick = |hits: CircleHits, anchor_prime: Point2| -> Point2 {
        match hits {
            CircleHits::Two(first, second) => match variant.ring_pick {
                // hits are ordered along the ray direction, so the forward
                // intersection is the second (positive-parameter) one.
                RingPick::ForwardRay => second,
                RingPick::Nearest => {
                    if first.distance(anchor_prime) <= second.distance(anchor_prime) {
                        first
                    } else {
                        second
                    }
                }
            },
            CircleHits::One(only) => only,
            CircleHits::None => unreachable!("ray anchored at the ring center"),
        }
    };
    let n_dprime = pick(intersect_line_circle(line_pn_dprime, left_ring), n_prime);
    let o_dprime = pick(intersect_line_circle(line_qo_dprime, right_ring), o_prime);
    record(
        "reflect_ray_onto_ring",
        vec!["P", "n'", "HI", "Q", "o'"],
        vec!["n''", "o''"],
    );

    // 15. Trace the closed shade path.
    record(
        "trace_path",
        vec!["P", "D", "n''", "H", "M", "Q", "E", "o''", "I", "L"],
        vec!["shade path"],
    );

    let line_pn = line_through(p, n, &tol)?;
    let line_qo = line_through(q, o, &tol)?;
    let line_pn_prime = line_through(p, n_prime, &tol)?;
    let line_qo_prime = line_through(q, o_prime, &tol)?;

    debug_assert_eq!(steps.len(), STEP_COUNT);

    Ok(ConstructionTrace {
        spec,
        variant,
        a,
        b,
        c,
        d,
        e,
        p,
        q,
        h,
        i,
        j,
        k,
        l,
        m,
        n,
        o,
        n_prime,
        o_prime,
        n_dprime,
        o_dprime,
        line_ab,
        line_de,
        line_hp,
        line_iq,
        line_lm,
        line_hi,
        line_pd,
        line_qe,
        line_pn,
        line_pn_prime,
        line_pn_dprime,
        line_qo,
        line_qo_prime,
        line_qo_dprime,
        steps,
    })
}

/// One incidence or symmetry check, with its measured residual.
#[derive(Debug, Clone)]
pub struct TraceAssertion {
    pub id: &'static str,
    /// Inches for point-distance checks, dimensionless (sine of the angle
    /// error) for direction checks.
    pub residual: f64,
}

/// Recomputes every stated incidence from the labeled points alone, so a
/// perturbed point shows up as a nonzero residual. Reporting only; nothing
/// here fails.
pub fn validate_trace(trace: &ConstructionTrace) -> Vec<TraceAssertion> {
    let tol = TolerancePolicy::default().effective(trace.spec.extent());
    let mut out = Vec::with_capacity(23);
    let mut push = |id: &'static str, residual: f64| out.push(TraceAssertion { id, residual });

    let light_diag = Vec2::new(1.0, -1.0).normalized().unwrap();

    match line_through(trace.d, trace.e, &tol) {
        Ok(de) => push("c_on_de", de.distance_to(trace.c)),
        Err(_) => push("c_on_de", f64::NAN),
    }
    match line_through(trace.h, trace.i, &tol) {
        Ok(hi) => push("hci_collinear", hi.distance_to(trace.c)),
        Err(_) => push("hci_collinear", f64::NAN),
    }

    let slope_residual = |from: Point2, to: Point2| -> f64 {
        match (to - from).normalized() {
            Some(dir) => dir.cross(light_diag).abs(),
            None => f64::NAN,
        }
    };
    push("hp_slope", slope_residual(trace.h, trace.p));
    push("iq_slope", slope_residual(trace.i, trace.q));
    push("lm_slope", slope_residual(trace.l, trace.m));

    match line_through(trace.h, trace.d, &tol) {
        Ok(hd) => push("n_on_hd", hd.distance_to(trace.n)),
        Err(_) => push("n_on_hd", f64::NAN),
    }
    match line_through(trace.i, trace.e, &tol) {
        Ok(ie) => push("o_on_ie", ie.distance_to(trace.o)),
        Err(_) => push("o_on_ie", f64::NAN),
    }

    let half_width = trace.spec.width / 2.0;
    let left_edge = Line2::from_anchor_dir(Point2::new(-half_width, 0.0), vertical()).unwrap();
    let right_edge = Line2::from_anchor_dir(Point2::new(half_width, 0.0), vertical()).unwrap();
    push(
        "nprime_foot",
        perpendicular_foot(trace.d, left_edge).distance(trace.n_prime),
    );
    push(
        "oprime_foot",
        perpendicular_foot(trace.e, right_edge).distance(trace.o_prime),
    );

    match (
        line_through(trace.p, trace.d, &tol),
        line_through(trace.q, trace.e, &tol),
    ) {
        (Ok(pd), Ok(qe)) => {
            push(
                "n_mirror",
                reflect_point_across_line(trace.n_prime, pd).distance(trace.n),
            );
            push(
                "o_mirror",
                reflect_point_across_line(trace.o_prime, qe).distance(trace.o),
            );
            let twice_n =
                reflect_point_across_line(reflect_point_across_line(trace.n_prime, pd), pd);
            push("n_involution", twice_n.distance(trace.n_prime));
            let twice_o =
                reflect_point_across_line(reflect_point_across_line(trace.o_prime, qe), qe);
            push("o_involution", twice_o.distance(trace.o_prime));
        }
        _ => {
            push("n_mirror", f64::NAN);
            push("o_mirror", f64::NAN);
            push("n_involution", f64::NAN);
            push("o_involution", f64::NAN);
        }
    }

    for (id, first, second) in trace.symmetric_pairs() {
        push(id, (second - -first).norm());
    }

    let r = trace.spec.minor_radius;
    push(
        "ndprime_on_ring",
        (trace.n_dprime.distance(trace.p) - r).abs(),
    );
    push(
        "odprime_on_ring",
        (trace.o_dprime.distance(trace.q) - r).abs(),
    );

    out
}

/// Interpolates the closed shade path through the ten traced points and
/// resamples it to at least `samples` vertices (see [`sample_closed`] for
/// the exact count rule). Intended for `samples >= 512`.
pub fn trace_shade_path(trace: &ConstructionTrace, samples: usize) -> ShadePath {
    let cycle = trace.shade_cycle();
    let control_labels = cycle.map(|(label, _)| label);
    let control_points = cycle.map(|(_, point)| point);
    let spline = ClosedSpline::new(&control_points);
    ShadePath {
        control_labels,
        control_points,
        vertices: sample_closed(&spline, samples),
    }
}

/// Serializes a trace and its shade path as the versioned JSON document.
/// Key order is fixed and coordinates are printed at 6 decimal places, so
/// identical inputs give byte-identical output.
pub fn trace_to_json(trace: &ConstructionTrace, path: &ShadePath) -> String {
    let mut s = String::with_capacity(8192 + path.vertices.len() * 24);
    s.push_str("{\n  \"schema_version\": 1,\n");
    s.push_str(&format!(
        "  \"spec\": {{\"width\": {}, \"height\": {}, \"R\": {}, \"r\": {}}},\n",
        textfmt::inches(trace.spec.width),
        textfmt::inches(trace.spec.height),
        textfmt::inches(trace.spec.major_radius),
        textfmt::inches(trace.spec.minor_radius)
    ));
    s.push_str(&format!(
        "  \"variant\": \"{}\",\n",
        textfmt::json_escape(&trace.variant.id())
    ));
    s.push_str("  \"points\": {\n");
    let labeled = trace.labeled_points();
    for (idx, (label, point)) in labeled.iter().enumerate() {
        s.push_str(&format!(
            "    \"{}\": [{}, {}]{}\n",
            textfmt::json_escape(label),
            textfmt::inches(point.x),
            textfmt::inches(point.z),
            if idx + 1 < labeled.len() { "," } else { "" }
        ));
    }
    s.push_str("  },\n  \"shade_path\": [");
    for (idx, v) in path.vertices.iter().enumerate() {
        if idx % 8 == 0 {
            s.push_str("\n    ");
        }
        s.push_str(&format!(
            "[{}, {}]{}",
            textfmt::inches(v.x),
            textfmt::inches(v.z),
            if idx + 1 < path.vertices.len() { ", " } else { "" }
        ));
    }
    s.push_str("\n  ],\n  \"assertions\": [\n");
    let assertions = validate_trace(trace);
    for (idx, a) in assertions.iter().enumerate() {
        s.push_str(&format!(
            "    {{\"id\": \"{}\", \"residual\": {}}}{}\n",
            a.id,
            textfmt::sci(a.residual),
            if idx + 1 < assertions.len() { "," } else { "" }
        ));
    }
    s.push_str("  ]\n}\n");
    s
}
