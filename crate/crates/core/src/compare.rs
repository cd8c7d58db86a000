//! Agreement metrics between the construction's shade path and the oracle.
//!
//! Curves are densified to a maximum segment length of 1/256 of the scene
//! extent and compared as sampled vertex sets: symmetric Hausdorff distance,
//! mean nearest-point distance, and (when both curves are simple and closed)
//! region intersection-over-union via scanline rasterization. The
//! calibration harness runs every interpretation variant over a config set
//! and ranks them by median Hausdorff against each oracle reference.

use crate::construction::{
    run_construction, trace_shade_path, ConstructionError, InterpretationVariant,
    TorusElevationSpec,
};
use crate::oracle::{build_oracle_shade, project_elevation, OracleError, OracleShade, Torus3};
use crate::planar::Point2;
use crate::textfmt;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompareError {
    #[error("curve needs at least 3 vertices")]
    DegenerateCurve,
    #[error("polyline self-intersects")]
    SelfIntersecting,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which oracle curve a report row is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReferenceKind {
    OuterLoop,
    InnerLoop,
    RegionOutline,
}

impl ReferenceKind {
    pub const ALL: [ReferenceKind; 3] = [
        ReferenceKind::OuterLoop,
        ReferenceKind::InnerLoop,
        ReferenceKind::RegionOutline,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReferenceKind::OuterLoop => "outer_loop",
            ReferenceKind::InnerLoop => "inner_loop",
            ReferenceKind::RegionOutline => "region_outline",
        }
    }

    pub fn parse(s: &str) -> Option<ReferenceKind> {
        match s {
            "outer_loop" => Some(ReferenceKind::OuterLoop),
            "inner_loop" => Some(ReferenceKind::InnerLoop),
            "region_outline" => Some(ReferenceKind::RegionOutline),
            _ => None,
        }
    }
}

/// Inserts vertices so no segment is longer than `max_seg`.
pub fn densify(polyline: &[Point2], max_seg: f64) -> Vec<Point2> {
    assert!(max_seg > 0.0);
    let mut out = Vec::with_capacity(polyline.len() * 2);
    for w in polyline.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = a.distance(b);
        let pieces = (len / max_seg).ceil().max(1.0) as usize;
        for j in 0..pieces {
            let t = j as f64 / pieces as f64;
            out.push(Point2::new(a.x + t * (b.x - a.x), a.z + t * (b.z - a.z)));
        }
    }
    if let Some(&last) = polyline.last() {
        out.push(last);
    }
    out
}

/// Uniform bucket grid for nearest-vertex queries.
struct NearestGrid {
    cell: f64,
    x0: f64,
    z0: f64,
    nx: i64,
    nz: i64,
    buckets: Vec<Vec<u32>>,
    points: Vec<Point2>,
}

impl NearestGrid {
    fn build(points: &[Point2], cell: f64) -> NearestGrid {
        assert!(!points.is_empty());
        let mut x0 = f64::INFINITY;
        let mut z0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut z1 = f64::NEG_INFINITY;
        for p in points {
            x0 = x0.min(p.x);
            z0 = z0.min(p.z);
            x1 = x1.max(p.x);
            z1 = z1.max(p.z);
        }
        let nx = (((x1 - x0) / cell).floor() as i64 + 1).max(1);
        let nz = (((z1 - z0) / cell).floor() as i64 + 1).max(1);
        let mut buckets = vec![Vec::new(); (nx * nz) as usize];
        for (idx, p) in points.iter().enumerate() {
            let ci = (((p.x - x0) / cell).floor() as i64).clamp(0, nx - 1);
            let cj = (((p.z - z0) / cell).floor() as i64).clamp(0, nz - 1);
            buckets[(cj * nx + ci) as usize].push(idx as u32);
        }
        NearestGrid {
            cell,
            x0,
            z0,
            nx,
            nz,
            buckets,
            points: points.to_vec(),
        }
    }

    /// Distance from `p` to the nearest stored point, by expanding ring
    /// search from the home cell.
    fn nearest(&self, p: Point2) -> f64 {
        let ci = (((p.x - self.x0) / self.cell).floor() as i64).clamp(0, self.nx - 1);
        let cj = (((p.z - self.z0) / self.cell).floor() as i64).clamp(0, self.nz - 1);
        // distance from p to its clamped home cell, nonzero outside the bbox
        let cx0 = self.x0 + ci as f64 * self.cell;
        let cz0 = self.z0 + cj as f64 * self.cell;
        let dx = (cx0 - p.x).max(p.x - (cx0 + self.cell)).max(0.0);
        let dz = (cz0 - p.z).max(p.z - (cz0 + self.cell)).max(0.0);
        let d0 = (dx * dx + dz * dz).sqrt();

        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.nz);
        for ring in 0..=max_ring {
            // points in rings >= ring are at least ((ring-1)*cell - d0) away
            if best.is_finite() && ((ring - 1).max(0) as f64) * self.cell - d0 > best {
                break;
            }
            let mut scan = |ii: i64, jj: i64| {
                if ii < 0 || jj < 0 || ii >= self.nx || jj >= self.nz {
                    return;
                }
                for &idx in &self.buckets[(jj * self.nx + ii) as usize] {
                    best = best.min(p.distance(self.points[idx as usize]));
                }
            };
            if ring == 0 {
                scan(ci, cj);
            } else {
                for ii in (ci - ring)..=(ci + ring) {
                    scan(ii, cj - ring);
                    scan(ii, cj + ring);
                }
                for jj in (cj - ring + 1)..(cj + ring) {
                    scan(ci - ring, jj);
                    scan(ci + ring, jj);
                }
            }
        }
        best
    }
}

/// Symmetric vertex-sampled Hausdorff distance plus the mean nearest-point
/// distance over the directed distances of both curves.
pub fn curve_agreement(a: &[Point2], b: &[Point2]) -> Result<(f64, f64), CompareError> {
    if a.len() < 3 || b.len() < 3 {
        return Err(CompareError::DegenerateCurve);
    }
    let span = |pts: &[Point2]| -> f64 {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            lo = Point2::new(lo.x.min(p.x), lo.z.min(p.z));
            hi = Point2::new(hi.x.max(p.x), hi.z.max(p.z));
        }
        (hi.x - lo.x).max(hi.z - lo.z)
    };
    let cell = (span(a).max(span(b)) / 128.0).max(1e-9);
    let grid_b = NearestGrid::build(b, cell);
    let grid_a = NearestGrid::build(a, cell);
    let mut max_d: f64 = 0.0;
    let mut sum = 0.0;
    for p in a {
        let d = grid_b.nearest(*p);
        max_d = max_d.max(d);
        sum += d;
    }
    for p in b {
        let d = grid_a.nearest(*p);
        max_d = max_d.max(d);
        sum += d;
    }
    Ok((max_d, sum / (a.len() + b.len()) as f64))
}

/// Symmetric Hausdorff distance over sampled vertices. Inputs should already
/// be densified to the scene's comparison pitch.
pub fn hausdorff(a: &[Point2], b: &[Point2]) -> Result<f64, CompareError> {
    curve_agreement(a, b).map(|(h, _)| h)
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    if a.x.max(b.x) < c.x.min(d.x)
        || c.x.max(d.x) < a.x.min(b.x)
        || a.z.max(b.z) < c.z.min(d.z)
        || c.z.max(d.z) < a.z.min(b.z)
    {
        return false;
    }
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    // collinear touching counts as an intersection (conservative)
    let on = |p: Point2, q: Point2, r: Point2| -> bool {
        orient(p, q, r) == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.z >= p.z.min(q.z)
            && r.z <= p.z.max(q.z)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}

/// True when the closed polyline (first vertex repeated at the end) has no
/// self-intersections between non-adjacent segments.
pub fn is_simple_closed(poly: &[Point2]) -> bool {
    if poly.len() < 4 || poly.first() != poly.last() {
        return false;
    }
    let n = poly.len() - 1; // segment count
    let seg_min_x = |i: usize| poly[i].x.min(poly[i + 1].x);
    let seg_max_x = |i: usize| poly[i].x.max(poly[i + 1].x);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| seg_min_x(i).partial_cmp(&seg_min_x(j)).unwrap());
    for (pos, &i) in order.iter().enumerate() {
        let max_x = seg_max_x(i);
        for &j in &order[pos + 1..] {
            if seg_min_x(j) > max_x {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent || i == j {
                continue;
            }
            if segments_intersect(poly[i], poly[i + 1], poly[j], poly[j + 1]) {
                return false;
            }
        }
    }
    true
}

/// Scanline even-odd rasterization of a closed polygon onto a grid.
fn rasterize(poly: &[Point2], x0: f64, z0: f64, pitch: f64, nx: usize, nz: usize) -> Vec<bool> {
    let mut filled = vec![false; nx * nz];
    let mut crossings: Vec<f64> = Vec::new();
    for row in 0..nz {
        let y = z0 + (row as f64 + 0.5) * pitch;
        crossings.clear();
        for w in poly.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.z == b.z {
                continue;
            }
            let (lo, hi) = if a.z < b.z { (a, b) } else { (b, a) };
            if lo.z <= y && y < hi.z {
                crossings.push(lo.x + (y - lo.z) * (hi.x - lo.x) / (hi.z - lo.z));
            }
        }
        crossings.sort_by(|p, q| p.partial_cmp(q).unwrap());
        for pair in crossings.chunks(2) {
            if pair.len() < 2 {
                break;
            }
            let first = ((pair[0] - x0) / pitch - 0.5).ceil().max(0.0) as usize;
            let last = ((pair[1] - x0) / pitch - 0.5).floor();
            if last < 0.0 {
                continue;
            }
            for col in first..=(last as usize).min(nx - 1) {
                filled[row * nx + col] = true;
            }
        }
    }
    filled
}

/// Region intersection-over-union of two simple closed polylines, computed
/// by scanline rasterization at `resolution` pixels on the long side of the
/// joint bounding box.
pub fn region_iou(a: &[Point2], b: &[Point2], resolution: usize) -> Result<f64, CompareError> {
    if a.len() < 4 || b.len() < 4 {
        return Err(CompareError::DegenerateCurve);
    }
    if !is_simple_closed(a) || !is_simple_closed(b) {
        return Err(CompareError::SelfIntersecting);
    }
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in a.iter().chain(b.iter()) {
        lo = Point2::new(lo.x.min(p.x), lo.z.min(p.z));
        hi = Point2::new(hi.x.max(p.x), hi.z.max(p.z));
    }
    let w = (hi.x - lo.x).max(1e-12);
    let h = (hi.z - lo.z).max(1e-12);
    let pitch = w.max(h) / resolution as f64;
    let nx = ((w / pitch).ceil() as usize + 2).max(2);
    let nz = ((h / pitch).ceil() as usize + 2).max(2);
    let x0 = lo.x - pitch;
    let z0 = lo.z - pitch;
    let fa = rasterize(a, x0, z0, pitch, nx, nz);
    let fb = rasterize(b, x0, z0, pitch, nx, nz);
    let mut inter = 0usize;
    let mut union = 0usize;
    for (pa, pb) in fa.iter().zip(fb.iter()) {
        if *pa && *pb {
            inter += 1;
        }
        if *pa || *pb {
            union += 1;
        }
    }
    if union == 0 {
        return Ok(0.0);
    }
    Ok(inter as f64 / union as f64)
}

/// One comparison row: a config and variant measured against one oracle
/// reference curve.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub config: String,
    pub variant: String,
    pub reference: ReferenceKind,
    pub hausdorff_in: f64,
    pub mean_in: f64,
    /// `None` when either curve is self-intersecting or the reference region
    /// is not a single loop.
    pub iou: Option<f64>,
    pub d_dev: f64,
    pub e_dev: f64,
}

/// Default raster resolution for oracle masks and IoU grids.
pub const DEFAULT_RESOLUTION: usize = 1024;

/// Shade-path sample count used for comparisons.
pub const COMPARE_PATH_SAMPLES: usize = 2048;

/// Runs the construction for `(spec, variant)` and measures it against every
/// reference curve of a prebuilt oracle. Returns one report per reference,
/// in [`ReferenceKind::ALL`] order.
pub fn compare_config(
    spec: TorusElevationSpec,
    variant: InterpretationVariant,
    oracle: &OracleShade,
    iou_resolution: usize,
) -> Result<Vec<ComparisonReport>, CompareError> {
    let trace = run_construction(spec, variant)?;
    let path = trace_shade_path(&trace, COMPARE_PATH_SAMPLES);
    let max_seg = spec.extent() / 256.0;
    let path_dense = densify(&path.vertices, max_seg);
    let path_simple = is_simple_closed(&path.vertices);

    let torus = Torus3::new(spec.major_radius, spec.minor_radius);
    let d_dev = trace.d.distance(project_elevation(
        std::f64::consts::PI,
        -std::f64::consts::FRAC_PI_4,
        &torus,
    ));
    let e_dev = trace
        .e
        .distance(project_elevation(0.0, std::f64::consts::FRAC_PI_4, &torus));

    let mut out = Vec::with_capacity(3);
    for kind in ReferenceKind::ALL {
        let (hausdorff_in, mean_in, iou) = match kind {
            ReferenceKind::OuterLoop | ReferenceKind::InnerLoop => {
                let reference = if kind == ReferenceKind::OuterLoop {
                    &oracle.outer_loop
                } else {
                    &oracle.inner_loop
                };
                let dense = densify(reference, max_seg);
                let (h, mean) = curve_agreement(&path_dense, &dense)?;
                let iou = if path_simple {
                    region_iou(&path.vertices, reference, iou_resolution).ok()
                } else {
                    None
                };
                (h, mean, iou)
            }
            ReferenceKind::RegionOutline => {
                // Hausdorff against the union of all outline loops; IoU only
                // when the region is a single loop.
                let mut dense = Vec::new();
                for outline in &oracle.region_outline {
                    dense.extend(densify(outline, max_seg));
                }
                let (h, mean) = curve_agreement(&path_dense, &dense)?;
                let iou = if path_simple && oracle.region_outline.len() == 1 {
                    region_iou(&path.vertices, &oracle.region_outline[0], iou_resolution).ok()
                } else {
                    None
                };
                (h, mean, iou)
            }
        };
        out.push(ComparisonReport {
            config: spec.config_id(),
            variant: variant.id(),
            reference: kind,
            hausdorff_in,
            mean_in,
            iou,
            d_dev,
            e_dev,
        });
    }
    Ok(out)
}

/// Runs comparisons for every `(config, variant)` pair, building each
/// config's oracle once. Row order is configs x variants x references,
/// independent of scheduling.
pub fn compare_matrix(
    configs: &[TorusElevationSpec],
    variants: &[InterpretationVariant],
    resolution: usize,
) -> Result<Vec<ComparisonReport>, CompareError> {
    if configs.is_empty() {
        return Err(CompareError::EmptyInput("no configs"));
    }
    if variants.is_empty() {
        return Err(CompareError::EmptyInput("no variants"));
    }
    let per_config: Result<Vec<Vec<ComparisonReport>>, CompareError> = configs
        .par_iter()
        .map(|spec| {
            let torus = Torus3::new(spec.major_radius, spec.minor_radius);
            let oracle = build_oracle_shade(&torus, resolution)?;
            let mut rows = Vec::with_capacity(variants.len() * 3);
            for &variant in variants {
                rows.extend(compare_config(*spec, variant, &oracle, resolution)?);
            }
            Ok(rows)
        })
        .collect();
    Ok(per_config?.into_iter().flatten().collect())
}

/// Median Hausdorff of one variant against one reference kind.
#[derive(Debug, Clone)]
pub struct VariantRank {
    pub variant: InterpretationVariant,
    pub median_hausdorff: f64,
}

/// Per-reference rankings, ascending by median Hausdorff.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub per_reference: Vec<(ReferenceKind, Vec<VariantRank>)>,
}

impl Calibration {
    /// Position (0-based) of a variant in the ranking for `kind`.
    pub fn position(&self, kind: ReferenceKind, variant: InterpretationVariant) -> Option<usize> {
        self.per_reference
            .iter()
            .find(|(k, _)| *k == kind)
            .and_then(|(_, ranks)| ranks.iter().position(|r| r.variant == variant))
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Builds the per-reference ranking from already-computed report rows.
pub fn calibration_from_reports(
    rows: &[ComparisonReport],
    variants: &[InterpretationVariant],
) -> Result<Calibration, CompareError> {
    if rows.is_empty() || variants.is_empty() {
        return Err(CompareError::EmptyInput("no reports or variants"));
    }
    let mut per_reference = Vec::with_capacity(3);
    for kind in ReferenceKind::ALL {
        let mut ranks: Vec<VariantRank> = variants
            .iter()
            .map(|&variant| {
                let mut values: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.reference == kind && r.variant == variant.id())
                    .map(|r| r.hausdorff_in)
                    .collect();
                let median_hausdorff = if values.is_empty() {
                    f64::INFINITY
                } else {
                    median(&mut values)
                };
                VariantRank {
                    variant,
                    median_hausdorff,
                }
            })
            .collect();
        ranks.sort_by(|a, b| {
            a.median_hausdorff
                .partial_cmp(&b.median_hausdorff)
                .unwrap()
                .then_with(|| a.variant.cmp(&b.variant))
        });
        per_reference.push((kind, ranks));
    }
    Ok(Calibration { per_reference })
}

/// Ranks the interpretation variants by aggregate agreement over a config
/// set. Ties break by variant enum order, so the ranking is deterministic.
pub fn calibrate_variants(
    configs: &[TorusElevationSpec],
    variants: &[InterpretationVariant],
    resolution: usize,
) -> Result<Calibration, CompareError> {
    let rows = compare_matrix(configs, variants, resolution)?;
    calibration_from_reports(&rows, variants)
}

/// CSV export with a fixed column order and '.' decimal separator.
pub fn reports_to_csv(reports: &[ComparisonReport]) -> String {
    let mut s = String::from("config,variant,reference,hausdorff_in,mean_in,iou,d_dev,e_dev\n");
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.config,
            r.variant,
            r.reference.as_str(),
            textfmt::inches(r.hausdorff_in),
            textfmt::inches(r.mean_in),
            r.iou.map(textfmt::inches).unwrap_or_else(|| "NA".into()),
            textfmt::sci(r.d_dev),
            textfmt::sci(r.e_dev),
        ));
    }
    s
}

/// JSON array export mirroring the CSV rows.
pub fn reports_to_json(reports: &[ComparisonReport]) -> String {
    let mut s = String::from("[\n");
    for (idx, r) in reports.iter().enumerate() {
        s.push_str(&format!(
            "  {{\"config\": \"{}\", \"variant\": \"{}\", \"reference\": \"{}\", \
             \"hausdorff_in\": {}, \"mean_in\": {}, \"iou\": {}, \"d_dev\": {}, \"e_dev\": {}}}{}\n",
            textfmt::json_escape(&r.config),
            textfmt::json_escape(&r.variant),
            r.reference.as_str(),
            textfmt::inches(r.hausdorff_in),
            textfmt::inches(r.mean_in),
            r.iou.map(textfmt::inches).unwrap_or_else(|| "null".into()),
            textfmt::sci(r.d_dev),
            textfmt::sci(r.e_dev),
            if idx + 1 < reports.len() { "," } else { "" }
        ));
    }
    s.push_str("]\n");
    s
}

/// Calibration export: per reference kind, variants ascending by median.
pub fn calibration_to_json(calibration: &Calibration) -> String {
    let mut s = String::from("{\n  \"ranking\": {\n");
    for (kidx, (kind, ranks)) in calibration.per_reference.iter().enumerate() {
        s.push_str(&format!("    \"{}\": [\n", kind.as_str()));
        for (idx, r) in ranks.iter().enumerate() {
            s.push_str(&format!(
                "      {{\"variant\": \"{}\", \"median_hausdorff_in\": {}}}{}\n",
                r.variant.id(),
                textfmt::inches(r.median_hausdorff),
                if idx + 1 < ranks.len() { "," } else { "" }
            ));
        }
        s.push_str(&format!(
            "    ]{}\n",
            if kidx + 1 < calibration.per_reference.len() {
                ","
            } else {
                ""
            }
        ));
    }
    s.push_str("  }\n}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn circle(center: Point2, radius: f64, n: usize) -> Vec<Point2> {
        let mut pts: Vec<Point2> = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                Point2::new(center.x + radius * t.cos(), center.z + radius * t.sin())
            })
            .collect();
        pts.push(pts[0]);
        pts
    }

    fn square(origin: Point2, side: f64) -> Vec<Point2> {
        vec![
            origin,
            Point2::new(origin.x + side, origin.z),
            Point2::new(origin.x + side, origin.z + side),
            Point2::new(origin.x, origin.z + side),
            origin,
        ]
    }

    #[test]
    fn hausdorff_identical_is_zero() {
        let c = densify(&circle(Point2::new(0.0, 0.0), 1.0, 256), 4.0 / 256.0);
        assert_eq!(hausdorff(&c, &c).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_concentric_circles() {
        let max_seg = 4.0 / 256.0;
        let a = densify(&circle(Point2::new(0.0, 0.0), 1.0, 1024), max_seg);
        let b = densify(&circle(Point2::new(0.0, 0.0), 2.0, 1024), max_seg);
        let h = hausdorff(&a, &b).unwrap();
        assert!((h - 1.0).abs() < 1e-3, "h = {h}");
    }

    #[test]
    fn hausdorff_translated_square() {
        let max_seg = 1.5 / 256.0;
        let a = densify(&square(Point2::new(0.0, 0.0), 1.0), max_seg);
        let b = densify(&square(Point2::new(0.5, 0.0), 1.0), max_seg);
        let h = hausdorff(&a, &b).unwrap();
        // brute-force cross-check on the same samples
        let mut brute: f64 = 0.0;
        for p in &a {
            let d = b.iter().map(|q| q.distance(*p)).fold(f64::INFINITY, f64::min);
            brute = brute.max(d);
        }
        for p in &b {
            let d = a.iter().map(|q| q.distance(*p)).fold(f64::INFINITY, f64::min);
            brute = brute.max(d);
        }
        assert_eq!(h, brute);
        assert!((h - 0.5).abs() < 1e-3, "h = {h}");
    }

    #[test]
    fn hausdorff_rejects_degenerate() {
        let a = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)];
        let b = circle(Point2::new(0.0, 0.0), 1.0, 16);
        assert_eq!(hausdorff(&a, &b), Err(CompareError::DegenerateCurve));
    }

    #[test]
    fn grid_matches_brute_force_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9a1d);
        for _ in 0..50 {
            let n = rng.gen_range(3..200);
            let m = rng.gen_range(3..200);
            let a: Vec<Point2> = (0..n)
                .map(|_| Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                .collect();
            let b: Vec<Point2> = (0..m)
                .map(|_| Point2::new(rng.gen_range(-5.0..15.0), rng.gen_range(-5.0..5.0)))
                .collect();
            let (h, mean) = curve_agreement(&a, &b).unwrap();
            let mut brute_max: f64 = 0.0;
            let mut brute_sum = 0.0;
            for p in &a {
                let d = b.iter().map(|q| q.distance(*p)).fold(f64::INFINITY, f64::min);
                brute_max = brute_max.max(d);
                brute_sum += d;
            }
            for p in &b {
                let d = a.iter().map(|q| q.distance(*p)).fold(f64::INFINITY, f64::min);
                brute_max = brute_max.max(d);
                brute_sum += d;
            }
            assert_eq!(h, brute_max);
            assert!((mean - brute_sum / (n + m) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn metric_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xab);
        for _ in 0..30 {
            let mut mk = |rng: &mut ChaCha8Rng| -> Vec<Point2> {
                let center = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                circle(center, rng.gen_range(0.5..2.0), 64)
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let c = mk(&mut rng);
            let hab = hausdorff(&a, &b).unwrap();
            let hba = hausdorff(&b, &a).unwrap();
            assert!((hab - hba).abs() < 1e-12);
            assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
            let hac = hausdorff(&a, &c).unwrap();
            let hbc = hausdorff(&b, &c).unwrap();
            assert!(hac <= hab + hbc + 1e-9);
        }
    }

    #[test]
    fn hausdorff_scale_equivariance() {
        let a = circle(Point2::new(0.0, 0.0), 1.0, 128);
        let b = circle(Point2::new(0.5, 0.2), 1.5, 128);
        let h1 = hausdorff(&a, &b).unwrap();
        let scale = |pts: &[Point2], s: f64| -> Vec<Point2> {
            pts.iter().map(|p| Point2::new(p.x * s, p.z * s)).collect()
        };
        let h3 = hausdorff(&scale(&a, 3.0), &scale(&b, 3.0)).unwrap();
        assert!((h3 - 3.0 * h1).abs() < 1e-9);
    }

    #[test]
    fn simplicity_detection() {
        assert!(is_simple_closed(&square(Point2::new(0.0, 0.0), 1.0)));
        assert!(is_simple_closed(&circle(Point2::new(0.0, 0.0), 1.0, 64)));
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.0),
        ];
        assert!(!is_simple_closed(&bowtie));
    }

    #[test]
    fn iou_identical_and_disjoint() {
        let a = circle(Point2::new(0.0, 0.0), 1.0, 256);
        assert!((region_iou(&a, &a, 512).unwrap() - 1.0).abs() < 1e-12);
        let b = circle(Point2::new(5.0, 0.0), 1.0, 256);
        assert_eq!(region_iou(&a, &b, 512).unwrap(), 0.0);
    }

    #[test]
    fn iou_overlapping_discs_match_lens_formula() {
        // unit discs one radius apart: intersection 2*pi/3 - sqrt(3)/2,
        // union 4*pi/3 + sqrt(3)/2, ratio 0.243010
        let a = circle(Point2::new(0.0, 0.0), 1.0, 720);
        let b = circle(Point2::new(1.0, 0.0), 1.0, 720);
        let got = region_iou(&a, &b, 1024).unwrap();
        let expect = (2.0 * std::f64::consts::PI / 3.0 - 3.0f64.sqrt() / 2.0)
            / (4.0 * std::f64::consts::PI / 3.0 + 3.0f64.sqrt() / 2.0);
        assert!((expect - 0.243010).abs() < 1e-6);
        assert!((got - expect).abs() < 0.01, "got {got}, want {expect}");

        // brute-force raster oracle over the analytic discs, not the polygons
        let mut inter = 0usize;
        let mut union = 0usize;
        let n = 1024;
        for i in 0..n {
            for j in 0..n {
                let x = -1.5 + 3.5 * (i as f64 + 0.5) / n as f64;
                let z = -1.5 + 3.0 * (j as f64 + 0.5) / n as f64;
                let in_a = x * x + z * z <= 1.0;
                let in_b = (x - 1.0) * (x - 1.0) + z * z <= 1.0;
                if in_a && in_b {
                    inter += 1;
                }
                if in_a || in_b {
                    union += 1;
                }
            }
        }
        let oracle = inter as f64 / union as f64;
        assert!((got - oracle).abs() < 0.01, "got {got}, oracle {oracle}");
    }

    #[test]
    fn iou_rejects_self_intersections() {
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.0),
        ];
        let a = circle(Point2::new(0.0, 0.0), 1.0, 64);
        assert_eq!(
            region_iou(&bowtie, &a, 256),
            Err(CompareError::SelfIntersecting)
        );
    }

    #[test]
    fn compare_config_landmarks_are_identities() {
        let spec = TorusElevationSpec::new(6.0, 2.0).unwrap();
        let torus = Torus3::new(2.0, 1.0);
        let oracle = build_oracle_shade(&torus, 256).unwrap();
        let rows = compare_config(spec, InterpretationVariant::canonical(), &oracle, 256).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert!(r.d_dev < 1e-9 * 6.0, "d_dev {}", r.d_dev);
            assert!(r.e_dev < 1e-9 * 6.0, "e_dev {}", r.e_dev);
            assert!(r.hausdorff_in >= r.mean_in);
            assert!(r.mean_in >= 0.0);
        }
    }

    #[test]
    fn vertical_meet_is_worse_than_canonical() {
        let spec = TorusElevationSpec::new(6.0, 2.0).unwrap();
        let torus = Torus3::new(2.0, 1.0);
        let oracle = build_oracle_shade(&torus, 256).unwrap();
        let canonical =
            compare_config(spec, InterpretationVariant::canonical(), &oracle, 256).unwrap();
        let vm = InterpretationVariant {
            lm_rule: crate::construction::LmRule::VerticalMeet,
            ..InterpretationVariant::canonical()
        };
        let meet = compare_config(spec, vm, &oracle, 256).unwrap();
        for (c, m) in canonical.iter().zip(meet.iter()) {
            assert!(
                m.hausdorff_in > c.hausdorff_in,
                "{:?}: {} vs {}",
                c.reference,
                m.hausdorff_in,
                c.hausdorff_in
            );
        }
    }

    #[test]
    fn calibration_is_consistent_and_rejects_empty() {
        let configs = vec![
            TorusElevationSpec::new(6.0, 2.0).unwrap(),
            TorusElevationSpec::new(8.0, 2.0).unwrap(),
        ];
        let variants = InterpretationVariant::all();
        let cal = calibrate_variants(&configs, &variants, 256).unwrap();
        assert_eq!(cal.per_reference.len(), 3);
        for (_, ranks) in &cal.per_reference {
            assert_eq!(ranks.len(), variants.len());
            for w in ranks.windows(2) {
                assert!(w[0].median_hausdorff <= w[1].median_hausdorff);
            }
        }
        assert!(matches!(
            calibrate_variants(&configs, &[], 256),
            Err(CompareError::EmptyInput(_))
        ));
        assert!(matches!(
            calibrate_variants(&[], &variants, 256),
            Err(CompareError::EmptyInput(_))
        ));
    }

    #[test]
    fn csv_and_json_are_deterministic() {
        let spec = TorusElevationSpec::new(6.0, 2.0).unwrap();
        let torus = Torus3::new(2.0, 1.0);
        let oracle = build_oracle_shade(&torus, 256).unwrap();
        let rows = compare_config(spec, InterpretationVariant::canonical(), &oracle, 256).unwrap();
        assert_eq!(reports_to_csv(&rows), reports_to_csv(&rows));
        let csv = reports_to_csv(&rows);
        assert!(csv.starts_with("config,variant,reference,hausdorff_in,mean_in,iou,d_dev,e_dev\n"));
        assert_eq!(csv.lines().count(), 4);
        let json = reports_to_json(&rows);
        assert!(json.contains("\"reference\": \"outer_loop\""));
    }
}
