//! Publication-style SVG plates: the labeled construction, matrices of
//! shade casts over dimension ranges, and construction-vs-oracle overlays.
//!
//! Output is deterministic byte-for-byte: fixed number formatting, fixed
//! element order, no timestamps.

use crate::compare::ComparisonReport;
use crate::construction::{
    run_construction, trace_shade_path, ConstructionTrace, InterpretationVariant, ShadePath,
    TorusElevationSpec,
};
use crate::oracle::OracleShade;
use crate::planar::{Line2, Point2};
use crate::textfmt::{inches, svg_units as fmt, xml_escape};

/// Styling knobs shared by all plates.
#[derive(Debug, Clone)]
pub struct PlateStyle {
    /// SVG user units per inch.
    pub scale: f64,
    /// Blank border around the drawing, in units.
    pub margin: f64,
    pub outline_stroke: f64,
    pub construction_stroke: f64,
    pub path_stroke: f64,
    /// Flat fill for the shade side.
    pub shade_fill: String,
    pub label_font_size: f64,
    /// Construction curve color in overlays.
    pub construction_color: String,
    /// Oracle curve color in overlays.
    pub oracle_color: String,
    /// Page size (units) a matrix plate is fitted into.
    pub page: (f64, f64),
    /// Optional metadata block embedded in the document.
    pub metadata: Option<String>,
}

impl Default for PlateStyle {
    fn default() -> Self {
        PlateStyle {
            scale: 96.0,
            margin: 48.0,
            outline_stroke: 1.5,
            construction_stroke: 0.6,
            path_stroke: 1.8,
            shade_fill: "#8c8c8c".to_string(),
            label_font_size: 11.0,
            construction_color: "#000000".to_string(),
            oracle_color: "#909090".to_string(),
            page: (768.0, 1024.0),
            metadata: None,
        }
    }
}

/// World (inches, z up) to screen (units, y down) mapping for one plate.
#[derive(Debug, Clone, Copy)]
struct Frame {
    scale: f64,
    /// Screen position of world (0, 0).
    cx: f64,
    cy: f64,
}

impl Frame {
    fn to_screen(&self, p: Point2) -> (f64, f64) {
        (self.cx + p.x * self.scale, self.cy - p.z * self.scale)
    }
}

fn doc_open(width: f64, height: f64, metadata: Option<&str>) -> String {
    let mut s = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = fmt(width),
        h = fmt(height)
    );
    if let Some(meta) = metadata {
        s.push_str(&format!("<metadata>{}</metadata>\n", xml_escape(meta)));
    }
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        fmt(width),
        fmt(height)
    ));
    s
}

fn segment(out: &mut String, frame: &Frame, a: Point2, b: Point2, stroke: f64, color: &str, dash: Option<&str>) {
    let (x1, y1) = frame.to_screen(a);
    let (x2, y2) = frame.to_screen(b);
    let dash = dash
        .map(|d| format!(" stroke-dasharray=\"{d}\""))
        .unwrap_or_default();
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
        fmt(x1),
        fmt(y1),
        fmt(x2),
        fmt(y2),
        color,
        fmt(stroke),
        dash
    ));
}

fn polyline(
    out: &mut String,
    frame: &Frame,
    pts: &[Point2],
    stroke: f64,
    color: &str,
    fill: Option<&str>,
    dash: Option<&str>,
) {
    let mut d = String::with_capacity(pts.len() * 16);
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = frame.to_screen(*p);
        d.push_str(if i == 0 { "M" } else { "L" });
        d.push_str(&format!("{} {} ", fmt(x), fmt(y)));
    }
    let closed = pts.first() == pts.last();
    if closed {
        d.push('Z');
    }
    let fill_attr = match fill {
        Some(f) => format!("fill=\"{f}\" fill-rule=\"evenodd\""),
        None => "fill=\"none\"".to_string(),
    };
    let dash = dash
        .map(|d| format!(" stroke-dasharray=\"{d}\""))
        .unwrap_or_default();
    out.push_str(&format!(
        "<path d=\"{}\" {} stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
        d.trim_end(),
        fill_attr,
        color,
        fmt(stroke),
        dash
    ));
}

/// Stadium outline of the torus elevation: top and bottom edges joined by
/// the two profile semicircles.
fn outline_path(out: &mut String, frame: &Frame, spec: &TorusElevationSpec, stroke: f64) {
    let big = spec.major_radius;
    let r = spec.minor_radius;
    let rr = r * frame.scale;
    let (x1, y1) = frame.to_screen(Point2::new(-big, r));
    let (x2, y2) = frame.to_screen(Point2::new(big, r));
    let (x3, y3) = frame.to_screen(Point2::new(big, -r));
    let (x4, y4) = frame.to_screen(Point2::new(-big, -r));
    out.push_str(&format!(
        "<path d=\"M{} {} L{} {} A{} {} 0 0 1 {} {} L{} {} A{} {} 0 0 1 {} {} Z\" \
         fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
        fmt(x1),
        fmt(y1),
        fmt(x2),
        fmt(y2),
        fmt(rr),
        fmt(rr),
        fmt(x3),
        fmt(y3),
        fmt(x4),
        fmt(y4),
        fmt(rr),
        fmt(rr),
        fmt(x1),
        fmt(y1),
        fmt(stroke)
    ));
}

fn ring_circles(out: &mut String, frame: &Frame, spec: &TorusElevationSpec, stroke: f64) {
    for cx in [-spec.major_radius, spec.major_radius] {
        let (sx, sy) = frame.to_screen(Point2::new(cx, 0.0));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#606060\" \
             stroke-width=\"{}\"/>\n",
            fmt(sx),
            fmt(sy),
            fmt(spec.minor_radius * frame.scale),
            fmt(stroke)
        ));
    }
}

/// Clips an infinite line to an axis-aligned box, returning the visible
/// segment endpoints.
fn clip_line(line: Line2, x0: f64, x1: f64, z0: f64, z1: f64) -> Option<(Point2, Point2)> {
    let a = line.anchor();
    let d = line.dir();
    let mut t_min = f64::NEG_INFINITY;
    let mut t_max = f64::INFINITY;
    for (anchor, dir, lo, hi) in [(a.x, d.x, x0, x1), (a.z, d.z, z0, z1)] {
        if dir.abs() < 1e-15 {
            if anchor < lo || anchor > hi {
                return None;
            }
            continue;
        }
        let (ta, tb) = ((lo - anchor) / dir, (hi - anchor) / dir);
        let (ta, tb) = if ta < tb { (ta, tb) } else { (tb, ta) };
        t_min = t_min.max(ta);
        t_max = t_max.min(tb);
    }
    if t_min >= t_max || !t_min.is_finite() || !t_max.is_finite() {
        return None;
    }
    Some((line.point_at(t_min), line.point_at(t_max)))
}

/// The labeled construction plate: outline, rings, all fourteen
/// construction lines, the filled shade path, and the nineteen point labels.
pub fn plate_construction(
    trace: &ConstructionTrace,
    path: &ShadePath,
    style: &PlateStyle,
) -> String {
    let spec = &trace.spec;
    let half_w = spec.width / 2.0;
    let half_h = spec.height / 2.0;
    let doc_w = spec.width * style.scale + 2.0 * style.margin;
    let doc_h = spec.height * style.scale + 2.0 * style.margin;
    let frame = Frame {
        scale: style.scale,
        cx: style.margin + half_w * style.scale,
        cy: style.margin + half_h * style.scale,
    };
    let mut out = doc_open(doc_w, doc_h, style.metadata.as_deref());

    // shade fill beneath the linework
    polyline(
        &mut out,
        &frame,
        &path.vertices,
        0.0,
        "none",
        Some(&style.shade_fill),
        None,
    );

    outline_path(&mut out, &frame, spec, style.outline_stroke);
    ring_circles(&mut out, &frame, spec, style.construction_stroke);

    // construction lines clipped a little beyond the outline so extensions
    // stay visible
    let pad = 0.35 * (spec.height / 2.0).max(0.5);
    let (bx0, bx1) = (-half_w - pad, half_w + pad);
    let (bz0, bz1) = (-half_h - pad, half_h + pad);
    let lines = [
        trace.line_ab,
        trace.line_de,
        trace.line_hp,
        trace.line_iq,
        trace.line_lm,
        trace.line_hi,
        trace.line_pd,
        trace.line_qe,
        trace.line_pn,
        trace.line_pn_prime,
        trace.line_pn_dprime,
        trace.line_qo,
        trace.line_qo_prime,
        trace.line_qo_dprime,
    ];
    for line in lines {
        if let Some((a, b)) = clip_line(line, bx0, bx1, bz0, bz1) {
            segment(
                &mut out,
                &frame,
                a,
                b,
                style.construction_stroke,
                "#3c3c3c",
                Some("4 3"),
            );
        }
    }

    // the shade path itself
    polyline(
        &mut out,
        &frame,
        &path.vertices,
        style.path_stroke,
        "#000000",
        None,
        None,
    );

    // labeled points with deterministic radial nudging on collisions
    let mut placed: Vec<(f64, f64)> = Vec::new();
    for (label, point) in trace.labeled_points() {
        let (px, py) = frame.to_screen(point);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.4\" fill=\"#000000\"/>\n",
            fmt(px),
            fmt(py)
        ));
        let dir = point - Point2::new(0.0, 0.0);
        let (mut dx, mut dy) = match dir.normalized() {
            Some(u) => (u.x, -u.z),
            None => (0.6, -0.8),
        };
        // bias interior points upward so labels clear the linework
        if dir.norm() < 1e-9 {
            (dx, dy) = (0.6, -0.8);
        }
        let mut ax = px + dx * 12.0;
        let mut ay = py + dy * 12.0;
        for _ in 0..6 {
            let collides = placed
                .iter()
                .any(|(ox, oy)| (ax - ox).hypot(ay - oy) < style.label_font_size * 0.9);
            if !collides {
                break;
            }
            ax += dx * 8.0;
            ay += dy * 8.0;
        }
        placed.push((ax, ay));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" \
             text-anchor=\"middle\" fill=\"#000000\">{}</text>\n",
            fmt(ax),
            fmt(ay + style.label_font_size * 0.35),
            fmt(style.label_font_size),
            xml_escape(label)
        ));
    }

    out.push_str("</svg>\n");
    out
}

/// Status of one matrix cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellStatus {
    Ok,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell {
    pub width: f64,
    pub height: f64,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixManifest {
    pub cells: Vec<MatrixCell>,
}

impl MatrixManifest {
    pub fn ok_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.status == CellStatus::Ok)
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("{\n  \"schema_version\": 1,\n  \"cells\": [\n");
        for (idx, cell) in self.cells.iter().enumerate() {
            let status = match &cell.status {
                CellStatus::Ok => "\"ok\"".to_string(),
                CellStatus::Skipped(reason) => format!(
                    "\"skipped\", \"reason\": \"{}\"",
                    crate::textfmt::json_escape(reason)
                ),
            };
            s.push_str(&format!(
                "    {{\"width\": {}, \"height\": {}, \"status\": {}}}{}\n",
                cell.width,
                cell.height,
                status,
                if idx + 1 < self.cells.len() { "," } else { "" }
            ));
        }
        s.push_str("  ]\n}\n");
        s
    }
}

/// Dimension presets for the two published matrices and their union.
pub mod presets {
    /// 24 cells: widths 20 down to 17, heights 6 down to 1.
    pub fn fig4() -> (Vec<f64>, Vec<f64>) {
        ((17..=20).rev().map(f64::from).collect(), heights())
    }

    /// 30 cells: widths 16 down to 12, heights 6 down to 1.
    pub fn fig5() -> (Vec<f64>, Vec<f64>) {
        ((12..=16).rev().map(f64::from).collect(), heights())
    }

    /// 54 cells: the union, widths 20 down to 12.
    pub fn full() -> (Vec<f64>, Vec<f64>) {
        ((12..=20).rev().map(f64::from).collect(), heights())
    }

    fn heights() -> Vec<f64> {
        (1..=6).rev().map(f64::from).collect()
    }

    pub fn by_name(name: &str) -> Option<(Vec<f64>, Vec<f64>)> {
        match name {
            "fig4" => Some(fig4()),
            "fig5" => Some(fig5()),
            "full" => Some(full()),
            _ => None,
        }
    }
}

/// Grid of shade casts over `widths` x `heights` (both drawn in the order
/// given: widths left to right, heights top to bottom), scaled uniformly to
/// fit the style's page. Cells that cannot be constructed are recorded as
/// skipped, never fatal.
pub fn plate_matrix(
    widths: &[f64],
    heights: &[f64],
    style: &PlateStyle,
) -> (String, MatrixManifest) {
    let ncols = widths.len().max(1);
    let nrows = heights.len().max(1);
    let max_w = widths.iter().copied().fold(1.0f64, f64::max);
    let max_h = heights.iter().copied().fold(1.0f64, f64::max);
    let pad_in = 0.6;
    let slot_w = max_w + pad_in;
    let slot_h = max_h + pad_in + 0.5; // room for the annotation
    let (page_w, page_h) = style.page;
    let unit = ((page_w - 2.0 * style.margin) / (ncols as f64 * slot_w))
        .min((page_h - 2.0 * style.margin) / (nrows as f64 * slot_h));

    let doc_w = ncols as f64 * slot_w * unit + 2.0 * style.margin;
    let doc_h = nrows as f64 * slot_h * unit + 2.0 * style.margin;
    let mut out = doc_open(doc_w, doc_h, style.metadata.as_deref());
    let mut cells = Vec::with_capacity(ncols * nrows);

    for (row, &height) in heights.iter().enumerate() {
        for (col, &width) in widths.iter().enumerate() {
            let cx = style.margin + (col as f64 + 0.5) * slot_w * unit;
            let cy = style.margin + (row as f64 + 0.45) * slot_h * unit;
            let frame = Frame {
                scale: unit,
                cx,
                cy,
            };
            let label_y = cy + (max_h / 2.0 + 0.45) * unit;
            let status = match TorusElevationSpec::new(width, height)
                .and_then(|spec| run_construction(spec, InterpretationVariant::canonical()))
            {
                Ok(trace) => {
                    let path = trace_shade_path(&trace, 512);
                    polyline(
                        &mut out,
                        &frame,
                        &path.vertices,
                        0.0,
                        "none",
                        Some(&style.shade_fill),
                        None,
                    );
                    outline_path(&mut out, &frame, &trace.spec, style.construction_stroke * 1.4);
                    polyline(
                        &mut out,
                        &frame,
                        &path.vertices,
                        style.construction_stroke * 1.4,
                        "#000000",
                        None,
                        None,
                    );
                    CellStatus::Ok
                }
                Err(err) => {
                    let (x, y) = (cx, cy);
                    out.push_str(&format!(
                        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" \
                         text-anchor=\"middle\" fill=\"#b00000\">n/a</text>\n",
                        fmt(x),
                        fmt(y),
                        fmt((unit * 0.5).max(6.0))
                    ));
                    CellStatus::Skipped(err.to_string())
                }
            };
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" \
                 text-anchor=\"middle\" fill=\"#000000\">{}\u{d7}{}</text>\n",
                fmt(cx),
                fmt(label_y),
                fmt((unit * 0.4).max(6.0)),
                width,
                height
            ));
            cells.push(MatrixCell {
                width,
                height,
                status,
            });
        }
    }

    out.push_str("</svg>\n");
    (out, MatrixManifest { cells })
}

/// Construction path and oracle reference curves overlaid on the outline,
/// with landmark markers at D and E from both layers and a caption block
/// carrying the comparison metrics.
pub fn plate_overlay(
    trace: &ConstructionTrace,
    path: &ShadePath,
    oracle: &OracleShade,
    reports: &[ComparisonReport],
    style: &PlateStyle,
) -> String {
    let spec = &trace.spec;
    let half_w = spec.width / 2.0;
    let half_h = spec.height / 2.0;
    let caption_h = 18.0 * (reports.len() as f64 + 1.0) + 12.0;
    let doc_w = spec.width * style.scale + 2.0 * style.margin;
    let doc_h = spec.height * style.scale + 2.0 * style.margin + caption_h;
    let frame = Frame {
        scale: style.scale,
        cx: style.margin + half_w * style.scale,
        cy: style.margin + half_h * style.scale,
    };
    let mut out = doc_open(doc_w, doc_h, style.metadata.as_deref());

    outline_path(&mut out, &frame, spec, style.outline_stroke);

    // oracle layer
    out.push_str("<g id=\"oracle\">\n");
    polyline(
        &mut out,
        &frame,
        &oracle.outer_loop,
        style.path_stroke,
        &style.oracle_color,
        None,
        None,
    );
    polyline(
        &mut out,
        &frame,
        &oracle.inner_loop,
        style.path_stroke * 0.7,
        &style.oracle_color,
        None,
        Some("6 4"),
    );
    for outline in &oracle.region_outline {
        polyline(
            &mut out,
            &frame,
            outline,
            style.path_stroke * 0.7,
            &style.oracle_color,
            None,
            Some("2 3"),
        );
    }
    let torus = crate::oracle::Torus3::new(spec.major_radius, spec.minor_radius);
    for (u, v) in [
        (std::f64::consts::PI, -std::f64::consts::FRAC_PI_4),
        (0.0, std::f64::consts::FRAC_PI_4),
    ] {
        let (sx, sy) = frame.to_screen(crate::oracle::project_elevation(u, v, &torus));
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"4.0\" fill=\"none\" stroke=\"{}\" \
             stroke-width=\"1.2\"/>\n",
            fmt(sx),
            fmt(sy),
            style.oracle_color
        ));
    }
    out.push_str("</g>\n");

    // construction layer
    out.push_str("<g id=\"construction\">\n");
    polyline(
        &mut out,
        &frame,
        &path.vertices,
        style.path_stroke,
        &style.construction_color,
        None,
        None,
    );
    for landmark in [trace.d, trace.e] {
        let (sx, sy) = frame.to_screen(landmark);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.2\" fill=\"{}\"/>\n",
            fmt(sx),
            fmt(sy),
            style.construction_color
        ));
    }
    out.push_str("</g>\n");

    // caption
    let mut ty = spec.height * style.scale + 2.0 * style.margin;
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\
         config {} variant {}</text>\n",
        fmt(style.margin),
        fmt(ty),
        xml_escape(&spec.config_id()),
        xml_escape(&trace.variant.id())
    ));
    for r in reports {
        ty += 18.0;
        let iou = r
            .iou
            .map(inches)
            .unwrap_or_else(|| "NA".to_string());
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             fill=\"#000000\">{}: hausdorff {} in, mean {} in, iou {}</text>\n",
            fmt(style.margin),
            fmt(ty),
            r.reference.as_str(),
            inches(r.hausdorff_in),
            inches(r.mean_in),
            iou
        ));
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{compare_config, DEFAULT_RESOLUTION};
    use crate::oracle::{build_oracle_shade, Torus3};

    fn trace_6x2() -> (ConstructionTrace, ShadePath) {
        let spec = TorusElevationSpec::new(6.0, 2.0).unwrap();
        let trace = run_construction(spec, InterpretationVariant::canonical()).unwrap();
        let path = trace_shade_path(&trace, 512);
        (trace, path)
    }

    #[test]
    fn construction_plate_has_19_labels_and_is_stable() {
        let (trace, path) = trace_6x2();
        let style = PlateStyle::default();
        let svg = plate_construction(&trace, &path, &style);
        assert_eq!(svg.matches("<text").count(), 19);
        assert_eq!(svg, plate_construction(&trace, &path, &style));
        let expected_w = 6.0 * style.scale + 2.0 * style.margin;
        assert!(svg.contains(&format!("width=\"{}\"", fmt(expected_w))));
    }

    #[test]
    fn construction_plate_is_well_formed_xml() {
        let (trace, path) = trace_6x2();
        let svg = plate_construction(&trace, &path, &PlateStyle::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        let vb = doc.root_element().attribute("viewBox").unwrap();
        assert!(vb.starts_with("0 0 "));
    }

    #[test]
    fn matrix_fig4_and_fig5_cell_counts() {
        let style = PlateStyle::default();
        let (w4, h4) = presets::fig4();
        let (svg4, manifest4) = plate_matrix(&w4, &h4, &style);
        assert_eq!(manifest4.cells.len(), 24);
        assert_eq!(manifest4.ok_count(), 24);
        roxmltree::Document::parse(&svg4).unwrap();

        let (w5, h5) = presets::fig5();
        let (_, manifest5) = plate_matrix(&w5, &h5, &style);
        assert_eq!(manifest5.cells.len(), 30);
        assert_eq!(manifest5.ok_count(), 30);
        // horn cell 12x6 is present and ok
        assert!(manifest5
            .cells
            .iter()
            .any(|c| c.width == 12.0 && c.height == 6.0 && c.status == CellStatus::Ok));
    }

    #[test]
    fn matrix_records_spindle_skips() {
        let style = PlateStyle::default();
        let (svg, manifest) = plate_matrix(&[10.0], &[6.0], &style);
        assert_eq!(manifest.cells.len(), 1);
        match &manifest.cells[0].status {
            CellStatus::Skipped(reason) => assert!(reason.contains("spindle")),
            other => panic!("expected skip, got {other:?}"),
        }
        assert_eq!(manifest.ok_count(), 0);
        roxmltree::Document::parse(&svg).unwrap();
        let json = manifest.to_json();
        assert!(json.contains("\"status\": \"skipped\""));
        assert!(json.contains("spindle"));
    }

    #[test]
    fn overlay_has_both_layers_and_caption() {
        let (trace, _) = trace_6x2();
        let path = trace_shade_path(&trace, 2048);
        let torus = Torus3::new(2.0, 1.0);
        let oracle = build_oracle_shade(&torus, 256).unwrap();
        let reports = compare_config(
            trace.spec,
            InterpretationVariant::canonical(),
            &oracle,
            DEFAULT_RESOLUTION,
        )
        .unwrap();
        let svg = plate_overlay(&trace, &path, &oracle, &reports, &PlateStyle::default());
        assert!(svg.contains("id=\"oracle\""));
        assert!(svg.contains("id=\"construction\""));
        assert!(svg.contains("hausdorff"));
        roxmltree::Document::parse(&svg).unwrap();
        let again = plate_overlay(&trace, &path, &oracle, &reports, &PlateStyle::default());
        assert_eq!(svg, again);
    }

    #[test]
    fn metadata_block_is_embedded() {
        let (trace, path) = trace_6x2();
        let style = PlateStyle {
            metadata: Some("width=6 height=2".to_string()),
            ..PlateStyle::default()
        };
        let svg = plate_construction(&trace, &path, &style);
        assert!(svg.contains("<metadata>width=6 height=2</metadata>"));
    }
}
