//! Analytic ground truth for the torus shade.
//!
//! The light convention: rays drawn at 45 degrees in both plan and elevation,
//! traveling toward +x, away from the viewer (+y) and downward, so the unit
//! ray is `(1, 1, -1)/sqrt(3)` and the true altitude is `arctan(1/sqrt 2)`,
//! conventionally written 35°16'.
//!
//! With the torus parameterized by azimuth `u` and meridian angle `v`, the
//! outward normal is `(cos v cos u, cos v sin u, sin v)` and the terminator
//! (`N · L = 0`) reduces to `tan v = cos u + sin u`, which this module solves
//! in closed form. A raster of the visible surface classifies every outline
//! pixel as lit or in shade; nothing here shares code with the
//! ruler-and-compass construction, which is the point.

mod marching;
mod mask;

pub use marching::contours;
pub use mask::{
    inside_outline, outline_distance, visible_shade_mask, write_pgm, MaskError, PixelState,
    ShadeMask,
};

use crate::planar::Point2;

/// Unit ray-travel direction `(1, 1, -1)/sqrt 3`.
pub const RAY_DIR: [f64; 3] = [
    0.577_350_269_189_625_8,
    0.577_350_269_189_625_8,
    -0.577_350_269_189_625_8,
];

/// Slope of the ray in the elevation projection.
pub const ELEVATION_SLOPE: f64 = -1.0;

/// Slope of the ray in the plan projection.
pub const PLAN_SLOPE: f64 = 1.0;

/// True altitude of the conventional ray: `arctan(1/sqrt 2)` in degrees.
pub fn true_angle() -> f64 {
    (1.0 / std::f64::consts::SQRT_2).atan().to_degrees()
}

/// The true altitude rounded to whole arcminutes, e.g. `(35, 16)`.
pub fn true_angle_arcminutes() -> (u32, u32) {
    let deg = true_angle();
    let whole = deg.floor();
    let minutes = ((deg - whole) * 60.0).round() as u32;
    (whole as u32, minutes)
}

/// `35°16'` style display of the true altitude.
pub fn format_true_angle() -> String {
    let (deg, min) = true_angle_arcminutes();
    format!("{deg}\u{b0}{min}\u{2032}")
}

/// A torus of revolution about the vertical axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Torus3 {
    pub major_radius: f64,
    pub minor_radius: f64,
}

impl Torus3 {
    pub fn new(major_radius: f64, minor_radius: f64) -> Torus3 {
        assert!(
            major_radius >= minor_radius && minor_radius > 0.0,
            "ring or horn torus required"
        );
        Torus3 {
            major_radius,
            minor_radius,
        }
    }

    /// Surface point at azimuth `u`, meridian angle `v` (radians).
    pub fn point(&self, u: f64, v: f64) -> [f64; 3] {
        let ring = self.major_radius + self.minor_radius * v.cos();
        [ring * u.cos(), ring * u.sin(), self.minor_radius * v.sin()]
    }

    /// Outward unit normal at `(u, v)`.
    pub fn normal(&self, u: f64, v: f64) -> [f64; 3] {
        let (sv, cv) = v.sin_cos();
        let (su, cu) = u.sin_cos();
        [cv * cu, cv * su, sv]
    }
}

/// `N · L` at `(u, v)`, up to the positive factor `1/sqrt 3`; positive means
/// the surface faces away from the light (shade).
pub fn shade_sign(u: f64, v: f64) -> f64 {
    let (sv, cv) = v.sin_cos();
    let (su, cu) = u.sin_cos();
    cv * (cu + su) - sv
}

/// Meridian angles of the terminator at azimuth `u`: the outer solution
/// `arctan(cos u + sin u)` and its antipode half a turn away.
pub fn terminator_v(u: f64) -> (f64, f64) {
    let v_outer = (u.cos() + u.sin()).atan();
    (v_outer, v_outer + std::f64::consts::PI)
}

/// Orthographic front-elevation projection of the surface point at `(u, v)`:
/// the depth axis (y) collapses.
pub fn project_elevation(u: f64, v: f64, torus: &Torus3) -> Point2 {
    let p = torus.point(u, v);
    Point2::new(p[0], p[2])
}

/// The projected terminator loops, each sampled at `samples` azimuths and
/// closed.
pub fn terminator_loops(torus: &Torus3, samples: usize) -> (Vec<Point2>, Vec<Point2>) {
    let mut outer = Vec::with_capacity(samples + 1);
    let mut inner = Vec::with_capacity(samples + 1);
    for i in 0..samples {
        let u = std::f64::consts::TAU * i as f64 / samples as f64;
        let (v_outer, v_inner) = terminator_v(u);
        outer.push(project_elevation(u, v_outer, torus));
        inner.push(project_elevation(u, v_inner, torus));
    }
    outer.push(outer[0]);
    inner.push(inner[0]);
    (outer, inner)
}

/// Fraction of (u, v) parameter area facing away from the light, sampled on
/// a `samples x samples` grid. Antipodal normals pair up, so the exact value
/// is 1/2.
pub fn shade_fraction(torus: &Torus3, samples: usize) -> f64 {
    let _ = torus; // independent of the radii; kept for call-site symmetry
    assert!(samples * samples >= 10_000, "need >= 1e4 samples");
    let mut shaded = 0usize;
    for iu in 0..samples {
        let u = std::f64::consts::TAU * iu as f64 / samples as f64;
        for iv in 0..samples {
            let v = std::f64::consts::TAU * iv as f64 / samples as f64;
            if shade_sign(u, v) > 0.0 {
                shaded += 1;
            }
        }
    }
    shaded as f64 / (samples * samples) as f64
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("mask contains no shade pixels")]
    EmptyShadeRegion,
    #[error(transparent)]
    Mask(#[from] MaskError),
}

/// Everything the oracle offers as a comparison reference.
#[derive(Debug, Clone)]
pub struct OracleShade {
    /// Projected outer terminator loop (closed).
    pub outer_loop: Vec<Point2>,
    /// Projected inner terminator loop (closed); hidden in this view but
    /// drawn in classical plates.
    pub inner_loop: Vec<Point2>,
    /// Closed outlines of the visible shade region, vectorized from the
    /// raster mask, largest area first.
    pub region_outline: Vec<Vec<Point2>>,
    /// Parameter-area shade fraction self-check (exactly 1/2 up to sampling).
    pub shade_fraction: f64,
}

/// Vectorizes the shade region of a mask into closed polylines (inches),
/// sorted by descending polygon area.
pub fn extract_outline(mask: &ShadeMask) -> Result<Vec<Vec<Point2>>, OracleError> {
    if !mask.pixels().iter().any(|&s| s == PixelState::Shade) {
        return Err(OracleError::EmptyShadeRegion);
    }
    let mut loops = contours(mask);
    loops.sort_by(|a, b| {
        polygon_area_abs(b)
            .partial_cmp(&polygon_area_abs(a))
            .unwrap()
            .then_with(|| a.len().cmp(&b.len()))
    });
    Ok(loops)
}

/// Absolute shoelace area of a closed polyline.
pub fn polygon_area_abs(poly: &[Point2]) -> f64 {
    let mut sum = 0.0;
    for w in poly.windows(2) {
        sum += w[0].x * w[1].z - w[1].x * w[0].z;
    }
    (sum / 2.0).abs()
}

/// Builds the full oracle reference set for a torus at the given raster
/// resolution (pixels on the long side).
pub fn build_oracle_shade(torus: &Torus3, resolution: usize) -> Result<OracleShade, OracleError> {
    let mask = visible_shade_mask(torus, resolution)?;
    let region_outline = extract_outline(&mask)?;
    let (outer_loop, inner_loop) = terminator_loops(torus, 2048);
    Ok(OracleShade {
        outer_loop,
        inner_loop,
        region_outline,
        shade_fraction: shade_fraction(torus, 512),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn true_angle_value() {
        assert!((true_angle() - 35.2644).abs() < 1e-4);
        assert_eq!(true_angle_arcminutes(), (35, 16));
        assert_eq!(format_true_angle(), "35\u{b0}16\u{2032}");
        // definition: tan(A) * sqrt(2) = 1
        assert!((true_angle().to_radians().tan() * std::f64::consts::SQRT_2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ray_is_unit_and_slopes_match() {
        let n2: f64 = RAY_DIR.iter().map(|c| c * c).sum();
        assert!((n2 - 1.0).abs() < 1e-12);
        assert_eq!(RAY_DIR[2] / RAY_DIR[0], ELEVATION_SLOPE);
        assert_eq!(RAY_DIR[1] / RAY_DIR[0], PLAN_SLOPE);
    }

    #[test]
    fn terminator_key_azimuths() {
        let (v, _) = terminator_v(0.0);
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let (v, _) = terminator_v(std::f64::consts::PI);
        assert!((v + std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        // u = 135 degrees: the terminator crosses the outer equator
        let (v, _) = terminator_v(3.0 * std::f64::consts::FRAC_PI_4);
        assert!(v.abs() < 1e-12);
        let torus = Torus3::new(2.0, 1.0);
        let p = project_elevation(3.0 * std::f64::consts::FRAC_PI_4, v, &torus);
        assert!((p.x + 3.0 * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn terminator_residual_everywhere() {
        for i in 0..10_000 {
            let u = std::f64::consts::TAU * i as f64 / 10_000.0;
            let (v_outer, v_inner) = terminator_v(u);
            // normalized N.L residual, |cos v (cos u + sin u) - sin v| / sqrt(1 + (cosu+sinu)^2)
            let denom = (1.0 + (u.cos() + u.sin()).powi(2)).sqrt();
            assert!(shade_sign(u, v_outer).abs() / denom < 1e-12);
            assert!(shade_sign(u, v_inner).abs() / denom < 1e-12);
            let range = std::f64::consts::SQRT_2.atan();
            assert!(v_outer.abs() <= range + 1e-12);
        }
    }

    #[test]
    fn projection_cases() {
        let torus = Torus3::new(2.0, 1.0);
        let p = project_elevation(std::f64::consts::FRAC_PI_2, 0.0, &torus);
        assert!(p.distance(Point2::new(0.0, 0.0)) < 1e-12);
        let p = project_elevation(0.0, std::f64::consts::FRAC_PI_2, &torus);
        assert!(p.distance(Point2::new(2.0, 1.0)) < 1e-12);
        // matches construction point D
        let p = project_elevation(
            std::f64::consts::PI,
            -std::f64::consts::FRAC_PI_4,
            &torus,
        );
        assert!(p.distance(Point2::new(-2.70711, -0.70711)) < 1e-5);
    }

    #[test]
    fn shade_fraction_is_half() {
        let torus = Torus3::new(2.0, 1.0);
        assert!((shade_fraction(&torus, 256) - 0.5).abs() < 0.004);
        let horn = Torus3::new(3.0, 3.0);
        assert!((shade_fraction(&horn, 256) - 0.5).abs() < 0.004);
        // refinement shrinks the deviation
        let coarse = (shade_fraction(&torus, 128) - 0.5).abs();
        let fine = (shade_fraction(&torus, 512) - 0.5).abs();
        assert!(fine <= coarse + 1e-3);
    }

    #[test]
    fn oracle_shade_assembles() {
        let torus = Torus3::new(2.0, 1.0);
        let shade = build_oracle_shade(&torus, 256).unwrap();
        assert_eq!(shade.outer_loop.first(), shade.outer_loop.last());
        assert_eq!(shade.inner_loop.first(), shade.inner_loop.last());
        assert!(!shade.region_outline.is_empty());
        for poly in &shade.region_outline {
            assert_eq!(poly.first(), poly.last());
        }
        assert!((shade.shade_fraction - 0.5).abs() < 0.01);
    }
}
