//! Rasterized visible-shade classification of the elevation view.
//!
//! Every pixel center inside the stadium outline `|x| <= R + sqrt(r^2 - z^2)`
//! sees exactly one nearest surface point on the front outer sheet
//! (`cos v >= 0`, `sin u <= 0`), which is solvable in closed form — no ray
//! marching. The pixel is SHADE when that point faces away from the light.

use super::Torus3;
use crate::planar::Point2;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaskError {
    #[error("resolution {0} too small, need at least 64 pixels on the long side")]
    InvalidResolution(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelState {
    Outside,
    Lit,
    Shade,
}

/// Raster over the elevation bounding box, row-major with row 0 at the
/// bottom; pixel centers are at `origin + (i + 0.5, j + 0.5) * pitch`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadeMask {
    width: usize,
    height: usize,
    /// Bottom-left corner of the grid, inches.
    origin: Point2,
    /// Square pixel pitch, inches.
    pitch: f64,
    pixels: Vec<PixelState>,
}

impl ShadeMask {
    /// Builds a mask by classifying every pixel center with `f`.
    pub fn from_classifier(
        width: usize,
        height: usize,
        origin: Point2,
        pitch: f64,
        f: impl Fn(Point2) -> PixelState,
    ) -> ShadeMask {
        let mut pixels = Vec::with_capacity(width * height);
        for iz in 0..height {
            for ix in 0..width {
                let p = Point2::new(
                    origin.x + (ix as f64 + 0.5) * pitch,
                    origin.z + (iz as f64 + 0.5) * pitch,
                );
                pixels.push(f(p));
            }
        }
        ShadeMask {
            width,
            height,
            origin,
            pitch,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn pixels(&self) -> &[PixelState] {
        &self.pixels
    }

    pub fn get(&self, ix: usize, iz: usize) -> PixelState {
        self.pixels[iz * self.width + ix]
    }

    /// Center of pixel `(ix, iz)` in inches.
    pub fn center(&self, ix: usize, iz: usize) -> Point2 {
        Point2::new(
            self.origin.x + (ix as f64 + 0.5) * self.pitch,
            self.origin.z + (iz as f64 + 0.5) * self.pitch,
        )
    }

    /// Position of a half-step lattice coordinate (used by the contour
    /// extractor, whose vertices live midway between pixel centers).
    pub fn lattice_point(&self, kx: i64, kz: i64) -> Point2 {
        Point2::new(
            self.origin.x + (kx as f64 / 2.0 + 0.5) * self.pitch,
            self.origin.z + (kz as f64 / 2.0 + 0.5) * self.pitch,
        )
    }
}

/// Signed z-extent of the stadium outline at `x`, negative when outside.
fn outline_half_height(torus: &Torus3, x: f64) -> f64 {
    let r = torus.minor_radius;
    let big = torus.major_radius;
    if x.abs() <= big {
        r
    } else {
        let dx = x.abs() - big;
        if dx > r {
            -1.0
        } else {
            (r * r - dx * dx).sqrt()
        }
    }
}

/// True when the point is inside (or on) the stadium outline.
pub fn inside_outline(torus: &Torus3, p: Point2) -> bool {
    p.z.abs() <= torus.minor_radius && {
        let h = outline_half_height(torus, p.x);
        h >= 0.0 && p.z.abs() <= h
    }
}

/// Distance from a point to the stadium outline curve (the two profile
/// semicircles plus the top and bottom edges).
pub fn outline_distance(torus: &Torus3, p: Point2) -> f64 {
    let r = torus.minor_radius;
    let big = torus.major_radius;
    let x = p.x.abs();
    let z = p.z;
    // top/bottom edges span |x| <= R at z = +-r
    let edge = if x <= big {
        (z.abs() - r).abs()
    } else {
        ((x - big).powi(2) + (z.abs() - r).powi(2)).sqrt()
    };
    // profile circle centered (R, 0) radius r (mirror-symmetric in x)
    let ring = (((x - big).powi(2) + z * z).sqrt() - r).abs();
    edge.min(ring)
}

/// Classifies one pixel center.
fn classify(torus: &Torus3, p: Point2) -> PixelState {
    if !inside_outline(torus, p) {
        return PixelState::Outside;
    }
    let r = torus.minor_radius;
    let sin_v = (p.z / r).clamp(-1.0, 1.0);
    let cos_v = (1.0 - sin_v * sin_v).max(0.0).sqrt();
    let ring = torus.major_radius + r * cos_v;
    let cos_u = (p.x / ring).clamp(-1.0, 1.0);
    let sin_u = -(1.0 - cos_u * cos_u).max(0.0).sqrt();
    if cos_v * (cos_u + sin_u) - sin_v > 0.0 {
        PixelState::Shade
    } else {
        PixelState::Lit
    }
}

/// Rasterizes the visible shade at `resolution` pixels across the long
/// (width) side, with a ~2% margin of at least 2 pixels all around.
pub fn visible_shade_mask(torus: &Torus3, resolution: usize) -> Result<ShadeMask, MaskError> {
    if resolution < 64 {
        return Err(MaskError::InvalidResolution(resolution));
    }
    let width_in = 2.0 * (torus.major_radius + torus.minor_radius);
    let height_in = 2.0 * torus.minor_radius;
    let margin_px = ((resolution as f64 * 0.02).ceil() as usize).max(2);
    let body_px = resolution - 2 * margin_px;
    let pitch = width_in / body_px as f64;
    let width = resolution;
    let height = (height_in / pitch).ceil() as usize + 2 * margin_px;
    let origin = Point2::new(
        -width_in / 2.0 - margin_px as f64 * pitch,
        -height_in / 2.0 - margin_px as f64 * pitch,
    );

    let mut pixels = vec![PixelState::Outside; width * height];
    pixels
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(iz, row)| {
            let z = origin.z + (iz as f64 + 0.5) * pitch;
            for (ix, px) in row.iter_mut().enumerate() {
                let x = origin.x + (ix as f64 + 0.5) * pitch;
                *px = classify(torus, Point2::new(x, z));
            }
        });

    Ok(ShadeMask {
        width,
        height,
        origin,
        pitch,
        pixels,
    })
}

/// Writes the mask as binary PGM (P5): 0 = outside, 128 = lit, 255 = shade.
pub fn write_pgm(mask: &ShadeMask) -> Vec<u8> {
    let mut out = Vec::with_capacity(mask.width * mask.height + 32);
    out.extend_from_slice(format!("P5\n{} {}\n255\n", mask.width, mask.height).as_bytes());
    // PGM rows go top-down
    for iz in (0..mask.height).rev() {
        for ix in 0..mask.width {
            out.push(match mask.get(ix, iz) {
                PixelState::Outside => 0,
                PixelState::Lit => 128,
                PixelState::Shade => 255,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_resolution() {
        let torus = Torus3::new(2.0, 1.0);
        assert_eq!(
            visible_shade_mask(&torus, 32),
            Err(MaskError::InvalidResolution(32))
        );
    }

    fn classify_at(torus: &Torus3, x: f64, z: f64) -> PixelState {
        classify(torus, Point2::new(x, z))
    }

    #[test]
    fn band_signs() {
        let torus = Torus3::new(2.0, 1.0);
        // bottom band faces away from the light
        assert_eq!(classify_at(&torus, 0.0, -0.999), PixelState::Shade);
        // top faces the source
        assert_eq!(classify_at(&torus, 0.0, 0.999), PixelState::Lit);
        // the exact terminator point on the center vertical: within one
        // pixel either side is acceptable, so just check both neighbors
        let c = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(classify_at(&torus, 0.0, -c - 1e-6), PixelState::Shade);
        assert_eq!(classify_at(&torus, 0.0, -c + 1e-6), PixelState::Lit);
    }

    #[test]
    fn mask_inside_outline_only() {
        let torus = Torus3::new(2.0, 1.0);
        let mask = visible_shade_mask(&torus, 128).unwrap();
        for iz in 0..mask.height() {
            for ix in 0..mask.width() {
                if mask.get(ix, iz) != PixelState::Outside {
                    assert!(inside_outline(&torus, mask.center(ix, iz)));
                }
            }
        }
    }

    #[test]
    fn silhouette_matches_analytic_outline() {
        let torus = Torus3::new(2.0, 1.0);
        let mask = visible_shade_mask(&torus, 256).unwrap();
        for iz in 1..mask.height() - 1 {
            for ix in 1..mask.width() - 1 {
                let here = mask.get(ix, iz) != PixelState::Outside;
                for (dx, dz) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                    let there = mask.get((ix as i64 + dx) as usize, (iz as i64 + dz) as usize)
                        != PixelState::Outside;
                    if here != there {
                        let d = outline_distance(&torus, mask.center(ix, iz));
                        assert!(
                            d <= mask.pitch() * 1.0 + 1e-12,
                            "boundary pixel {d} in from outline (pitch {})",
                            mask.pitch()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pgm_roundtrip_header() {
        let torus = Torus3::new(2.0, 1.0);
        let mask = visible_shade_mask(&torus, 64).unwrap();
        let bytes = write_pgm(&mask);
        let header = format!("P5\n{} {}\n255\n", mask.width(), mask.height());
        assert!(bytes.starts_with(header.as_bytes()));
        assert_eq!(bytes.len(), header.len() + mask.width() * mask.height());
        let body = &bytes[header.len()..];
        assert!(body.iter().all(|&b| b == 0 || b == 128 || b == 255));
    }

    #[test]
    fn deterministic_despite_parallel_rows() {
        let torus = Torus3::new(3.0, 1.0);
        let a = visible_shade_mask(&torus, 128).unwrap();
        let b = visible_shade_mask(&torus, 128).unwrap();
        assert_eq!(a, b);
    }
}
