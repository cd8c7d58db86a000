//! Marching-squares extraction of shade-region outlines from a mask.
//!
//! The field is binary (1 on SHADE pixel centers, 0 elsewhere) thresholded
//! at 1/2, so every contour vertex sits midway between two adjacent pixel
//! centers. Vertices are kept on an integer half-step lattice until the end,
//! which makes loop stitching exact and deterministic.

use super::mask::{PixelState, ShadeMask};
use crate::planar::Point2;
use std::collections::BTreeMap;

type Key = (i64, i64);

/// Edge midpoints of the cell whose bottom-left pixel is (ix, iz), on the
/// doubled lattice.
fn bottom(ix: i64, iz: i64) -> Key {
    (2 * ix + 1, 2 * iz)
}
fn top(ix: i64, iz: i64) -> Key {
    (2 * ix + 1, 2 * iz + 2)
}
fn left(ix: i64, iz: i64) -> Key {
    (2 * ix, 2 * iz + 1)
}
fn right(ix: i64, iz: i64) -> Key {
    (2 * ix + 2, 2 * iz + 1)
}

/// Closed outlines of the SHADE region, in inches. Saddle cells resolve with
/// the cell center treated as background, which keeps every contour vertex
/// at degree two, so all loops close.
pub fn contours(mask: &ShadeMask) -> Vec<Vec<Point2>> {
    let w = mask.width() as i64;
    let h = mask.height() as i64;
    let inside =
        |ix: i64, iz: i64| -> bool { mask.get(ix as usize, iz as usize) == PixelState::Shade };

    // adjacency between lattice vertices
    let mut adj: BTreeMap<Key, Vec<Key>> = BTreeMap::new();
    let mut link = |a: Key, b: Key| {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    };

    for iz in 0..h - 1 {
        for ix in 0..w - 1 {
            let bl = inside(ix, iz) as u8;
            let br = inside(ix + 1, iz) as u8;
            let tr = inside(ix + 1, iz + 1) as u8;
            let tl = inside(ix, iz + 1) as u8;
            let case = bl | br << 1 | tr << 2 | tl << 3;
            let (b, t, l, r) = (bottom(ix, iz), top(ix, iz), left(ix, iz), right(ix, iz));
            match case {
                0 | 15 => {}
                1 => link(l, b),
                2 => link(b, r),
                3 => link(l, r),
                4 => link(t, r),
                5 => {
                    link(l, b);
                    link(t, r);
                }
                6 => link(b, t),
                7 => link(l, t),
                8 => link(l, t),
                9 => link(b, t),
                10 => {
                    link(b, r);
                    link(l, t);
                }
                11 => link(t, r),
                12 => link(l, r),
                13 => link(b, r),
                14 => link(l, b),
                _ => unreachable!(),
            }
        }
    }

    // walk loops starting from the smallest unvisited key
    let mut visited: BTreeMap<Key, bool> = BTreeMap::new();
    let mut loops = Vec::new();
    let keys: Vec<Key> = adj.keys().copied().collect();
    for start in keys {
        if visited.get(&start).copied().unwrap_or(false) {
            continue;
        }
        let mut walk = vec![start];
        visited.insert(start, true);
        let mut prev = start;
        let mut here = {
            let neighbors = &adj[&start];
            debug_assert_eq!(neighbors.len(), 2, "open contour at {start:?}");
            neighbors[0].min(neighbors[1])
        };
        while here != start {
            walk.push(here);
            visited.insert(here, true);
            let neighbors = &adj[&here];
            debug_assert_eq!(neighbors.len(), 2, "open contour at {here:?}");
            let next = if neighbors[0] == prev {
                neighbors[1]
            } else {
                neighbors[0]
            };
            prev = here;
            here = next;
        }
        walk.push(start);
        loops.push(
            walk.into_iter()
                .map(|(kx, kz)| mask.lattice_point(kx, kz))
                .collect(),
        );
    }
    loops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::polygon_area_abs;

    fn disc_mask(radius: f64, resolution: usize) -> ShadeMask {
        let span = radius * 1.2;
        let pitch = 2.0 * span / resolution as f64;
        ShadeMask::from_classifier(
            resolution,
            resolution,
            Point2::new(-span, -span),
            pitch,
            |p| {
                if (p.x * p.x + p.z * p.z).sqrt() <= radius {
                    PixelState::Shade
                } else {
                    PixelState::Outside
                }
            },
        )
    }

    #[test]
    fn disc_contour_area_converges_to_pi() {
        let mask = disc_mask(1.0, 512);
        let loops = contours(&mask);
        assert_eq!(loops.len(), 1);
        let area = polygon_area_abs(&loops[0]);
        assert!(
            (area - std::f64::consts::PI).abs() < 0.02 * std::f64::consts::PI,
            "area {area}"
        );
    }

    #[test]
    fn annulus_gives_two_loops() {
        let pitch = 0.02;
        let mask = ShadeMask::from_classifier(
            256,
            256,
            Point2::new(-2.56, -2.56),
            pitch,
            |p| {
                let d = (p.x * p.x + p.z * p.z).sqrt();
                if d >= 1.0 && d <= 2.0 {
                    PixelState::Shade
                } else {
                    PixelState::Lit
                }
            },
        );
        let loops = contours(&mask);
        assert_eq!(loops.len(), 2);
        for l in &loops {
            assert_eq!(l.first(), l.last());
        }
    }

    #[test]
    fn empty_mask_has_no_contours() {
        let mask = ShadeMask::from_classifier(
            64,
            64,
            Point2::new(0.0, 0.0),
            1.0,
            |_| PixelState::Lit,
        );
        assert!(contours(&mask).is_empty());
    }

    #[test]
    fn loops_are_deterministic() {
        let mask = disc_mask(0.8, 128);
        assert_eq!(contours(&mask), contours(&mask));
    }
}
