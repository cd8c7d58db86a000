//! 2D geometric kernel for the elevation plane.
//!
//! Coordinates are in inches: `x` rightward, `z` upward, origin at the torus
//! center. These are the ruler-and-compass primitives every construction step
//! is built from; all of them are pure functions over immutable values.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("lines are parallel")]
    ParallelLines,
    #[error("lines are coincident")]
    CoincidentLines,
}

/// A point in the elevation plane (inches).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub z: f64,
}

/// A displacement in the elevation plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub z: f64,
}

impl Point2 {
    pub const fn new(x: f64, z: f64) -> Self {
        Point2 { x, z }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new((self.x + other.x) / 2.0, (self.z + other.z) / 2.0)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.z.is_finite()
    }
}

impl Vec2 {
    pub const fn new(x: f64, z: f64) -> Self {
        Vec2 { x, z }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.z * other.z
    }

    /// z-component of the 3D cross product; sine of the turn angle for units.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.z - self.z * other.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(Vec2::new(self.x / n, self.z / n))
    }
}

impl std::ops::Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, v: Vec2) -> Point2 {
        Point2::new(self.x + v.x, self.z + v.z)
    }
}

impl std::ops::Sub<Point2> for Point2 {
    type Output = Vec2;
    fn sub(self, other: Point2) -> Vec2 {
        Vec2::new(self.x - other.x, self.z - other.z)
    }
}

impl std::ops::Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.z)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.z)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.z * s)
    }
}

/// Infinite line given by an anchor point and a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    anchor: Point2,
    dir: Vec2,
}

impl Line2 {
    /// Builds a line, normalizing `dir`. Errors when `dir` is (near-)zero.
    pub fn from_anchor_dir(anchor: Point2, dir: Vec2) -> Result<Line2, PlanarError> {
        let dir = dir
            .normalized()
            .ok_or(PlanarError::DegenerateInput("zero direction"))?;
        Ok(Line2 { anchor, dir })
    }

    pub fn anchor(self) -> Point2 {
        self.anchor
    }

    pub fn dir(self) -> Vec2 {
        self.dir
    }

    pub fn point_at(self, t: f64) -> Point2 {
        self.anchor + self.dir * t
    }

    /// Perpendicular distance from `p` to the line.
    pub fn distance_to(self, p: Point2) -> f64 {
        self.dir.cross(p - self.anchor).abs()
    }
}

/// Circle in the elevation plane; the profile rings are instances of this.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle2 {
    center: Point2,
    radius: f64,
}

impl Circle2 {
    pub fn new(center: Point2, radius: f64) -> Result<Circle2, PlanarError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(PlanarError::DegenerateInput("radius must be > 0"));
        }
        Ok(Circle2 { center, radius })
    }

    pub fn center(self) -> Point2 {
        self.center
    }

    pub fn radius(self) -> f64 {
        self.radius
    }
}

/// Comparison tolerances. The effective length tolerance is scaled by the
/// scene extent so the same policy works for 1-inch and 20-inch drawings.
#[derive(Debug, Clone, Copy)]
pub struct TolerancePolicy {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            abs_eps: 1e-12,
            rel_eps: 1e-9,
        }
    }
}

/// Tolerances resolved against a concrete scene extent.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    /// Length comparisons, in inches.
    pub length: f64,
    /// Dimensionless direction comparisons (cross products of unit vectors).
    pub direction: f64,
}

impl TolerancePolicy {
    pub fn effective(&self, scene_extent: f64) -> Tol {
        Tol {
            length: self.abs_eps.max(self.rel_eps * scene_extent),
            direction: self.rel_eps,
        }
    }
}

/// Relative window on the discriminant inside which a line-circle
/// intersection collapses to a single tangency point.
const TANGENCY_REL: f64 = 1e-9;

/// Line through two distinct points, anchored at `p`.
pub fn line_through(p: Point2, q: Point2, tol: &Tol) -> Result<Line2, PlanarError> {
    if p.distance(q) <= tol.length {
        return Err(PlanarError::DegenerateInput("coincident points"));
    }
    Line2::from_anchor_dir(p, q - p)
}

/// Intersection point of two non-parallel lines.
pub fn intersect_lines(a: Line2, b: Line2, tol: &Tol) -> Result<Point2, PlanarError> {
    let denom = a.dir.cross(b.dir);
    if denom.abs() <= tol.direction {
        if a.distance_to(b.anchor) <= tol.length {
            return Err(PlanarError::CoincidentLines);
        }
        return Err(PlanarError::ParallelLines);
    }
    let t = (b.anchor - a.anchor).cross(b.dir) / denom;
    Ok(a.point_at(t))
}

/// Intersections of a line and a circle, ordered along the line direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleHits {
    None,
    /// Tangency within the discriminant window.
    One(Point2),
    Two(Point2, Point2),
}

impl CircleHits {
    pub fn count(self) -> usize {
        match self {
            CircleHits::None => 0,
            CircleHits::One(_) => 1,
            CircleHits::Two(_, _) => 2,
        }
    }

    pub fn points(self) -> Vec<Point2> {
        match self {
            CircleHits::None => vec![],
            CircleHits::One(p) => vec![p],
            CircleHits::Two(p, q) => vec![p, q],
        }
    }
}

pub fn intersect_line_circle(l: Line2, c: Circle2) -> CircleHits {
    let w = l.anchor - c.center;
    let b = w.dot(l.dir);
    let disc = b * b - (w.norm_squared() - c.radius * c.radius);
    let window = TANGENCY_REL * c.radius * c.radius;
    if disc.abs() <= window {
        return CircleHits::One(l.point_at(-b));
    }
    if disc < 0.0 {
        return CircleHits::None;
    }
    let root = disc.sqrt();
    CircleHits::Two(l.point_at(-b - root), l.point_at(-b + root))
}

/// Mirror image of `p` across `axis`.
pub fn reflect_point_across_line(p: Point2, axis: Line2) -> Point2 {
    let w = p - axis.anchor;
    let d = axis.dir;
    axis.anchor + d * (2.0 * w.dot(d)) + -w
}

/// Mirror image of a unit direction across `axis`; the result is unit.
pub fn reflect_direction_across_line(dir: Vec2, axis: Line2) -> Vec2 {
    let d = axis.dir;
    d * (2.0 * dir.dot(d)) + Vec2::new(-dir.x, -dir.z)
}

impl std::ops::Add<Vec2> for Vec2 {
    type Output = Vec2;
    fn add(self, other: Vec2) -> Vec2 {
        Vec2::new(self.x + other.x, self.z + other.z)
    }
}

/// Foot of the perpendicular from `p` onto `l`.
pub fn perpendicular_foot(p: Point2, l: Line2) -> Point2 {
    let w = p - l.anchor;
    l.anchor + l.dir * w.dot(l.dir)
}
