//! Constant-curvature plane geometry in three charts: the Cartesian plane,
//! the unit sphere in R^3 and the Klein disk.
//!
//! Hyperbolic computations lift Klein points to the hyperboloid
//! `x^2 + y^2 - t^2 = -1` and work with the Minkowski form there.

use crate::space::SpaceKind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Klein points are pulled back to this radius before lifting.
pub const KLEIN_MAX_RADIUS: f64 = 1.0 - 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("antipodal points do not determine a unique geodesic")]
    AmbiguousGeodesic,
    #[error("point is not inside the open hemisphere around the tangent point")]
    OutOfHemisphere,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("no triangle with sides {0}, {1}, {2}")]
    NoTriangle(f64, f64, f64),
}

/// A chart point. Planar and Klein points keep `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub z: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0, z: 0.0 };
    pub const NORTH: Point2 = Point2 { x: 0.0, y: 0.0, z: 1.0 };

    pub fn xy(x: f64, y: f64) -> Point2 {
        Point2 { x, y, z: 0.0 }
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Point2 {
        Point2 { x, y, z }
    }

    /// Chart coordinates as a list: two for planar charts, three on the sphere.
    pub fn coords(&self, space: SpaceKind) -> Vec<f64> {
        match space {
            SpaceKind::Spherical => vec![self.x, self.y, self.z],
            _ => vec![self.x, self.y],
        }
    }

    pub fn from_coords(space: SpaceKind, c: &[f64]) -> Option<Point2> {
        match (space, c.len()) {
            (SpaceKind::Spherical, 3) => Some(Point2::xyz(c[0], c[1], c[2])),
            (SpaceKind::Euclidean | SpaceKind::Hyperbolic, 2) => Some(Point2::xy(c[0], c[1])),
            _ => None,
        }
    }

    /// Checks the chart invariant for `space`.
    pub fn is_valid(&self, space: SpaceKind) -> bool {
        let finite = self.x.is_finite() && self.y.is_finite() && self.z.is_finite();
        finite
            && match space {
                SpaceKind::Euclidean => self.z == 0.0,
                SpaceKind::Spherical => (norm(self.v()) - 1.0).abs() < 1e-12,
                SpaceKind::Hyperbolic => self.z == 0.0 && self.x * self.x + self.y * self.y < 1.0,
            }
    }

    #[inline]
    pub(crate) fn v(&self) -> V3 {
        [self.x, self.y, self.z]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment2 {
    pub a: Point2,
    pub b: Point2,
    pub space: SpaceKind,
}

impl Segment2 {
    pub fn new(space: SpaceKind, a: Point2, b: Point2) -> Result<Segment2, GeomError> {
        if distance(space, a, b)? == 0.0 {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment2 { a, b, space })
    }

    pub fn length(&self) -> f64 {
        distance(self.space, self.a, self.b).unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    On,
}

// ---- small vector algebra ----

pub(crate) type V3 = [f64; 3];

#[inline]
pub(crate) fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn mdot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

#[inline]
pub(crate) fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub(crate) fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub(crate) fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn scale(s: f64, a: V3) -> V3 {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub(crate) fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
fn jflip(a: V3) -> V3 {
    [a[0], a[1], -a[2]]
}

/// Inner product of the ambient model: planar dot, R^3 dot, Minkowski.
#[inline]
fn inner(space: SpaceKind, a: V3, b: V3) -> f64 {
    match space {
        SpaceKind::Hyperbolic => mdot(a, b),
        _ => dot(a, b),
    }
}

fn unit(space: SpaceKind, a: V3) -> V3 {
    let n = inner(space, a, a).abs().sqrt();
    scale(1.0 / n, a)
}

/// Ambient position of a chart point: the plane z = 0, the unit sphere, or
/// the upper hyperboloid sheet.
pub(crate) fn lift(space: SpaceKind, p: Point2) -> V3 {
    match space {
        SpaceKind::Euclidean => [p.x, p.y, 0.0],
        SpaceKind::Spherical => {
            let v = p.v();
            scale(1.0 / norm(v), v)
        }
        SpaceKind::Hyperbolic => {
            let (x, y) = clamp_klein(p.x, p.y);
            let s = (1.0 - (x * x + y * y)).sqrt();
            [x / s, y / s, 1.0 / s]
        }
    }
}

pub(crate) fn drop_to_chart(space: SpaceKind, v: V3) -> Point2 {
    match space {
        SpaceKind::Euclidean => Point2::xy(v[0], v[1]),
        SpaceKind::Spherical => {
            let n = norm(v);
            Point2::xyz(v[0] / n, v[1] / n, v[2] / n)
        }
        SpaceKind::Hyperbolic => {
            let (x, y) = clamp_klein(v[0] / v[2], v[1] / v[2]);
            Point2::xy(x, y)
        }
    }
}

fn clamp_klein(x: f64, y: f64) -> (f64, f64) {
    let r = x.hypot(y);
    if r > KLEIN_MAX_RADIUS {
        let s = KLEIN_MAX_RADIUS / r;
        (x * s, y * s)
    } else {
        (x, y)
    }
}

/// Homogeneous coordinates for the projective operations (reflections,
/// line normals) where normalisation is unnecessary.
fn homog(space: SpaceKind, p: Point2) -> V3 {
    match space {
        SpaceKind::Hyperbolic => [p.x, p.y, 1.0],
        _ => lift(space, p),
    }
}

/// Normal of the complete geodesic through `a`, `b` with respect to the
/// ambient inner product; positive side is the left.
fn line_normal(space: SpaceKind, a: Point2, b: Point2) -> V3 {
    match space {
        SpaceKind::Euclidean => [a.y - b.y, b.x - a.x, 0.0],
        SpaceKind::Spherical => cross(lift(space, a), lift(space, b)),
        SpaceKind::Hyperbolic => jflip(cross(homog(space, a), homog(space, b))),
    }
}

// ---- metric ----

pub fn distance(space: SpaceKind, p: Point2, q: Point2) -> Result<f64, GeomError> {
    match space {
        SpaceKind::Euclidean => Ok((p.x - q.x).hypot(p.y - q.y)),
        SpaceKind::Spherical => {
            let (u, v) = (lift(space, p), lift(space, q));
            let c = norm(cross(u, v));
            let d = dot(u, v);
            if c < 1e-12 && d < 0.0 {
                return Err(GeomError::AmbiguousGeodesic);
            }
            Ok(c.atan2(d))
        }
        SpaceKind::Hyperbolic => Ok(hyperboloid_distance(lift(space, p), lift(space, q))),
    }
}

/// `2 asinh(|u - v|_M / 2)`, well conditioned for nearby points.
pub(crate) fn hyperboloid_distance(u: V3, v: V3) -> f64 {
    let w = sub(u, v);
    let q = mdot(w, w).max(0.0);
    2.0 * (0.5 * q.sqrt()).asinh()
}

/// Signed distance from `p` to the complete geodesic through `a`, `b`;
/// positive on the left.
pub fn signed_distance(space: SpaceKind, a: Point2, b: Point2, p: Point2) -> f64 {
    let n = line_normal(space, a, b);
    match space {
        SpaceKind::Euclidean => ((p.x - a.x) * n[0] + (p.y - a.y) * n[1]) / n[0].hypot(n[1]),
        SpaceKind::Spherical => (dot(lift(space, p), n) / norm(n)).clamp(-1.0, 1.0).asin(),
        SpaceKind::Hyperbolic => (mdot(lift(space, p), n) / mdot(n, n).sqrt()).asinh(),
    }
}

pub fn side_of(space: SpaceKind, s: &Segment2, p: Point2) -> Side {
    side_of_tol(space, s, p, DEFAULT_TOL)
}

pub fn side_of_tol(space: SpaceKind, s: &Segment2, p: Point2, tol: f64) -> Side {
    let d = signed_distance(space, s.a, s.b, p);
    if d.abs() < tol {
        Side::On
    } else if d > 0.0 {
        Side::Left
    } else {
        Side::Right
    }
}

// ---- isometries ----

pub fn reflect_across(space: SpaceKind, s: &Segment2, p: Point2) -> Point2 {
    let n = line_normal(space, s.a, s.b);
    match space {
        SpaceKind::Euclidean => {
            let d = ((p.x - s.a.x) * n[0] + (p.y - s.a.y) * n[1]) / (n[0] * n[0] + n[1] * n[1]);
            Point2::xy(p.x - 2.0 * d * n[0], p.y - 2.0 * d * n[1])
        }
        _ => {
            let v = homog(space, p);
            let f = 2.0 * inner(space, v, n) / inner(space, n, n);
            drop_to_chart(space, sub(v, scale(f, n)))
        }
    }
}

/// Rotation by π about `c`.
pub fn half_turn(space: SpaceKind, c: Point2, p: Point2) -> Point2 {
    match space {
        SpaceKind::Euclidean => Point2::xy(2.0 * c.x - p.x, 2.0 * c.y - p.y),
        SpaceKind::Spherical => {
            let (u, v) = (lift(space, c), lift(space, p));
            drop_to_chart(space, sub(scale(2.0 * dot(u, v), u), v))
        }
        SpaceKind::Hyperbolic => {
            let (u, v) = (lift(space, c), homog(space, p));
            drop_to_chart(space, sub(scale(-2.0 * mdot(u, v), u), v))
        }
    }
}

// ---- frames ----

/// Orthonormal frame at a point: `e1` a unit tangent, `e2` its left normal.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    pub space: SpaceKind,
    pub o: V3,
    pub e1: V3,
    pub e2: V3,
}

impl Frame {
    /// Frame at `a` with `e1` pointing to `b`.
    pub fn toward(space: SpaceKind, a: Point2, b: Point2) -> Frame {
        let o = lift(space, a);
        let t = lift(space, b);
        match space {
            SpaceKind::Euclidean => {
                let d = sub(t, o);
                let e1 = scale(1.0 / norm(d), d);
                Frame { space, o, e1, e2: [-e1[1], e1[0], 0.0] }
            }
            SpaceKind::Spherical => {
                let e1 = unit(space, sub(t, scale(dot(t, o), o)));
                Frame { space, o, e1, e2: cross(o, e1) }
            }
            SpaceKind::Hyperbolic => {
                let e1 = unit(space, add(t, scale(mdot(t, o), o)));
                let e2 = unit(space, jflip(cross(o, e1)));
                Frame { space, o, e1, e2 }
            }
        }
    }

    /// Ambient point at distance `t` from the origin in direction `theta`
    /// (measured from `e1` toward `e2`).
    pub fn at(&self, theta: f64, t: f64) -> V3 {
        let dir = add(scale(theta.cos(), self.e1), scale(theta.sin(), self.e2));
        let sp = self.space;
        add(scale(sp.cs(t), self.o), scale(sp.sn(t), dir))
    }

    pub fn point(&self, theta: f64, t: f64) -> Point2 {
        drop_to_chart(self.space, self.at(theta, t))
    }

    /// Coordinates of the foot of the perpendicular from `p` to the `e1`
    /// axis: (signed arc length along the axis, signed distance to it).
    pub fn axis_coords(&self, p: V3) -> (f64, f64) {
        match self.space {
            SpaceKind::Euclidean => {
                let d = sub(p, self.o);
                (dot(d, self.e1), dot(d, self.e2))
            }
            SpaceKind::Spherical => {
                let h = dot(p, self.e2).clamp(-1.0, 1.0).asin();
                (dot(p, self.e1).atan2(dot(p, self.o)), h)
            }
            SpaceKind::Hyperbolic => {
                let h = mdot(p, self.e2).asinh();
                let f = sub(p, scale(mdot(p, self.e2), self.e2));
                let along = (mdot(f, self.e1) / h.cosh()).asinh();
                (along, h)
            }
        }
    }

    /// Polar angle of `p` seen from the origin, in (-π, π].
    pub fn angle_of(&self, p: V3) -> f64 {
        let sp = self.space;
        let d = match sp {
            SpaceKind::Euclidean => sub(p, self.o),
            _ => p,
        };
        inner(sp, d, self.e2).atan2(inner(sp, d, self.e1))
    }
}

/// Interior angle at `v` between the geodesics to `p` and `q`, in [0, π].
pub fn angle_at(space: SpaceKind, v: Point2, p: Point2, q: Point2) -> f64 {
    let f = Frame::toward(space, v, p);
    f.angle_of(lift(space, q)).abs()
}

/// Point at arc length `t` from `a` along the geodesic toward `b`.
pub fn point_along(space: SpaceKind, a: Point2, b: Point2, t: f64) -> Point2 {
    Frame::toward(space, a, b).point(0.0, t)
}

pub fn point_at_fraction(space: SpaceKind, a: Point2, b: Point2, f: f64) -> Point2 {
    let d = distance(space, a, b).unwrap_or(0.0);
    if d == 0.0 {
        return a;
    }
    point_along(space, a, b, f * d)
}

pub fn midpoint(space: SpaceKind, a: Point2, b: Point2) -> Point2 {
    point_at_fraction(space, a, b, 0.5)
}

/// Angle opposite side `c` in a triangle with sides `a`, `b`, `c`.
pub fn angle_from_sides(space: SpaceKind, a: f64, b: f64, c: f64) -> Result<f64, GeomError> {
    let cos = match space {
        SpaceKind::Euclidean => (a * a + b * b - c * c) / (2.0 * a * b),
        SpaceKind::Spherical => (c.cos() - a.cos() * b.cos()) / (a.sin() * b.sin()),
        SpaceKind::Hyperbolic => (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh()),
    };
    if !(cos.is_finite()) || cos.abs() > 1.0 + 1e-12 {
        return Err(GeomError::NoTriangle(a, b, c));
    }
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Third vertex of the triangle on segment `a b` with `|a c| = da`,
/// `|b c| = db`, placed on the requested side.
pub fn place_apex(
    space: SpaceKind,
    a: Point2,
    b: Point2,
    da: f64,
    db: f64,
    side: Side,
) -> Result<Point2, GeomError> {
    let c = distance(space, a, b)?;
    let ang = angle_from_sides(space, da, c, db)?;
    let th = if side == Side::Right { -ang } else { ang };
    Ok(Frame::toward(space, a, b).point(th, da))
}

/// Distance from `p` to the segment `a b` (not the complete geodesic).
pub fn segment_point_distance(space: SpaceKind, a: Point2, b: Point2, p: Point2) -> f64 {
    let len = match distance(space, a, b) {
        Ok(l) if l > 0.0 => l,
        _ => return distance(space, a, p).unwrap_or(f64::NAN),
    };
    let f = Frame::toward(space, a, b);
    let (s, h) = f.axis_coords(lift(space, p));
    if (0.0..=len).contains(&s) {
        h.abs()
    } else {
        let da = distance(space, a, p).unwrap_or(f64::INFINITY);
        let db = distance(space, b, p).unwrap_or(f64::INFINITY);
        da.min(db)
    }
}

/// True when the two segments meet at a single interior point of both.
/// Touching at endpoints or collinear overlap within `tol` counts as crossing
/// as well, so callers treat contact as a failure of simplicity.
pub fn segments_cross(space: SpaceKind, s1: &Segment2, s2: &Segment2, tol: f64) -> bool {
    let d1 = signed_distance(space, s1.a, s1.b, s2.a);
    let d2 = signed_distance(space, s1.a, s1.b, s2.b);
    let d3 = signed_distance(space, s2.a, s2.b, s1.a);
    let d4 = signed_distance(space, s2.a, s2.b, s1.b);
    let apart = |x: f64, y: f64| (x > tol && y > tol) || (x < -tol && y < -tol);
    if apart(d1, d2) || apart(d3, d4) {
        return false;
    }
    let touching = [d1, d2, d3, d4].iter().any(|d| d.abs() <= tol);
    if touching {
        // contact: does the touching endpoint actually lie on the other segment?
        let pairs = [(s2.a, s1), (s2.b, s1), (s1.a, s2), (s1.b, s2)];
        return pairs
            .iter()
            .any(|(p, s)| segment_point_distance(space, s.a, s.b, *p) <= tol);
    }
    if space == SpaceKind::Spherical {
        // the two great circles also meet at the antipode of the crossing
        let i = cross(line_normal(space, s1.a, s1.b), line_normal(space, s2.a, s2.b));
        let m1 = add(s1.a.v(), s1.b.v());
        let m2 = add(s2.a.v(), s2.b.v());
        let sg = dot(i, m1).signum();
        return dot(scale(sg, i), m2) > 0.0;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    const E: SpaceKind = SpaceKind::Euclidean;
    const S: SpaceKind = SpaceKind::Spherical;
    const H: SpaceKind = SpaceKind::Hyperbolic;

    fn klein_cross_ratio(p: Point2, q: Point2) -> f64 {
        // ideal endpoints of the chord through p and q
        let (dx, dy) = (q.x - p.x, q.y - p.y);
        let a = dx * dx + dy * dy;
        let b = 2.0 * (p.x * dx + p.y * dy);
        let c = p.x * p.x + p.y * p.y - 1.0;
        let disc = (b * b - 4.0 * a * c).sqrt();
        let t0 = (-b - disc) / (2.0 * a);
        let t1 = (-b + disc) / (2.0 * a);
        // parameters: p at 0, q at 1
        0.5 * ((1.0 - t0) * (t1 - 0.0) / ((0.0 - t0) * (t1 - 1.0))).ln()
    }

    #[test]
    fn distance_examples() {
        assert_abs_diff_eq!(distance(E, Point2::xy(0.0, 0.0), Point2::xy(3.0, 4.0)).unwrap(), 5.0);
        let d = distance(S, Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d, FRAC_PI_2, epsilon = 1e-15);
        let d = distance(H, Point2::xy(0.0, 0.0), Point2::xy(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(d, 0.5 * (1.5f64 / 0.5).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(d, 0.549_306_144_334_054_8, epsilon = 1e-15);
    }

    #[test]
    fn antipodal_is_ambiguous() {
        let r = distance(S, Point2::xyz(0.0, 0.0, 1.0), Point2::xyz(0.0, 0.0, -1.0));
        assert_eq!(r, Err(GeomError::AmbiguousGeodesic));
    }

    #[test]
    fn hyperbolic_distance_matches_cross_ratio() {
        let pts = [
            (Point2::xy(-0.3, 0.2), Point2::xy(0.6, -0.1)),
            (Point2::xy(0.9, 0.0), Point2::xy(0.0, 0.95)),
            (Point2::xy(0.01, 0.02), Point2::xy(0.015, 0.021)),
        ];
        for (p, q) in pts {
            let d = distance(H, p, q).unwrap();
            assert_abs_diff_eq!(d, klein_cross_ratio(p, q), epsilon = 1e-12);
        }
    }

    #[test]
    fn side_examples() {
        let s = Segment2::new(E, Point2::xy(0.0, 0.0), Point2::xy(1.0, 0.0)).unwrap();
        assert_eq!(side_of(E, &s, Point2::xy(0.5, 1.0)), Side::Left);
        let s = Segment2::new(S, Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(side_of(S, &s, Point2::xyz(0.0, 0.0, 1.0)), Side::Left);
        let s = Segment2::new(H, Point2::xy(-0.5, 0.0), Point2::xy(0.5, 0.0)).unwrap();
        assert_eq!(side_of(H, &s, Point2::xy(0.0, -0.1)), Side::Right);
        assert_eq!(side_of(H, &s, Point2::xy(0.9, 0.0)), Side::On);
    }

    #[test]
    fn signed_distance_values() {
        let sd = signed_distance(H, Point2::xy(-0.5, 0.0), Point2::xy(0.5, 0.0), Point2::xy(0.0, 0.5));
        assert_abs_diff_eq!(sd, 0.5f64.atanh(), epsilon = 1e-14);
        let sd = signed_distance(S, Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0), Point2::xyz(0.6, 0.0, -0.8));
        assert_abs_diff_eq!(sd, -(0.8f64.asin()), epsilon = 1e-14);
    }

    #[test]
    fn reflection_examples() {
        let s = Segment2::new(E, Point2::xy(-1.0, 0.0), Point2::xy(1.0, 0.0)).unwrap();
        let r = reflect_across(E, &s, Point2::xy(0.0, 1.0));
        assert_abs_diff_eq!(r.y, -1.0);
        let s = Segment2::new(S, Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0)).unwrap();
        let r = reflect_across(S, &s, Point2::xyz(0.0, 0.0, 1.0));
        assert_abs_diff_eq!(r.z, -1.0, epsilon = 1e-15);
        let s = Segment2::new(H, Point2::xy(-0.5, 0.0), Point2::xy(0.5, 0.0)).unwrap();
        let r = reflect_across(H, &s, Point2::xy(0.0, 0.3));
        assert_abs_diff_eq!(r.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.y, -0.3, epsilon = 1e-15);
    }

    #[test]
    fn half_turn_fixes_center_and_swaps_neighbours() {
        for sp in [E, S, H] {
            let (a, b) = match sp {
                S => (Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 0.6, 0.8)),
                _ => (Point2::xy(-0.3, 0.1), Point2::xy(0.4, 0.2)),
            };
            let m = midpoint(sp, a, b);
            let r = half_turn(sp, m, a);
            assert!(distance(sp, r, b).unwrap() < 1e-12, "{sp}");
            assert!(distance(sp, half_turn(sp, m, m), m).unwrap() < 1e-12);
        }
    }

    #[test]
    fn point_along_hits_distance() {
        for sp in [E, S, H] {
            let (a, b) = match sp {
                S => (Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 0.6, 0.8)),
                _ => (Point2::xy(-0.3, 0.1), Point2::xy(0.4, 0.2)),
            };
            let p = point_along(sp, a, b, 0.2);
            assert_abs_diff_eq!(distance(sp, a, p).unwrap(), 0.2, epsilon = 1e-13);
            assert!(signed_distance(sp, a, b, p).abs() < 1e-13);
        }
    }

    #[test]
    fn apex_and_angles() {
        // equilateral triangles in each space
        for (sp, side) in [(E, 1.0), (S, FRAC_PI_2), (H, 1.2)] {
            let (a, b) = match sp {
                S => (Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0)),
                E => (Point2::xy(0.0, 0.0), Point2::xy(1.0, 0.0)),
                H => (Point2::xy(-side.tanh() / 2.0f64.cosh(), 0.0), Point2::xy(0.0, 0.0)),
            };
            let b = if sp == H { point_along(sp, a, b, side) } else { b };
            let c = place_apex(sp, a, b, side, side, Side::Left).unwrap();
            assert_abs_diff_eq!(distance(sp, a, c).unwrap(), side, epsilon = 1e-12);
            assert_abs_diff_eq!(distance(sp, b, c).unwrap(), side, epsilon = 1e-12);
            assert!(signed_distance(sp, a, b, c) > 0.0);
            let alpha = angle_from_sides(sp, side, side, side).unwrap();
            assert_abs_diff_eq!(angle_at(sp, a, b, c), alpha, epsilon = 1e-12);
        }
        // octant triangle
        let a = angle_at(S, Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0), Point2::xyz(0.0, 0.0, 1.0));
        assert_abs_diff_eq!(a, FRAC_PI_2, epsilon = 1e-15);
        assert!(angle_from_sides(E, 1.0, 1.0, 3.0).is_err());
        let _ = PI;
    }

    #[test]
    fn segment_point_distance_cases() {
        let (a, b) = (Point2::xy(0.0, 0.0), Point2::xy(1.0, 0.0));
        assert_abs_diff_eq!(segment_point_distance(E, a, b, Point2::xy(0.5, 0.3)), 0.3);
        assert_abs_diff_eq!(segment_point_distance(E, a, b, Point2::xy(2.0, 0.0)), 1.0);
        let (a, b) = (Point2::xy(-0.5, 0.0), Point2::xy(0.5, 0.0));
        let d = segment_point_distance(H, a, b, Point2::xy(0.0, 0.5));
        assert_abs_diff_eq!(d, 0.5f64.atanh(), epsilon = 1e-14);
        let d = segment_point_distance(H, a, b, Point2::xy(0.9, 0.0));
        assert_abs_diff_eq!(d, distance(H, b, Point2::xy(0.9, 0.0)).unwrap(), epsilon = 1e-14);
        let (a, b) = (Point2::xyz(1.0, 0.0, 0.0), Point2::xyz(0.0, 1.0, 0.0));
        let d = segment_point_distance(S, a, b, Point2::xyz(0.0, -0.6, 0.8));
        assert_abs_diff_eq!(d, distance(S, a, Point2::xyz(0.0, -0.6, 0.8)).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn crossing_segments() {
        for sp in [E, H] {
            let s1 = Segment2::new(sp, Point2::xy(-0.5, 0.0), Point2::xy(0.5, 0.0)).unwrap();
            let s2 = Segment2::new(sp, Point2::xy(0.0, -0.5), Point2::xy(0.0, 0.5)).unwrap();
            let s3 = Segment2::new(sp, Point2::xy(0.6, -0.5), Point2::xy(0.6, 0.5)).unwrap();
            let s4 = Segment2::new(sp, Point2::xy(0.5, 0.0), Point2::xy(0.6, 0.3)).unwrap();
            assert!(segments_cross(sp, &s1, &s2, 1e-12));
            assert!(!segments_cross(sp, &s1, &s3, 1e-12));
            assert!(segments_cross(sp, &s1, &s4, 1e-12));
        }
        let n = |x: f64, y: f64, z: f64| {
            let r = (x * x + y * y + z * z).sqrt();
            Point2::xyz(x / r, y / r, z / r)
        };
        let s1 = Segment2::new(S, n(1.0, -0.3, 0.0), n(1.0, 0.3, 0.0)).unwrap();
        let s2 = Segment2::new(S, n(1.0, 0.0, -0.3), n(1.0, 0.0, 0.3)).unwrap();
        let s3 = Segment2::new(S, n(-1.0, 0.0, -0.3), n(-1.0, 0.0, 0.3)).unwrap();
        assert!(segments_cross(S, &s1, &s2, 1e-12));
        assert!(!segments_cross(S, &s1, &s3, 1e-12));
    }
}
