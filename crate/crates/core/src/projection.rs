//! Gnomonic projection of the sphere and the distortion estimates for
//! angles and short arcs near the tangent point.

use crate::geom::{cross, dot, norm, scale, sub, GeomError, Point2, V3};
use crate::space::SpaceKind;
use crate::tetra::edge_from_angle;
use std::f64::consts::PI;

/// Orthonormal basis of the tangent plane at `c`.
fn tangent_basis(c: V3) -> (V3, V3) {
    let r = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = sub(r, scale(dot(r, c), c));
    let e1 = scale(1.0 / norm(e1), e1);
    (e1, cross(c, e1))
}

/// Central projection of `p` onto the plane tangent to the unit sphere at
/// `tangent_point`, in coordinates of a fixed orthonormal tangent basis.
pub fn gnomonic_project(p: Point2, tangent_point: Point2) -> Result<Point2, GeomError> {
    let c = unit_v(tangent_point);
    let v = unit_v(p);
    let h = dot(v, c);
    if h <= 1e-12 {
        return Err(GeomError::OutOfHemisphere);
    }
    let (e1, e2) = tangent_basis(c);
    let w = scale(1.0 / h, v);
    Ok(Point2::xy(dot(w, e1), dot(w, e2)))
}

fn unit_v(p: Point2) -> V3 {
    let v = p.v();
    scale(1.0 / norm(v), v)
}

/// Differential of the gnomonic map at `v` applied to tangent vector `d`,
/// in ambient coordinates.
fn gnomonic_push(v: V3, c: V3, d: V3) -> V3 {
    let h = dot(v, c);
    sub(scale(1.0 / h, d), scale(dot(d, c) / (h * h), v))
}

/// Projected angle of two great circles through the point at polar angle
/// `rho` from the tangent point. The circles lie in the planes with normals
/// `(a cos ρ, √(1-a²), a sin ρ)`, `a = sin φ`, for `φ = phi1` and
/// `φ = phi1 - alpha`, so they meet at angle `alpha`.
pub fn projected_angle(rho: f64, alpha: f64, phi1: f64) -> f64 {
    // tangent point X1 at the south pole, P at polar angle ρ
    let c = [0.0, 0.0, -1.0];
    let p = [rho.sin(), 0.0, -rho.cos()];
    let normal = |phi: f64| {
        let a = phi.sin();
        [a * rho.cos(), phi.cos(), a * rho.sin()]
    };
    let d1 = cross(normal(phi1), p);
    let d2 = cross(normal(phi1 - alpha), p);
    let (u, w) = (gnomonic_push(p, c, d1), gnomonic_push(p, c, d2));
    norm(cross(u, w)).atan2(dot(u, w))
}

/// `|α̂_r − π/3| < π tan²(r/R) + ε` for the symmetric pair of great circles.
pub fn projected_angle_bound_check(r: f64, big_r: f64, alpha: f64) -> bool {
    projected_angle_bound_check_oriented(r, big_r, alpha, alpha / 2.0)
}

/// As [`projected_angle_bound_check`] with the orientation parameter `phi1`;
/// both `phi1` and `phi1 - alpha` must lie in `[-π/2, π/2]`.
pub fn projected_angle_bound_check_oriented(r: f64, big_r: f64, alpha: f64, phi1: f64) -> bool {
    let rho = r / big_r;
    let eps = alpha - PI / 3.0;
    let ah = projected_angle(rho, alpha, phi1);
    (ah - PI / 3.0).abs() < PI * rho.tan().powi(2) + eps
}

/// Length of the gnomonic image of an arc of length one on the sphere of
/// radius `big_r`, starting at distance `r` from the tangent point and leaving
/// at angle `theta` to the outward meridian.
pub fn projected_arc_length(r: f64, big_r: f64, theta: f64) -> Result<f64, GeomError> {
    let rho = r / big_r;
    let p = [rho.sin(), 0.0, -rho.cos()];
    let t1 = [rho.cos(), 0.0, rho.sin()];
    let t2 = [0.0, 1.0, 0.0];
    let dir = [
        theta.cos() * t1[0] + theta.sin() * t2[0],
        theta.cos() * t1[1] + theta.sin() * t2[1],
        theta.cos() * t1[2] + theta.sin() * t2[2],
    ];
    let s = 1.0 / big_r;
    let q = [
        s.cos() * p[0] + s.sin() * dir[0],
        s.cos() * p[1] + s.sin() * dir[1],
        s.cos() * p[2] + s.sin() * dir[2],
    ];
    let tp = Point2::xyz(0.0, 0.0, -1.0);
    let pp = gnomonic_project(Point2::xyz(p[0], p[1], p[2]), tp)?;
    let qq = gnomonic_project(Point2::xyz(q[0], q[1], q[2]), tp)?;
    Ok(big_r * (pp.x - qq.x).hypot(pp.y - qq.y))
}

/// Right-hand side of the projected-length estimate for `α = π/3 + ε`.
pub fn projected_length_bound(r: f64, eps: f64) -> f64 {
    let a = edge_from_angle(SpaceKind::Spherical, PI / 3.0 + eps).unwrap_or(f64::NAN);
    let den = 1.0 - (2.0 / PI) * a * (r + 1.0);
    (PI / 12.0).cos() * (4.0 + PI * PI * (2.0 * r + 1.0).powi(2)) / (den * den) * eps
}

/// Upper bound for the spherical edge: `π √(2 cos(π/12)) √ε`.
pub fn edge_epsilon_bound(eps: f64) -> f64 {
    PI * (2.0 * (PI / 12.0).cos()).sqrt() * eps.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{lift, Frame};
    use approx::assert_abs_diff_eq;

    #[test]
    fn fixed_point_and_radius() {
        let c = Point2::xyz(0.0, 0.0, 1.0);
        let o = gnomonic_project(c, c).unwrap();
        assert_abs_diff_eq!(o.x.hypot(o.y), 0.0);
        for r in [0.1f64, 0.7, 1.3] {
            let p = Point2::xyz(r.sin(), 0.0, r.cos());
            let q = gnomonic_project(p, c).unwrap();
            assert_abs_diff_eq!(q.x.hypot(q.y), f64::tan(r), epsilon = 1e-14);
        }
        let eq = Point2::xyz(1.0, 0.0, 0.0);
        assert_eq!(gnomonic_project(eq, c), Err(GeomError::OutOfHemisphere));
    }

    #[test]
    fn great_circles_become_lines() {
        let s = SpaceKind::Spherical;
        let c = Point2::xyz(0.2, -0.3, 0.932_737_905_308_881_5);
        let a = Point2::xyz(0.5, 0.1, 0.86);
        let b = Point2::xyz(-0.3, 0.4, 0.866_025_403_784_438_6);
        let n = |p: Point2| {
            let r = (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
            Point2::xyz(p.x / r, p.y / r, p.z / r)
        };
        let (a, b, c) = (n(a), n(b), n(c));
        let f = Frame::toward(s, a, b);
        let pts: Vec<Point2> = [0.0, 0.3, 0.8]
            .iter()
            .map(|t| gnomonic_project(f.point(0.0, *t), c).unwrap())
            .collect();
        let res = (pts[1].x - pts[0].x) * (pts[2].y - pts[0].y) - (pts[1].y - pts[0].y) * (pts[2].x - pts[0].x);
        assert!(res.abs() < 1e-12);
        let _ = lift(s, a);
    }

    /// The closed form for the projected angle, written out from the plane
    /// equations.
    fn cos_bar(rho: f64, a1: f64, a2: f64) -> f64 {
        let s2 = rho.sin().powi(2);
        (a1 * a2 * rho.cos().powi(2) + ((1.0 - a1 * a1) * (1.0 - a2 * a2)).sqrt())
            / ((1.0 - a1 * a1 * s2).sqrt() * (1.0 - a2 * a2 * s2).sqrt())
    }

    #[test]
    fn projected_angle_matches_closed_form() {
        for (rho, eps) in [(0.1f64, 0.01), (0.3, 0.05), (0.0, 0.2), (1.0, 0.4)] {
            let alpha = PI / 3.0 + eps;
            for phi1 in [alpha / 2.0, 0.3f64, alpha - 0.2, PI / 2.0] {
                let ah = projected_angle(rho, alpha, phi1);
                let expect = cos_bar(rho, phi1.sin(), (phi1 - alpha).sin()).clamp(-1.0, 1.0).acos();
                assert_abs_diff_eq!(ah, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn angle_bound_examples() {
        let a = PI / 3.0 + 0.1;
        assert_abs_diff_eq!(projected_angle(0.0, a, a / 2.0), a, epsilon = 1e-14);
        assert!(projected_angle_bound_check(0.0, 1.0, a));
        assert!(projected_angle_bound_check(0.1, 1.0, PI / 3.0 + 0.01));
        assert!(projected_angle_bound_check(0.3, 1.0, PI / 3.0 + 0.05));
    }

    #[test]
    fn arc_length_extremes() {
        // minimum along the inward meridian, from the closed form
        let (r, big_r) = (0.5f64, 4.0f64);
        let min = big_r * (1.0 / big_r).sin() / ((r / big_r).cos() * ((r - 1.0) / big_r).cos());
        assert_abs_diff_eq!(projected_arc_length(r, big_r, PI).unwrap(), min, epsilon = 1e-12);
        let max = big_r * (1.0 / big_r).sin() / ((r / big_r).cos() * ((r + 1.0) / big_r).cos());
        assert_abs_diff_eq!(projected_arc_length(r, big_r, 0.0).unwrap(), max, epsilon = 1e-12);
        for k in 0..32 {
            let l = projected_arc_length(r, big_r, k as f64 * PI / 16.0).unwrap();
            assert!(l >= min - 1e-12 && l <= max + 1e-12);
        }
    }

    #[test]
    fn edge_bound_grid() {
        for i in 1..200 {
            let eps = i as f64 * (PI / 6.0) / 200.0;
            let a = edge_from_angle(SpaceKind::Spherical, PI / 3.0 + eps).unwrap();
            assert!(a < edge_epsilon_bound(eps));
        }
    }
}
