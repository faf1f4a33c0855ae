//! Regular tetrahedra parameterised by the planar face angle, and generic
//! hyperbolic tetrahedra given by six edge lengths.

use crate::geom::angle_from_sides;
use crate::labels::{EdgeLabel, FaceLabel, Vertex};
use crate::space::SpaceKind;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

const THIRD_PI: f64 = PI / 3.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TetraError {
    #[error("planar angle {alpha} is outside the valid range for {space}")]
    InvalidAngle { space: SpaceKind, alpha: f64 },
    #[error("edge length {edge} is outside the valid range for {space}")]
    InvalidEdge { space: SpaceKind, edge: f64 },
    #[error("invalid tetrahedron: {0}")]
    InvalidTetrahedron(String),
}

/// Largest spherical edge, reached as the angle tends to 2π/3.
pub fn spherical_edge_limit() -> f64 {
    PI - (1.0f64 / 3.0).acos()
}

fn angle_ok(space: SpaceKind, alpha: f64) -> bool {
    match space {
        SpaceKind::Euclidean => (alpha - THIRD_PI).abs() < 1e-12,
        SpaceKind::Spherical => alpha > THIRD_PI && alpha < 2.0 * THIRD_PI,
        SpaceKind::Hyperbolic => alpha > 0.0 && alpha < THIRD_PI,
    }
}

/// `1 - 2 cos α`, without cancellation near α = π/3.
fn one_minus_two_cos(alpha: f64) -> f64 {
    4.0 * ((alpha + THIRD_PI) / 2.0).sin() * ((alpha - THIRD_PI) / 2.0).sin()
}

/// Edge length of the regular tetrahedron with face angle `alpha`.
/// Uses the half-angle form of `cos a = cos α / (1 - cos α)`.
pub fn edge_from_angle(space: SpaceKind, alpha: f64) -> Result<f64, TetraError> {
    if !angle_ok(space, alpha) {
        return Err(TetraError::InvalidAngle { space, alpha });
    }
    let m = one_minus_two_cos(alpha);
    let den = 2.0 * (1.0 - alpha.cos());
    Ok(match space {
        SpaceKind::Euclidean => 1.0,
        SpaceKind::Spherical => 2.0 * (m / den).sqrt().min(1.0).asin(),
        SpaceKind::Hyperbolic => 2.0 * (-m / den).sqrt().asinh(),
    })
}

pub fn angle_from_edge(space: SpaceKind, a: f64) -> Result<f64, TetraError> {
    let bad = || TetraError::InvalidEdge { space, edge: a };
    let c = match space {
        SpaceKind::Euclidean => {
            return if a > 0.0 && a.is_finite() { Ok(THIRD_PI) } else { Err(bad()) };
        }
        SpaceKind::Spherical => {
            if !(a > 0.0 && a < spherical_edge_limit()) {
                return Err(bad());
            }
            a.cos()
        }
        SpaceKind::Hyperbolic => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(bad());
            }
            a.cosh()
        }
    };
    if space == SpaceKind::Hyperbolic && c.is_infinite() {
        return Ok(0.0);
    }
    Ok((c / (1.0 + c)).acos())
}

/// Shared interface of regular and generic tetrahedra used by developments
/// and geodesic solvers.
pub trait TetraGeometry: Sync {
    fn space(&self) -> SpaceKind;
    fn edge_length(&self, e: EdgeLabel) -> f64;
    /// Planar angle of face `f` at vertex `v`.
    fn face_angle(&self, f: FaceLabel, v: Vertex) -> f64;
    /// Face angle of a regular tetrahedron, `None` for generic ones.
    fn regular_alpha(&self) -> Option<f64>;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetrahedronSpec {
    pub space: SpaceKind,
    pub alpha: f64,
    pub edge: f64,
}

impl TetrahedronSpec {
    pub fn new(space: SpaceKind, alpha: f64) -> Result<TetrahedronSpec, TetraError> {
        let edge = edge_from_angle(space, alpha)?;
        Ok(TetrahedronSpec { space, alpha, edge })
    }

    pub fn euclidean() -> TetrahedronSpec {
        TetrahedronSpec { space: SpaceKind::Euclidean, alpha: THIRD_PI, edge: 1.0 }
    }

    pub fn from_edge(space: SpaceKind, edge: f64) -> Result<TetrahedronSpec, TetraError> {
        let alpha = angle_from_edge(space, edge)?;
        if space != SpaceKind::Euclidean && !angle_ok(space, alpha) {
            return Err(TetraError::InvalidEdge { space, edge });
        }
        Ok(TetrahedronSpec { space, alpha, edge })
    }

    /// Altitude of a face from a vertex to the opposite edge.
    pub fn face_altitude(&self) -> f64 {
        face_altitude(self)
    }

    /// Distance from the face centre to its vertices.
    pub fn face_circumradius(&self) -> f64 {
        let (a, c) = (self.edge, (self.alpha / 2.0).cos());
        match self.space {
            SpaceKind::Euclidean => a / 3f64.sqrt(),
            SpaceKind::Spherical => ((a / 2.0).tan() / c).atan(),
            SpaceKind::Hyperbolic => ((a / 2.0).tanh() / c).atanh(),
        }
    }
}

impl TetraGeometry for TetrahedronSpec {
    fn space(&self) -> SpaceKind {
        self.space
    }
    fn edge_length(&self, _e: EdgeLabel) -> f64 {
        self.edge
    }
    fn face_angle(&self, _f: FaceLabel, _v: Vertex) -> f64 {
        self.alpha
    }
    fn regular_alpha(&self) -> Option<f64> {
        Some(self.alpha)
    }
}

/// Altitude from the right triangle with hypotenuse `a` and angle `α/2`:
/// `tan_k h = tan_k a · cos(α/2)`.
pub fn face_altitude(spec: &TetrahedronSpec) -> f64 {
    let (a, c) = (spec.edge, (spec.alpha / 2.0).cos());
    match spec.space {
        SpaceKind::Euclidean => a * c,
        SpaceKind::Spherical => (a.sin() * c).atan2(a.cos()),
        SpaceKind::Hyperbolic => (a.tanh() * c).atanh(),
    }
}

/// Hyperbolic tetrahedron given by its six edges in the order
/// 12, 13, 14, 23, 24, 34.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericTetraSpec {
    pub edges: [f64; 6],
    /// `angles[f][v]`: angle of the face missing vertex `f` at vertex `v`
    /// (zero on the diagonal).
    pub angles: [[f64; 4]; 4],
}

impl GenericTetraSpec {
    pub fn all_angles_le(&self, bound: f64) -> bool {
        self.face_angles().iter().all(|&x| x <= bound)
    }

    /// The twelve planar angles, face by face.
    pub fn face_angles(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(12);
        for f in 0..4 {
            for v in 0..4 {
                if v != f {
                    out.push(self.angles[f][v]);
                }
            }
        }
        out
    }

    pub fn max_angle(&self) -> f64 {
        self.face_angles().into_iter().fold(0.0, f64::max)
    }

    pub fn regular(alpha: f64) -> Result<GenericTetraSpec, TetraError> {
        let a = edge_from_angle(SpaceKind::Hyperbolic, alpha)?;
        generic_from_edges([a; 6])
    }
}

impl TetraGeometry for GenericTetraSpec {
    fn space(&self) -> SpaceKind {
        SpaceKind::Hyperbolic
    }
    fn edge_length(&self, e: EdgeLabel) -> f64 {
        self.edges[e.index()]
    }
    fn face_angle(&self, f: FaceLabel, v: Vertex) -> f64 {
        self.angles[f.missing.0 as usize][v.0 as usize]
    }
    fn regular_alpha(&self) -> Option<f64> {
        None
    }
}

pub fn generic_from_edges(edges: [f64; 6]) -> Result<GenericTetraSpec, TetraError> {
    if edges.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(TetraError::InvalidTetrahedron("edges must be positive".into()));
    }
    let len = |i: u8, j: u8| edges[EdgeLabel::from_indices(i, j).index()];
    let mut angles = [[0.0; 4]; 4];
    for m in 0..4u8 {
        let face = FaceLabel { missing: Vertex(m) };
        let [x, y, z] = face.vertices();
        let (a, b, c) = (len(y.0, z.0), len(x.0, z.0), len(x.0, y.0));
        let strict = a < b + c && b < a + c && c < a + b;
        if !strict {
            return Err(TetraError::InvalidTetrahedron(format!(
                "face {face} violates the triangle inequality"
            )));
        }
        for (v, opp, s1, s2) in [(x, a, b, c), (y, b, a, c), (z, c, a, b)] {
            let ang = angle_from_sides(SpaceKind::Hyperbolic, s1, s2, opp)
                .map_err(|e| TetraError::InvalidTetrahedron(e.to_string()))?;
            if !(ang > 0.0) {
                return Err(TetraError::InvalidTetrahedron(format!("face {face} is degenerate")));
            }
            angles[m as usize][v.0 as usize] = ang;
        }
    }
    Ok(GenericTetraSpec { edges, angles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    const S: SpaceKind = SpaceKind::Spherical;
    const H: SpaceKind = SpaceKind::Hyperbolic;

    #[test]
    fn edge_examples() {
        assert_abs_diff_eq!(edge_from_angle(S, FRAC_PI_2).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        // arcosh(√2/(2−√2)) evaluated at 30 digits
        assert_abs_diff_eq!(edge_from_angle(H, PI / 4.0).unwrap(), 1.528_570_919_480_998, epsilon = 1e-14);
        let top = edge_from_angle(S, 2.0 * THIRD_PI - 1e-9).unwrap();
        assert_abs_diff_eq!(top, spherical_edge_limit(), epsilon = 1e-6);
        assert_eq!(edge_from_angle(SpaceKind::Euclidean, THIRD_PI).unwrap(), 1.0);
        assert!(edge_from_angle(S, THIRD_PI).is_err());
        assert!(edge_from_angle(H, THIRD_PI).is_err());
        assert!(edge_from_angle(SpaceKind::Euclidean, 1.0).is_err());
    }

    #[test]
    fn direct_formula_agrees_with_half_angle_form() {
        for i in 1..100 {
            let al = THIRD_PI + i as f64 * (THIRD_PI / 100.0);
            let c = al.cos();
            assert_abs_diff_eq!(edge_from_angle(S, al).unwrap(), (c / (1.0 - c)).acos(), epsilon = 1e-7);
            let al = i as f64 * (THIRD_PI / 100.0);
            let c = al.cos();
            assert_abs_diff_eq!(edge_from_angle(H, al).unwrap(), (c / (1.0 - c)).acosh(), epsilon = 1e-7);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_abs_diff_eq!(angle_from_edge(S, FRAC_PI_2).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert!((angle_from_edge(H, 1e-6).unwrap() - THIRD_PI).abs() < 1e-10);
        assert!(angle_from_edge(H, 1e-6).unwrap() < THIRD_PI);
        assert!(angle_from_edge(S, 1e-6).unwrap() > THIRD_PI);
        assert!(angle_from_edge(S, 2.0).is_err());
        assert!(angle_from_edge(H, -1.0).is_err());
    }

    #[test]
    fn altitude_examples() {
        let e = TetrahedronSpec::euclidean();
        assert_abs_diff_eq!(e.face_altitude(), 3f64.sqrt() / 2.0, epsilon = 1e-15);
        // independent right-triangle solve: the altitude splits the face into
        // two right triangles with legs h and a/2, so cosh a = cosh h cosh(a/2)
        let s = TetrahedronSpec::new(H, PI / 6.0).unwrap();
        let h = s.face_altitude();
        assert_abs_diff_eq!(h.cosh() * (s.edge / 2.0).cosh(), s.edge.cosh(), epsilon = 1e-12);
        let sp = TetrahedronSpec::new(S, 1.9).unwrap();
        let h = sp.face_altitude();
        assert_abs_diff_eq!(h.cos() * (sp.edge / 2.0).cos(), sp.edge.cos(), epsilon = 1e-12);
        // α → 0: tanh h → 1
        let t = TetrahedronSpec::new(H, 1e-4).unwrap();
        assert!(t.face_altitude().tanh() > 0.9999);
    }

    #[test]
    fn circumradius() {
        let s = TetrahedronSpec::new(S, FRAC_PI_2).unwrap();
        // octant face: centre (1,1,1)/√3
        assert_abs_diff_eq!(s.face_circumradius(), (1.0 / 3f64.sqrt()).acos(), epsilon = 1e-14);
    }

    #[test]
    fn generic_examples() {
        let g = GenericTetraSpec::regular(PI / 6.0).unwrap();
        for a in g.face_angles() {
            assert_abs_diff_eq!(a, PI / 6.0, epsilon = 1e-12);
        }
        assert!(g.all_angles_le(PI / 4.0));
        let g = GenericTetraSpec::regular(0.26 * PI).unwrap();
        assert!(!g.all_angles_le(PI / 4.0));

        let g = generic_from_edges([2.0, 2.0, 2.0, 2.2, 2.2, 2.2]).unwrap();
        // face 123 has sides 12 = 13 = 2.0, 23 = 2.2
        let cos1 = (2f64.cosh().powi(2) - 2.2f64.cosh()) / 2f64.sinh().powi(2);
        assert_abs_diff_eq!(g.angles[3][0], cos1.acos(), epsilon = 1e-14);
        // face 234 is equilateral with side 2.2
        let ang = TetrahedronSpec::from_edge(H, 2.2).unwrap().alpha;
        assert_abs_diff_eq!(g.angles[0][1], ang, epsilon = 1e-12);
        assert!(generic_from_edges([1.0, 1.0, 1.0, 1.0, 1.0, 5.0]).is_err());
    }
}
