//! Closed geodesics: construction, verification, length and clearance.

use crate::chain::{Chain, ChainError};
use crate::combinatorics::{crossing_sequence, tiling_crossings, CrossingSequence, GeodesicType};
use crate::geom::{self, Frame, Point2};
use crate::labels::{EdgeLabel, FaceLabel, Vertex};
use crate::space::SpaceKind;
use crate::tetra::{GenericTetraSpec, TetraGeometry, TetrahedronSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Crossings closer than this to a vertex count as boundary contact.
pub const CONTAINMENT_MARGIN: f64 = 1e-9;
/// Tolerance of the closure, straightness and midpoint checks.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeodesicError {
    #[error("mu = {mu} outside ({lo}, {hi}): the tiling segment meets a vertex")]
    VertexHit { mu: f64, lo: f64, hi: f64 },
    #[error("chord leaves the development at crossing {face} (signed distance {signed_distance:e})")]
    NotContained { face: usize, signed_distance: f64, length: f64 },
    #[error("spherical chord of length {length} is not shorter than 2π")]
    TooLong { length: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

impl From<ChainError> for GeodesicError {
    fn from(e: ChainError) -> Self {
        GeodesicError::NumericalFailure(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: EdgeLabel,
    /// Position from the lower-labelled endpoint as a fraction of the edge.
    pub fraction: f64,
}

/// Piece of the path on one face, in that face's own chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceSegment {
    pub face: FaceLabel,
    pub from: EdgeLabel,
    pub to: EdgeLabel,
    pub a: Point2,
    pub b: Point2,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    #[serde(rename = "type")]
    pub gtype: Option<GeodesicType>,
    pub space: SpaceKind,
    pub sequence: CrossingSequence,
    pub crossings: Vec<Crossing>,
    pub segments: Vec<FaceSegment>,
    pub length: f64,
    pub clearance: f64,
    /// Largest deviation of incidence angles from supplementary, over all
    /// crossings including the closing one.
    pub angle_residual: f64,
    pub closed: bool,
    pub simple: bool,
}

/// Chart of one face: its lowest-labelled vertex at the chart origin, the
/// next along the first axis, the third on the left.
pub(crate) fn face_chart(spec: &dyn TetraGeometry, f: FaceLabel) -> [(Vertex, Point2); 3] {
    let sp = spec.space();
    let [v0, v1, v2] = f.vertices();
    let origin = match sp {
        SpaceKind::Spherical => Point2::xyz(0.0, 0.0, 1.0),
        _ => Point2::xy(0.0, 0.0),
    };
    let toward = match sp {
        SpaceKind::Spherical => Point2::xyz(1.0, 0.0, 0.0),
        _ => Point2::xy(0.5, 0.0),
    };
    let fr = Frame::toward(sp, origin, toward);
    let l01 = spec.edge_length(EdgeLabel::new(v0, v1));
    let l02 = spec.edge_length(EdgeLabel::new(v0, v2));
    let th = spec.face_angle(f, v0);
    [(v0, origin), (v1, fr.point(0.0, l01)), (v2, fr.point(th, l02))]
}

fn chart_point(chart: &[(Vertex, Point2); 3], v: Vertex) -> Point2 {
    chart.iter().find(|(l, _)| *l == v).map(|c| c.1).expect("vertex of face")
}

/// Largest deviation from π of the two incidence angles at each crossing,
/// with the last crossing identified with the first.
pub(crate) fn angle_residual(chain: &Chain, t: &[f64]) -> f64 {
    let n = chain.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        let out = chain.crossing_angles(t, i).0.unwrap_or(f64::NAN);
        let inc = if i == 0 { chain.crossing_angles(t, n).1 } else { chain.crossing_angles(t, i).1 };
        let r = (out + inc.unwrap_or(f64::NAN) - PI).abs();
        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
    }
    worst
}

/// Path through the given positions (`t.len() == n + 1`, absolute distances
/// from the lower endpoints); no straightness is assumed.
pub fn path_from_positions(spec: &dyn TetraGeometry, seq: &CrossingSequence, t: &[f64]) -> Result<GeodesicPath, GeodesicError> {
    let chain = Chain::new(spec, seq)?;
    Ok(assemble(spec, &chain, t, None))
}

fn assemble(spec: &dyn TetraGeometry, chain: &Chain, t: &[f64], gtype: Option<GeodesicType>) -> GeodesicPath {
    let sp = spec.space();
    let n = chain.n();
    let crossings = (0..n).map(|i| Crossing { edge: chain.edges[i], fraction: t[i] / chain.len[i] }).collect();
    let seglen = chain.segment_lengths(t);
    let mut segments = Vec::with_capacity(n);
    for i in 0..n {
        let chart = face_chart(spec, chain.faces[i]);
        let at = |e: EdgeLabel, s: f64| {
            let (a, b) = (chart_point(&chart, e.lo), chart_point(&chart, e.hi));
            geom::point_along(sp, a, b, s)
        };
        segments.push(FaceSegment {
            face: chain.faces[i],
            from: chain.edges[i],
            to: chain.edges[i + 1],
            a: at(chain.edges[i], t[i]),
            b: at(chain.edges[i + 1], t[i + 1]),
            length: seglen[i],
        });
    }
    let residual = angle_residual(chain, t);
    let closure = (t[n] - t[0]).abs();
    let mut path = GeodesicPath {
        gtype,
        space: sp,
        sequence: CrossingSequence { edges: chain.edges[..n].to_vec() },
        crossings,
        segments,
        length: seglen.iter().sum(),
        clearance: 0.0,
        angle_residual: residual,
        closed: closure < VERIFY_TOL && residual < VERIFY_TOL,
        simple: false,
    };
    path.simple = simplicity_check(&path, spec);
    path.clearance = vertex_clearance(&path, spec);
    path
}

/// No two segments on a common face meet. Segments are chords of the face,
/// so they cross exactly when their endpoints interleave along the face
/// boundary; the comparison is exact because long hyperbolic geodesics run
/// strands closer together than any metric tolerance.
pub fn simplicity_check(path: &GeodesicPath, _spec: &dyn TetraGeometry) -> bool {
    let n = path.segments.len();
    let arcs: Vec<(FaceLabel, f64, f64)> = (0..n)
        .map(|i| {
            let s = &path.segments[i];
            let a = boundary_param(s.face, s.from, path.crossings[i].fraction);
            let b = boundary_param(s.face, s.to, path.crossings[(i + 1) % n].fraction);
            (s.face, a.min(b), a.max(b))
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let ((f1, a1, b1), (f2, a2, b2)) = (arcs[i], arcs[j]);
            if f1 != f2 {
                continue;
            }
            if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                return false;
            }
            let inside = |x: f64| a1 < x && x < b1;
            if inside(a2) != inside(b2) {
                return false;
            }
        }
    }
    true
}

/// Position of a point of edge `e` on the boundary cycle of face `f`,
/// parametrised by `[0, 3)` with the face vertices in increasing order.
fn boundary_param(f: FaceLabel, e: EdgeLabel, fraction: f64) -> f64 {
    let v = f.vertices();
    let k = |x: Vertex| v.iter().position(|&w| w == x).expect("edge of face") as f64;
    let (a, b) = (k(e.lo), k(e.hi));
    match (a as usize, b as usize) {
        (0, 1) | (1, 2) => a + fraction,
        _ => 2.0 + (1.0 - fraction),
    }
}

/// Smallest distance from a tetrahedron vertex to the path, over the
/// segments on faces at that vertex, measured in the face charts.
pub fn vertex_clearance(path: &GeodesicPath, spec: &dyn TetraGeometry) -> f64 {
    let sp = path.space;
    let mut best = f64::INFINITY;
    for s in &path.segments {
        for (_, v) in face_chart(spec, s.face) {
            best = best.min(geom::segment_point_distance(sp, s.a, s.b, v));
        }
    }
    best
}

// ---- Euclidean ----

/// Open interval of μ for which the tiling segment misses every vertex.
pub fn euclid_mu_interval(t: GeodesicType) -> (f64, f64) {
    let (_, q) = t.tracing_pair();
    let q = q as f64;
    ((q - 1.0) / (2.0 * q), (q + 1.0) / (2.0 * q))
}

pub fn euclid_geodesic(t: GeodesicType, mu: f64) -> Result<GeodesicPath, GeodesicError> {
    let (lo, hi) = euclid_mu_interval(t);
    let err = GeodesicError::VertexHit { mu, lo, hi };
    if !(mu > lo && mu < hi) {
        return Err(err);
    }
    let tc = tiling_crossings(t, mu).ok_or(err)?;
    let seq = crossing_sequence(t);
    let spec = TetrahedronSpec::euclidean();
    let chain = Chain::new(&spec, &seq)?;
    if tc.len() != seq.len() || tc.iter().zip(&seq.edges).any(|(c, e)| c.edge != *e) {
        return Err(GeodesicError::NumericalFailure("tiling word differs from the canonical word".into()));
    }
    let mut pos: Vec<f64> = tc.iter().map(|c| c.fraction).collect();
    pos.push(pos[0]);
    Ok(assemble(&spec, &chain, &pos, Some(t)))
}

// ---- curved spaces ----

/// Closed critical polyline of the chain, started from the Euclidean
/// crossing fractions.
pub(crate) fn closed_chain_positions(chain: &Chain, t: GeodesicType) -> Result<Vec<f64>, GeodesicError> {
    let tc = tiling_crossings(t, 0.5)
        .ok_or_else(|| GeodesicError::NumericalFailure("no Euclidean start".into()))?;
    let n = chain.n();
    let mut pos: Vec<f64> = (0..n).map(|i| tc[i].fraction * chain.len[i]).collect();
    pos.push(pos[0]);
    chain.solve_periodic(&mut pos)?;
    Ok(pos)
}

/// Polyline straight inside each quarter, pinned at the midpoints of the
/// edges through X1, Y1, X2, Y2 and X1'.
pub(crate) fn quarter_positions(chain: &Chain, t: GeodesicType) -> Result<Vec<f64>, GeodesicError> {
    let tc = tiling_crossings(t, 0.5)
        .ok_or_else(|| GeodesicError::NumericalFailure("no Euclidean start".into()))?;
    let n = chain.n();
    let mut pos: Vec<f64> = (0..=n).map(|i| tc[i % n].fraction * chain.len[i]).collect();
    let mut fixed = symmetry_indices(n).to_vec();
    fixed.push(n);
    for &i in &fixed {
        pos[i] = chain.len[i] / 2.0;
    }
    chain.solve_with_fixed(&mut pos, &fixed)?;
    Ok(pos)
}

/// Indices of the crossings at X1, Y1, X2, Y2.
pub fn symmetry_indices(n: usize) -> [usize; 4] {
    let h = n / 4;
    [0, h, 2 * h, 3 * h]
}

/// Outcome of the chord construction before the containment verdict.
#[derive(Clone, Debug)]
pub(crate) struct ChordSolve {
    pub chain: Chain,
    pub pos: Vec<f64>,
    pub length: f64,
    /// First crossing with the smallest endpoint margin, and that margin.
    pub margin: (usize, f64),
}

pub(crate) fn solve_chord(spec: &TetrahedronSpec, t: GeodesicType) -> Result<ChordSolve, GeodesicError> {
    if spec.space == SpaceKind::Euclidean {
        return Err(GeodesicError::PreconditionFailed("midpoint construction needs a curved space".into()));
    }
    let seq = crossing_sequence(t);
    let chain = Chain::new(spec, &seq)?;
    let pos = match spec.space {
        // the closed problem degenerates as the length approaches 2π, so the
        // four quarters between the symmetry points are solved separately
        SpaceKind::Spherical => quarter_positions(&chain, t)?,
        _ => closed_chain_positions(&chain, t)?,
    };
    let length = chain.length(&pos);
    let n = chain.n();
    let mut margin = (0, f64::INFINITY);
    for i in 0..n {
        let m = chain.endpoint_margins(&pos, i);
        let v = m[0].min(m[1]);
        if v <= CONTAINMENT_MARGIN && margin.1 > CONTAINMENT_MARGIN {
            margin = (i, v);
        } else if margin.1 > CONTAINMENT_MARGIN && v < margin.1 {
            margin = (i, v);
        }
    }
    Ok(ChordSolve { chain, pos, length, margin })
}

/// The closed geodesic through the midpoints X1, Y1, X2, Y2 of the
/// distinguished edges, or the reason it does not exist on the tetrahedron.
pub fn midpoint_geodesic(spec: &TetrahedronSpec, t: GeodesicType) -> Result<GeodesicPath, GeodesicError> {
    let cs = solve_chord(spec, t)?;
    if spec.space == SpaceKind::Spherical && cs.length >= 2.0 * PI {
        return Err(GeodesicError::TooLong { length: cs.length });
    }
    if cs.margin.1 <= CONTAINMENT_MARGIN {
        return Err(GeodesicError::NotContained { face: cs.margin.0, signed_distance: cs.margin.1, length: cs.length });
    }
    let n = cs.chain.n();
    for i in symmetry_indices(n) {
        let f = cs.pos[i] / cs.chain.len[i];
        if (f - 0.5).abs() > VERIFY_TOL {
            return Err(GeodesicError::NumericalFailure(format!("crossing {i} at fraction {f}, not at the midpoint")));
        }
    }
    let path = assemble(spec, &cs.chain, &cs.pos, Some(t));
    if !path.closed {
        return Err(GeodesicError::NumericalFailure(format!("closure residual {:e}", path.angle_residual)));
    }
    if !path.simple {
        return Err(GeodesicError::NumericalFailure("contained chord is not simple".into()));
    }
    Ok(path)
}

// ---- generic hyperbolic ----

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericSolve {
    pub path: GeodesicPath,
    /// Distance of the closing crossing from A1 along A1A2.
    pub s0: f64,
    /// Sign changes of the angle-sum function seen on the scan grid.
    pub sign_changes: usize,
}

pub fn generic_hyperbolic_geodesic(spec: &GenericTetraSpec, t: GeodesicType) -> Result<GenericSolve, GeodesicError> {
    if !spec.all_angles_le(PI / 4.0 + 1e-12) {
        return Err(GeodesicError::PreconditionFailed(format!(
            "largest planar angle {} exceeds π/4",
            spec.max_angle()
        )));
    }
    let seq = crossing_sequence(t);
    let chain = Chain::new(spec, &seq)?;
    let n = chain.n();
    let len0 = chain.len[0];
    let tc = tiling_crossings(t, 0.5).ok_or_else(|| GeodesicError::NumericalFailure("no start".into()))?;
    let start: Vec<f64> = (0..=n).map(|i| tc[i % n].fraction * chain.len[i]).collect();

    // angle sum at X(s), X'(s) minus π, with the chord solved between them
    let mut warm = start.clone();
    let g = |s: f64, warm: &mut Vec<f64>| -> Result<f64, GeodesicError> {
        warm[0] = s;
        warm[n] = s;
        if chain.solve_fixed_ends(warm).is_err() {
            let mut fresh = start.clone();
            fresh[0] = s;
            fresh[n] = s;
            chain.solve_fixed_ends(&mut fresh)?;
            *warm = fresh;
        }
        let out = chain.crossing_angles(warm, 0).0.unwrap_or(f64::NAN);
        let inc = chain.crossing_angles(warm, n).1.unwrap_or(f64::NAN);
        Ok(out + inc - PI)
    };

    let steps = 64;
    let grid: Vec<f64> = (1..steps).map(|k| len0 * k as f64 / steps as f64).collect();
    let mut vals = Vec::with_capacity(grid.len());
    for &s in &grid {
        vals.push(g(s, &mut warm)?);
    }
    let mut changes = Vec::new();
    for k in 0..vals.len() - 1 {
        if vals[k] == 0.0 || vals[k].signum() != vals[k + 1].signum() {
            changes.push(k);
        }
    }
    let k = *changes
        .first()
        .ok_or_else(|| GeodesicError::NumericalFailure("angle sum has no sign change on (0, |A1A2|)".into()))?;
    let (mut lo, mut hi) = (grid[k], grid[k + 1]);
    let mut glo = vals[k];
    let mut w = start.clone();
    while hi - lo > 1e-12 * len0 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid, &mut w)?;
        if gm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let s0 = 0.5 * (lo + hi);
    g(s0, &mut w)?;
    // polish: the closed geodesic is the periodic critical point
    let mut pos = w.clone();
    if chain.solve_periodic(&mut pos).is_ok() && (pos[0] - s0).abs() < 1e-6 * len0 {
        w = pos;
    }
    let (face, m) = chain.min_margin(&w);
    if m <= CONTAINMENT_MARGIN {
        return Err(GeodesicError::NotContained { face, signed_distance: m, length: chain.length(&w) });
    }
    let path = assemble(spec, &chain, &w, Some(t));
    if !path.closed {
        return Err(GeodesicError::NumericalFailure(format!("closure residual {:e}", path.angle_residual)));
    }
    Ok(GenericSolve { path, s0: w[0], sign_changes: changes.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::generic_from_edges;
    use approx::assert_abs_diff_eq;

    fn ty(p: u32, q: u32) -> GeodesicType {
        GeodesicType::new(p, q).unwrap()
    }

    #[test]
    fn euclidean_lengths() {
        let p = euclid_geodesic(ty(0, 1), 0.5).unwrap();
        assert_abs_diff_eq!(p.length, 2.0, epsilon = 1e-12);
        assert!(p.closed && p.simple);
        let p = euclid_geodesic(ty(1, 2), 0.5).unwrap();
        assert_abs_diff_eq!(p.length, 2.0 * 7f64.sqrt(), epsilon = 1e-12);
        let p = euclid_geodesic(ty(1, 2), 0.9).unwrap();
        assert_abs_diff_eq!(p.length, 2.0 * 7f64.sqrt(), epsilon = 1e-12);
        assert!(matches!(euclid_geodesic(ty(1, 2), 1.0), Err(GeodesicError::VertexHit { .. })));
    }

    #[test]
    fn euclidean_clearance_formula() {
        // the closest approach is where the segment passes a lattice vertex
        for t in GeodesicType::up_to(8) {
            let p = euclid_geodesic(t, 0.5).unwrap();
            let bound = 3f64.sqrt() / (4.0 * (t.norm() as f64).sqrt());
            assert!(p.clearance >= bound - 1e-12, "{t}: {} < {bound}", p.clearance);
        }
    }

    #[test]
    fn spherical_01_everywhere() {
        for k in 1..20 {
            let alpha = PI / 3.0 + k as f64 * (PI / 3.0) / 20.0;
            let spec = TetrahedronSpec::new(SpaceKind::Spherical, alpha).unwrap();
            let p = midpoint_geodesic(&spec, ty(0, 1)).unwrap();
            for c in &p.crossings {
                assert_abs_diff_eq!(c.fraction, 0.5, epsilon = 1e-8);
            }
            assert!(p.length < 2.0 * PI);
        }
    }

    #[test]
    fn spherical_11_threshold() {
        let s = |a: f64| TetrahedronSpec::new(SpaceKind::Spherical, a).unwrap();
        assert!(midpoint_geodesic(&s(0.45 * PI), ty(1, 1)).is_ok());
        let r = midpoint_geodesic(&s(0.55 * PI), ty(1, 1));
        assert!(matches!(r, Err(GeodesicError::NotContained { .. }) | Err(GeodesicError::TooLong { .. })), "{r:?}");
    }

    #[test]
    fn hyperbolic_12() {
        let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, PI / 6.0).unwrap();
        let p = midpoint_geodesic(&spec, ty(1, 2)).unwrap();
        assert!(p.closed && p.simple);
        let bound = 6.0 * (1.0 + 3f64.sqrt()).ln();
        assert!(p.length > bound);
    }

    #[test]
    fn generic_regular_is_midpoint() {
        let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, PI / 6.0).unwrap();
        let g = generic_from_edges([spec.edge; 6]).unwrap();
        for t in [ty(0, 1), ty(1, 1), ty(1, 2)] {
            let a = midpoint_geodesic(&spec, t).unwrap();
            let b = generic_hyperbolic_geodesic(&g, t).unwrap();
            assert_abs_diff_eq!(b.s0, spec.edge / 2.0, epsilon = 1e-8);
            for (x, y) in a.crossings.iter().zip(&b.path.crossings) {
                assert_abs_diff_eq!(x.fraction, y.fraction, epsilon = 1e-8);
            }
        }
        let g = generic_from_edges([2.0, 2.0, 2.0, 2.2, 2.2, 2.2]).unwrap();
        let r = generic_hyperbolic_geodesic(&g, ty(0, 1)).unwrap();
        assert!(r.path.closed && r.path.simple);
    }

    #[test]
    fn forced_crossing_is_not_simple() {
        // (1,1) word with the positions on one face swapped
        let seq = crossing_sequence(ty(1, 1));
        let spec = TetrahedronSpec::euclidean();
        let good = euclid_geodesic(ty(1, 1), 0.5).unwrap();
        let mut t: Vec<f64> = good.crossings.iter().map(|c| c.fraction).collect();
        t.push(t[0]);
        assert!(path_from_positions(&spec, &seq, &t).unwrap().simple);
        for v in t.iter_mut() {
            *v = if *v > 0.5 { 0.05 } else { 0.95 };
        }
        let p = path_from_positions(&spec, &seq, &t).unwrap();
        assert!(!p.simple);
    }
}
