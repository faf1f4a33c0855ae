//! Developments: the chain of faces crossed by a geodesic, unrolled into
//! one model chart.

use crate::chain::{Chain, ChainError};
use crate::combinatorics::{CrossingSequence, GeodesicType};
use crate::geom::{self, Frame, GeomError, Point2, Side, KLEIN_MAX_RADIUS};
use crate::labels::{EdgeLabel, FaceLabel, Vertex};
use crate::space::SpaceKind;
use crate::tetra::TetraGeometry;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnfoldError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("sequence length {0} is not a multiple of four")]
    BadLength(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedFace {
    pub label: FaceLabel,
    pub vertices: [Point2; 3],
    pub labels: [Vertex; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryPoints {
    #[serde(rename = "X1")]
    pub x1: Point2,
    #[serde(rename = "Y1")]
    pub y1: Point2,
    #[serde(rename = "X2")]
    pub x2: Point2,
    #[serde(rename = "Y2")]
    pub y2: Point2,
    #[serde(rename = "X1p")]
    pub x1p: Point2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryVertex {
    pub label: Vertex,
    pub point: Point2,
    /// Sum of the face angles meeting at this vertex of the strip.
    pub angle: f64,
    pub left: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Development {
    pub space: SpaceKind,
    pub alpha: Option<f64>,
    #[serde(rename = "type")]
    pub gtype: Option<GeodesicType>,
    pub sequence: CrossingSequence,
    pub faces: Vec<PlacedFace>,
    /// Closed boundary: left side forward, then right side backward.
    pub boundary: Vec<BoundaryVertex>,
    pub symmetry_points: SymmetryPoints,
    /// Index of the crossed edge whose midpoint sits at the chart origin.
    pub anchor_edge: usize,
    /// Largest chart radius used; Klein points at the clamp radius have lost
    /// their position.
    pub max_radius: f64,
    /// Largest error of a face side measured in the chart.
    pub chart_residual: f64,
}

impl Development {
    /// True when the chart reproduces every face to 1e-9. Klein coordinates
    /// lose precision like `1 / (1 - r)` toward the rim.
    pub fn faithful(&self) -> bool {
        self.chart_residual <= 1e-9 && (self.space != SpaceKind::Hyperbolic || self.max_radius < 1.0 - 1e-6)
    }

    /// Endpoints of crossed edge `i` in the chart, as (lower, upper) label.
    pub fn edge_points(&self, i: usize) -> (Point2, Point2) {
        let n = self.faces.len();
        let e = self.sequence.at(i as isize);
        let f = &self.faces[i.min(n - 1)];
        let pick = |v: Vertex| f.vertices[f.labels.iter().position(|&l| l == v).unwrap_or(0)];
        (pick(e.lo), pick(e.hi))
    }
}

/// Unroll the faces crossed by `seq`. Euclidean and spherical chains start at
/// crossed edge 0 (A1 at the origin, resp. the midpoint of the first edge at
/// the north pole); hyperbolic chains are centred on the midpoint of the
/// middle edge to keep the Klein chart away from its boundary.
pub fn build_development(spec: &dyn TetraGeometry, seq: &CrossingSequence) -> Result<Development, UnfoldError> {
    let n = seq.len();
    if n == 0 || n % 4 != 0 {
        return Err(UnfoldError::BadLength(n));
    }
    let chain = Chain::new(spec, seq)?;
    let space = spec.space();
    let anchor = if space == SpaceKind::Hyperbolic { n / 2 } else { 0 };
    let nv = chain.vertex_left.len();
    let mut pos: Vec<Option<Point2>> = vec![None; nv];
    let mut label: Vec<Vertex> = vec![Vertex(0); nv];
    for i in 0..=n {
        let e = chain.edges[i];
        label[chain.vertex_ids[i][0]] = e.lo;
        label[chain.vertex_ids[i][1]] = e.hi;
    }

    let origin = match space {
        SpaceKind::Spherical => Point2::xyz(0.0, 0.0, 1.0),
        _ => Point2::xy(0.0, 0.0),
    };
    let toward = match space {
        SpaceKind::Spherical => Point2::xyz(1.0, 0.0, 0.0),
        _ => Point2::xy(0.5, 0.0),
    };
    let frame = Frame::toward(space, origin, toward);
    let half = chain.len[anchor] / 2.0;
    let ids = chain.vertex_ids[anchor];
    let (lid, rid) = if chain.vertex_left[ids[0]] { (ids[0], ids[1]) } else { (ids[1], ids[0]) };
    let (mut lp, mut rp) = (frame.point(std::f64::consts::PI, half), frame.point(0.0, half));
    if space == SpaceKind::Euclidean {
        lp = Point2::xy(0.0, 0.0);
        rp = Point2::xy(2.0 * half, 0.0);
    }
    pos[lid] = Some(lp);
    pos[rid] = Some(rp);
    let below = match space {
        SpaceKind::Euclidean => Point2::xy(half, -1.0),
        _ => frame.point(-std::f64::consts::FRAC_PI_2, 0.1),
    };

    let len_of = |a: Vertex, b: Vertex| spec.edge_length(EdgeLabel::new(a, b));
    let place = |a: Point2, b: Point2, da: f64, db: f64, away: Point2| -> Result<Point2, GeomError> {
        let s = geom::signed_distance(space, a, b, away);
        let side = if s > 0.0 { Side::Right } else { Side::Left };
        geom::place_apex(space, a, b, da, db, side)
    };
    let face_ids = |i: usize| -> [usize; 3] {
        let v = chain.common[i];
        let e = chain.edges[i];
        let f = chain.edges[i + 1];
        let vid = if e.lo == v { chain.vertex_ids[i][0] } else { chain.vertex_ids[i][1] };
        let wid = if e.lo == v { chain.vertex_ids[i][1] } else { chain.vertex_ids[i][0] };
        let nid = if f.lo == v { chain.vertex_ids[i + 1][1] } else { chain.vertex_ids[i + 1][0] };
        [vid, wid, nid]
    };

    if space == SpaceKind::Hyperbolic {
        let lorentz = place_lorentz(&chain, half, lid, rid, &face_ids, |i| {
            let [_, wid, nid] = face_ids(i);
            len_of(label[wid], label[nid])
        });
        for (slot, h) in pos.iter_mut().zip(lorentz) {
            *slot = Some(klein(h));
        }
    }
    // forward from the anchor edge
    let mut away = below;
    for i in (anchor..n).filter(|_| space != SpaceKind::Hyperbolic) {
        let [vid, wid, nid] = face_ids(i);
        let (pv, pw) = (pos[vid].expect("placed"), pos[wid].expect("placed"));
        let p = place(pv, pw, chain.len[i + 1], len_of(label[wid], label[nid]), away)?;
        pos[nid] = Some(p);
        away = pw;
    }
    // backward
    let mut away = if anchor < n && space != SpaceKind::Hyperbolic { pos[face_ids(anchor)[2]].expect("placed") } else { below };
    for i in (0..anchor).rev().filter(|_| space != SpaceKind::Hyperbolic) {
        let [vid, wid, nid] = face_ids(i);
        let (pv, pn) = (pos[vid].expect("placed"), pos[nid].expect("placed"));
        let p = place(pv, pn, chain.len[i], len_of(label[wid], label[nid]), away)?;
        pos[wid] = Some(p);
        away = pn;
    }
    let pos: Vec<Point2> = pos.into_iter().map(|p| p.expect("every strip vertex placed")).collect();

    let mut angle = vec![0.0; nv];
    let mut faces = Vec::with_capacity(n);
    for i in 0..n {
        let ids = face_ids(i);
        let face = chain.faces[i];
        for &id in &ids {
            angle[id] += spec.face_angle(face, label[id]);
        }
        faces.push(PlacedFace {
            label: face,
            vertices: [pos[ids[0]], pos[ids[1]], pos[ids[2]]],
            labels: [label[ids[0]], label[ids[1]], label[ids[2]]],
        });
    }

    let mut boundary = Vec::with_capacity(nv);
    let left: Vec<usize> = (0..nv).filter(|&i| chain.vertex_left[i]).collect();
    let right: Vec<usize> = (0..nv).rev().filter(|&i| !chain.vertex_left[i]).collect();
    for id in left.into_iter().chain(right) {
        boundary.push(BoundaryVertex { label: label[id], point: pos[id], angle: angle[id], left: chain.vertex_left[id] });
    }

    let mid = |i: usize| {
        let [a, b] = chain.vertex_ids[i];
        geom::midpoint(space, pos[a], pos[b])
    };
    let h = n / 4;
    let symmetry_points = SymmetryPoints { x1: mid(0), y1: mid(h), x2: mid(2 * h), y2: mid(3 * h), x1p: mid(n) };
    let max_radius = match space {
        SpaceKind::Spherical => 1.0,
        _ => pos.iter().fold(0.0f64, |m, p| m.max(p.x.hypot(p.y))),
    };
    let max_radius = if space == SpaceKind::Hyperbolic { max_radius.min(KLEIN_MAX_RADIUS) } else { max_radius };

    let mut d = Development {
        space,
        alpha: spec.regular_alpha(),
        gtype: None,
        sequence: seq.clone(),
        faces,
        boundary,
        symmetry_points,
        anchor_edge: anchor,
        max_radius,
        chart_residual: 0.0,
    };
    d.chart_residual = gluing_residuals(&d, spec).1;
    Ok(d)
}

/// Development of the canonical sequence of type `t`.
type Lorentz = [f64; 3];

fn lorentz_dot(a: Lorentz, b: Lorentz) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

fn klein(h: Lorentz) -> Point2 {
    let p = Point2::xy(h[0] / h[2], h[1] / h[2]);
    let r = p.x.hypot(p.y);
    if r > KLEIN_MAX_RADIUS {
        Point2::xy(p.x * KLEIN_MAX_RADIUS / r, p.y * KLEIN_MAX_RADIUS / r)
    } else {
        p
    }
}

/// Point at distance `da` from `a` and `db` from `b`, on the side of line
/// `ab` opposite to `away`, on the hyperboloid.
fn apex_lorentz(a: Lorentz, b: Lorentz, da: f64, db: f64, away: Lorentz) -> Lorentz {
    let dab = (-lorentz_dot(a, b)).max(1.0).acosh();
    let (ch, sh) = (dab.cosh(), dab.sinh());
    let u: Lorentz = std::array::from_fn(|k| (b[k] - ch * a[k]) / sh);
    let c = [a[1] * u[2] - a[2] * u[1], a[2] * u[0] - a[0] * u[2], a[0] * u[1] - a[1] * u[0]];
    let mut w = [c[0], c[1], -c[2]];
    let wn = lorentz_dot(w, w).sqrt();
    w.iter_mut().for_each(|x| *x /= wn);
    if lorentz_dot(w, away) > 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    let cos_phi = ((ch * da.cosh() - db.cosh()) / (sh * da.sinh())).clamp(-1.0, 1.0);
    let sin_phi = (1.0 - cos_phi * cos_phi).sqrt();
    let p: Lorentz = std::array::from_fn(|k| da.cosh() * a[k] + da.sinh() * (cos_phi * u[k] + sin_phi * w[k]));
    // back onto the hyperboloid
    let s = (-lorentz_dot(p, p)).sqrt();
    p.map(|x| x / s)
}

/// Hyperbolic strip placed on the hyperboloid, which keeps full relative
/// precision however far the chain reaches; Klein coordinates are taken
/// only at the end.
fn place_lorentz(
    chain: &Chain,
    half: f64,
    lid: usize,
    rid: usize,
    face_ids: &dyn Fn(usize) -> [usize; 3],
    far_side: impl Fn(usize) -> f64,
) -> Vec<Lorentz> {
    let n = chain.n();
    let anchor = n / 2;
    let mut pos: Vec<Option<Lorentz>> = vec![None; chain.vertex_left.len()];
    pos[lid] = Some([-half.sinh(), 0.0, half.cosh()]);
    pos[rid] = Some([half.sinh(), 0.0, half.cosh()]);
    let below = [0.0, -(0.1f64).sinh(), (0.1f64).cosh()];
    let mut away = below;
    for i in anchor..n {
        let [vid, wid, nid] = face_ids(i);
        let (pv, pw) = (pos[vid].expect("placed"), pos[wid].expect("placed"));
        pos[nid] = Some(apex_lorentz(pv, pw, chain.len[i + 1], far_side(i), away));
        away = pw;
    }
    let mut away = if anchor < n { pos[face_ids(anchor)[2]].expect("placed") } else { below };
    for i in (0..anchor).rev() {
        let [vid, wid, nid] = face_ids(i);
        let (pv, pn) = (pos[vid].expect("placed"), pos[nid].expect("placed"));
        pos[wid] = Some(apex_lorentz(pv, pn, chain.len[i], far_side(i), away));
        away = pn;
    }
    pos.into_iter().map(|p| p.expect("every strip vertex placed")).collect()
}

pub fn development_for_type(spec: &dyn TetraGeometry, t: GeodesicType) -> Result<Development, UnfoldError> {
    let seq = crate::combinatorics::crossing_sequence(t);
    let mut d = build_development(spec, &seq)?;
    d.gtype = Some(t);
    Ok(d)
}

fn same_face(space: SpaceKind, a: &PlacedFace, b: &PlacedFace, tol: f64) -> bool {
    a.vertices.iter().zip(&a.labels).all(|(p, l)| {
        b.vertices
            .iter()
            .zip(&b.labels)
            .any(|(q, m)| l == m && geom::distance(space, *p, *q).map(|d| d < tol).unwrap_or(false))
    })
}

/// Relabelling induced by the half-turn of the tetrahedron about the common
/// perpendicular of `e` and its opposite edge.
fn axis_swap(e: EdgeLabel) -> [u8; 4] {
    let o = e.opposite();
    let mut perm = [0, 1, 2, 3];
    perm[e.lo.0 as usize] = e.hi.0;
    perm[e.hi.0 as usize] = e.lo.0;
    perm[o.lo.0 as usize] = o.hi.0;
    perm[o.hi.0 as usize] = o.lo.0;
    perm
}

/// Half-turns about X2, Y1 and Y2 exchange the adjacent halves, resp.
/// quarters, of the development.
pub fn symmetry_check(d: &Development) -> bool {
    let n = d.faces.len();
    if n % 4 != 0 || n == 0 {
        return false;
    }
    let h = n / 4;
    let sp = d.space;
    let tol = 1e-8;
    let turned = |c: Point2, perm: [u8; 4], f: &PlacedFace| PlacedFace {
        label: f.label,
        vertices: f.vertices.map(|p| geom::half_turn(sp, c, p)),
        labels: f.labels.map(|v| Vertex(perm[v.0 as usize])),
    };
    let check = |c: Point2, centre: usize, width: usize| {
        let perm = axis_swap(d.sequence.at(centre as isize));
        (0..width).all(|j| {
            let (a, b) = (&d.faces[centre - 1 - j], &d.faces[centre + j]);
            same_face(sp, &turned(c, perm, a), b, tol)
        })
    };
    let sym = &d.symmetry_points;
    check(sym.x2, 2 * h, 2 * h) && check(sym.y1, h, h) && check(sym.y2, 3 * h, h)
}

/// Largest mismatch between shared-edge endpoints of consecutive faces and
/// between placed edge lengths and the spec.
pub fn gluing_residuals(d: &Development, spec: &dyn TetraGeometry) -> (f64, f64) {
    let sp = d.space;
    let mut glue = 0.0f64;
    let mut iso = 0.0f64;
    for (i, f) in d.faces.iter().enumerate() {
        for a in 0..3 {
            for b in a + 1..3 {
                let l = geom::distance(sp, f.vertices[a], f.vertices[b]).unwrap_or(f64::NAN);
                let want = spec.edge_length(EdgeLabel::new(f.labels[a], f.labels[b]));
                iso = iso.max((l - want).abs());
            }
        }
        if let Some(g) = d.faces.get(i + 1) {
            let e = d.sequence.at(i as isize + 1);
            for v in e.vertices() {
                let pa = f.vertices[f.labels.iter().position(|&l| l == v).unwrap()];
                let pb = g.vertices[g.labels.iter().position(|&l| l == v).unwrap()];
                glue = glue.max(geom::distance(sp, pa, pb).unwrap_or(f64::NAN));
            }
        }
    }
    (glue, iso)
}
