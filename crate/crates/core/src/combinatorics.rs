//! Crossing words of type-(p,q) geodesics, traced through the labelled
//! triangular tiling of the plane.
//!
//! Lattice coordinates `(u, v)` stand for the point `u e1 + v e2` with
//! `e1 = (1, 0)`, `e2 = (1/2, √3/2)`. The tiling vertex `(i, j)` carries the
//! label fixed by the parities of `i` and `j`; reflecting a triangle in an
//! edge then reproduces the labels of the tetrahedron.

use crate::labels::{EdgeLabel, FaceLabel, Vertex};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("({p},{q}) is not a geodesic type: need gcd 1 and 0 <= p <= q, not (0,0)")]
    InvalidType { p: u32, q: u32 },
    #[error("type (0,1) has no link nodes")]
    NoLinkNodes,
    #[error("sequence has {0} link nodes, expected 2")]
    LinkNodeCount(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeodesicType {
    pub p: u32,
    pub q: u32,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl GeodesicType {
    pub fn new(p: u32, q: u32) -> Result<GeodesicType, CombinatoricsError> {
        if p > q || q == 0 || gcd(p as u64, q as u64) != 1 {
            return Err(CombinatoricsError::InvalidType { p, q });
        }
        Ok(GeodesicType { p, q })
    }

    /// Number of crossings, `4(p+q)`.
    pub fn crossings(self) -> usize {
        4 * (self.p + self.q) as usize
    }

    /// `p² + pq + q²`.
    pub fn norm(self) -> u64 {
        let (p, q) = (self.p as u64, self.q as u64);
        p * p + p * q + q * q
    }

    /// The tiling line is traced with an odd second parameter so that μ = 1/2
    /// misses every lattice vertex; for even `q` the roles are swapped.
    pub fn tracing_pair(self) -> (u32, u32) {
        if self.q % 2 == 0 {
            (self.q, self.p)
        } else {
            (self.p, self.q)
        }
    }

    /// All types with `p + q <= n`, sorted.
    pub fn up_to(n: u32) -> Vec<GeodesicType> {
        let mut out = Vec::new();
        for s in 1..=n {
            for p in 0..=s / 2 {
                if let Ok(t) = GeodesicType::new(p, s - p) {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for GeodesicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl Serialize for GeodesicType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.p, self.q].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeodesicType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[u32; 2]>::deserialize(d)?;
        GeodesicType::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// Cyclic word of crossed edges, starting at the A1A2 crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSequence {
    pub edges: Vec<EdgeLabel>,
}

impl CrossingSequence {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Cyclic access.
    pub fn at(&self, i: isize) -> EdgeLabel {
        let n = self.edges.len() as isize;
        self.edges[i.rem_euclid(n) as usize]
    }

    /// Crossing counts per opposite pair {12,34}, {13,24}, {14,23}.
    pub fn pair_multiplicities(&self) -> [usize; 3] {
        let mut m = [0; 3];
        for e in &self.edges {
            m[e.pair()] += 1;
        }
        m
    }

    pub fn edge_counts(&self) -> [usize; 6] {
        let mut m = [0; 6];
        for e in &self.edges {
            m[e.index()] += 1;
        }
        m
    }

    /// Face between crossing `i` and crossing `i + 1`.
    pub fn face(&self, i: usize) -> Option<FaceLabel> {
        FaceLabel::spanned(self.at(i as isize), self.at(i as isize + 1))
    }

    pub fn tokens(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.token()).collect()
    }

    pub fn from_tokens(tokens: &[&str]) -> Result<CrossingSequence, String> {
        let edges = tokens.iter().map(|t| t.parse()).collect::<Result<Vec<_>, _>>()?;
        Ok(CrossingSequence { edges })
    }

    pub fn rotated(&self, k: usize) -> CrossingSequence {
        let mut e = self.edges.clone();
        let n = e.len().max(1);
        e.rotate_left(k % n);
        CrossingSequence { edges: e }
    }

    pub fn reversed(&self) -> CrossingSequence {
        let mut e = self.edges.clone();
        e.reverse();
        CrossingSequence { edges: e }
    }
}

// ---- tiling trace ----

/// Scalar used by the tracer: exact rationals for word generation, floats
/// for crossing positions at arbitrary μ.
pub(crate) trait Lat:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn int(i: i64) -> Self;
    fn floor_i(self) -> i64;
    fn to_f64(self) -> f64;
}

impl Lat for f64 {
    fn int(i: i64) -> f64 {
        i as f64
    }
    fn floor_i(self) -> i64 {
        self.floor() as i64
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Lat for Ratio<i64> {
    fn int(i: i64) -> Self {
        Ratio::from_integer(i)
    }
    fn floor_i(self) -> i64 {
        self.floor().to_integer()
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

pub(crate) fn lattice_label(i: i64, j: i64) -> Vertex {
    match (i.rem_euclid(2), j.rem_euclid(2)) {
        (0, 0) => Vertex(0),
        (1, 0) => Vertex(1),
        (0, 1) => Vertex(2),
        _ => Vertex(3),
    }
}

/// One crossing of the tiling segment with a tiling edge.
#[derive(Clone, Copy, Debug)]
pub struct TilingCrossing {
    pub edge: EdgeLabel,
    /// Position along the edge from its lower-labelled endpoint, in edge units.
    pub fraction: f64,
    /// Parameter along the segment, in [0, 1).
    pub lambda: f64,
    /// Endpoints of the crossed tiling edge (lower label first), lattice coordinates.
    pub ends: [(i64, i64); 2],
}

#[derive(Clone, Copy)]
enum Family {
    Horizontal(i64),
    Vertical(i64),
    Diagonal(i64),
}

/// Crossings of the segment from `(μ, 0)` to `(μ + 2p, 2q)` (lattice
/// coordinates) with tiling edges, for λ in [0, 1), ordered along the segment.
/// Returns `None` when the segment meets a tiling vertex.
pub(crate) fn trace<T: Lat>(p: u32, q: u32, mu: T) -> Option<Vec<TilingCrossing>> {
    let (p, q) = (p as i64, q as i64);
    let mut ev: Vec<(T, Family)> = Vec::new();
    for k in 0..2 * q {
        ev.push((T::int(k) / T::int(2 * q), Family::Horizontal(k)));
    }
    if p > 0 {
        let lo = mu.floor_i() + 1;
        for m in lo..lo + 2 * p {
            ev.push(((T::int(m) - mu) / T::int(2 * p), Family::Vertical(m)));
        }
    }
    let lo = mu.floor_i() + 1;
    for m in lo..lo + 2 * (p + q) {
        ev.push(((T::int(m) - mu) / T::int(2 * (p + q)), Family::Diagonal(m)));
    }
    ev.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    for w in ev.windows(2) {
        if !(w[0].0 < w[1].0) {
            return None;
        }
    }
    let mut out = Vec::with_capacity(ev.len());
    for (lam, fam) in ev {
        let u = mu + T::int(2 * p) * lam;
        let v = T::int(2 * q) * lam;
        let (a, b, t) = match fam {
            Family::Horizontal(k) => {
                let i = u.floor_i();
                ((i, k), (i + 1, k), u - T::int(i))
            }
            Family::Vertical(m) => {
                let j = v.floor_i();
                ((m, j), (m, j + 1), v - T::int(j))
            }
            Family::Diagonal(m) => {
                let j = v.floor_i();
                ((m - j, j), (m - j - 1, j + 1), v - T::int(j))
            }
        };
        let t = t.to_f64();
        if t <= 0.0 || t >= 1.0 {
            return None;
        }
        let (la, lb) = (lattice_label(a.0, a.1), lattice_label(b.0, b.1));
        let edge = EdgeLabel::new(la, lb);
        let (fraction, ends) = if la == edge.lo { (t, [a, b]) } else { (1.0 - t, [b, a]) };
        out.push(TilingCrossing { edge, fraction, lambda: lam.to_f64(), ends });
    }
    Some(out)
}

/// Crossing word of type `t`, traced exactly at μ = 1/2.
pub fn crossing_sequence(t: GeodesicType) -> CrossingSequence {
    let (p, q) = t.tracing_pair();
    let tr = trace(p, q, Ratio::new(1i64, 2)).expect("tiling segment at mu = 1/2 meets a vertex");
    let seq = CrossingSequence { edges: tr.iter().map(|c| c.edge).collect() };
    debug_assert!(validate_sequence(&seq, t));
    seq
}

/// Crossings of the tiling segment for a given μ, in the tracing convention of
/// [`GeodesicType::tracing_pair`]. `None` if a tiling vertex is hit.
pub fn tiling_crossings(t: GeodesicType, mu: f64) -> Option<Vec<TilingCrossing>> {
    let (p, q) = t.tracing_pair();
    trace(p, q, mu)
}

pub fn validate_sequence(s: &CrossingSequence, t: GeodesicType) -> bool {
    let n = s.len();
    if n != t.crossings() {
        return false;
    }
    let counts = s.edge_counts();
    for e in EdgeLabel::ALL {
        if counts[e.index()] != counts[e.opposite().index()] {
            return false;
        }
    }
    let mut m = s.pair_multiplicities().to_vec();
    m.sort();
    let mut want = vec![2 * t.p as usize, 2 * t.q as usize, 2 * (t.p + t.q) as usize];
    want.sort();
    if m != want {
        return false;
    }
    for i in 0..n as isize {
        let (a, b, c, d) = (s.at(i), s.at(i + 1), s.at(i + 2), s.at(i + 3));
        if a.common_vertex(b).is_none() {
            return false;
        }
        // the word must leave every face it enters
        if FaceLabel::spanned(a, b) == FaceLabel::spanned(b, c) {
            return false;
        }
        if let Some(v) = a.common_vertex(b) {
            if c.contains(v) && d == a {
                return false;
            }
        }
    }
    true
}

/// Positions `k` where crossings `k-1, k, k+1` surround one vertex and,
/// walking away from `k` in both directions, the `i`-th segments share a face
/// for `i = 2, …, 2(p+q)-1`. For a geodesic word there are four such
/// positions, one per tetrahedron vertex, in two pairs `2(p+q)` apart.
pub fn all_link_nodes(s: &CrossingSequence) -> Vec<usize> {
    let n = s.len() as isize;
    if n <= 4 {
        return Vec::new();
    }
    let face = |i: isize| FaceLabel::spanned(s.at(i), s.at(i + 1));
    (0..n)
        .filter(|&k| {
            let around = match (s.at(k - 1).common_vertex(s.at(k)), s.at(k).common_vertex(s.at(k + 1))) {
                (Some(v), Some(w)) => v == w,
                _ => false,
            };
            around && (2..n / 2).all(|i| face(k + i - 1) == face(k - i))
        })
        .map(|k| k as usize)
        .collect()
}

/// The first link node and the second one reached from it, `2(p+q)`
/// crossings later.
pub fn link_nodes(s: &CrossingSequence) -> Result<[usize; 2], CombinatoricsError> {
    let all = all_link_nodes(s);
    let half = s.len() / 2;
    match all.first() {
        None => Err(CombinatoricsError::NoLinkNodes),
        Some(&k) if all.len() == 4 && all.contains(&(k + half)) => Ok([k, k + half]),
        Some(_) => Err(CombinatoricsError::LinkNodeCount(all.len())),
    }
}

/// Applies the vertex permutation `A_i -> A_{perm[i]}` to every label.
pub fn relabel(s: &CrossingSequence, perm: &[u8; 4]) -> CrossingSequence {
    CrossingSequence { edges: s.edges.iter().map(|e| e.map(perm)).collect() }
}

/// The canonical word and its images under the rotations of order three
/// fixing A4.
pub fn isometric_copies(s: &CrossingSequence) -> [CrossingSequence; 3] {
    let r = [1u8, 2, 0, 3];
    let r2 = [2u8, 0, 1, 3];
    [s.clone(), relabel(s, &r), relabel(s, &r2)]
}

/// True when `b` equals `a` up to a cyclic shift.
pub fn cyclically_equal(a: &CrossingSequence, b: &CrossingSequence) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|k| a.rotated(k) == *b)
}
