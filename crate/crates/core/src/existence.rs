//! Existence of simple closed geodesics on regular spherical tetrahedra:
//! closed-form bounds, the containment verdict and the threshold angle.

use crate::combinatorics::{crossing_sequence, tiling_crossings, GeodesicType};
use crate::geodesics::{midpoint_geodesic, solve_chord, symmetry_indices, GeodesicError, GeodesicPath, CONTAINMENT_MARGIN};
use crate::geom::{cross, dot, norm, scale, V3};
use crate::space::SpaceKind;
use crate::unfolding::build_development;
use crate::tetra::TetrahedronSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

const THIRD: f64 = PI / 3.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExistenceError {
    #[error("bound is vacuous for type {0}")]
    BoundVacuous(GeodesicType),
    #[error("bound is degenerate: {0}")]
    BoundDegenerate(String),
    #[error("containment does not change on (π/3, 2π/3) for type {0}")]
    NoThreshold(GeodesicType),
    #[error("expected a {0} tetrahedron")]
    WrongSpace(&'static str),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

/// Angle above which no simple closed geodesic of type `t` exists:
/// `2 arcsin √(N / (4N − π²))`, `N = p² + pq + q²`.
pub fn necessary_alpha_bound(t: GeodesicType) -> Result<f64, ExistenceError> {
    let n = t.norm() as f64;
    let den = 4.0 * n - PI * PI;
    if den <= 0.0 || n / den >= 1.0 {
        return Err(ExistenceError::BoundVacuous(t));
    }
    Ok(2.0 * (n / den).sqrt().asin())
}

/// Every constant entering the sufficient bound on ε, evaluated for one
/// choice of the upper summation index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonComponents {
    pub upper: usize,
    pub tan_sum: f64,
    pub c0_numerator: f64,
    pub c0_denominator: f64,
    pub c0: f64,
    pub c_l: Vec<f64>,
    pub c_alpha: Vec<f64>,
    /// `Σ_i (c_l(i) + Σ_{j≤i} c_α(j))`.
    pub weighted_sum: f64,
    pub vertex_term: f64,
    pub cap_term: f64,
}

impl EpsilonComponents {
    /// The bound itself, or the reason it says nothing.
    pub fn epsilon(&self) -> Result<f64, ExistenceError> {
        if !(self.c0_denominator > 0.0) {
            return Err(ExistenceError::BoundDegenerate(format!(
                "c0 denominator {:e} (tangent sum {:e})",
                self.c0_denominator, self.tan_sum
            )));
        }
        if !(self.c0 > 0.0) {
            return Err(ExistenceError::BoundDegenerate(format!("c0 = {:e}", self.c0)));
        }
        if let Some(i) = self.c_l.iter().position(|v| !v.is_finite()) {
            return Err(ExistenceError::BoundDegenerate(format!("c_l({i}) divides by zero")));
        }
        if !(self.vertex_term > 0.0) {
            return Err(ExistenceError::BoundDegenerate(format!("vertex term {:e}", self.vertex_term)));
        }
        Ok(self.vertex_term.min(self.cap_term))
    }
}

/// Hemisphere term `1 / (8 cos(π/12) (p+q)²)`.
pub fn hemisphere_cap_term(t: GeodesicType) -> f64 {
    let m = (t.p + t.q) as f64;
    1.0 / (8.0 * (PI / 12.0).cos() * m * m)
}

pub fn c_l(t: GeodesicType, i: usize) -> f64 {
    let m = (t.p + t.q) as f64;
    let d = m - i as f64 - 1.0;
    let num = (PI / 12.0).cos() * m * m * (4.0 + PI * PI * (2.0 * i as f64 + 1.0).powi(2));
    if d == 0.0 {
        f64::INFINITY
    } else {
        num / (d * d)
    }
}

pub fn c_alpha(t: GeodesicType, j: usize) -> f64 {
    let m = (t.p + t.q) as f64;
    let tn = (PI * j as f64 / (2.0 * m)).tan();
    4.0 * (8.0 * PI * m * m * (PI / 12.0).cos() * tn * tn + 1.0)
}

/// Components with the sums running over `i = 0..=upper`.
pub fn epsilon_components(t: GeodesicType, upper: usize) -> EpsilonComponents {
    let m = (t.p + t.q) as f64;
    let cos12 = (PI / 12.0).cos();
    let tan_sum: f64 = (0..=upper).map(|i| (PI * i as f64 / (2.0 * m)).tan().powi(2)).sum();
    let x = (m + 2.0) / (PI * cos12 * m * m);
    let num = 3.0 - x - 16.0 * tan_sum;
    let den = 1.0 - x / 2.0 - 8.0 * tan_sum;
    let c_l: Vec<f64> = (0..=upper).map(|i| c_l(t, i)).collect();
    let c_alpha: Vec<f64> = (0..=upper).map(|j| c_alpha(t, j)).collect();
    let mut weighted = 0.0;
    let mut partial = 0.0;
    for i in 0..=upper {
        partial += c_alpha[i];
        weighted += c_l[i] + partial;
    }
    let c0 = num / den;
    let vertex_term = 3f64.sqrt() / (4.0 * c0 * (t.norm() as f64).sqrt() * weighted);
    EpsilonComponents {
        upper,
        tan_sum,
        c0_numerator: num,
        c0_denominator: den,
        c0,
        c_l,
        c_alpha,
        weighted_sum: weighted,
        vertex_term,
        cap_term: hemisphere_cap_term(t),
    }
}

/// Upper summation index as printed, `⌊(p+q)/2⌋ + 2`.
pub fn printed_upper(t: GeodesicType) -> usize {
    ((t.p + t.q) / 2 + 2) as usize
}

/// Upper index `s = ⌊(p+q)/2⌋ + 1` of the intermediate estimate.
pub fn variant_upper(t: GeodesicType) -> usize {
    ((t.p + t.q) / 2 + 1) as usize
}

/// ε* such that a geodesic of type `t` exists for `α ∈ (π/3, π/3 + ε*)`.
pub fn sufficient_epsilon_bound(t: GeodesicType) -> Result<f64, ExistenceError> {
    if t.p >= t.q {
        return Err(ExistenceError::BoundVacuous(t));
    }
    epsilon_components(t, printed_upper(t)).epsilon()
}

/// Edge length below which a geodesic of type `t` exists:
/// `2 arcsin(π / (√N + √(N + 2π²)))`.
pub fn edge_sufficient_bound(t: GeodesicType) -> f64 {
    let n = t.norm() as f64;
    2.0 * (PI / (n.sqrt() + (n + 2.0 * PI * PI).sqrt())).asin()
}

/// Lower bound for the distance from the vertices to a simple closed
/// geodesic on a regular hyperbolic tetrahedron.
pub fn hyperbolic_clearance_bound(alpha: f64) -> f64 {
    let r = (2.0 * PI.powi(3)).sqrt();
    let s = (PI - 3.0 * alpha).max(0.0).powf(1.5);
    0.5 * ((r + s) / (r - s)).ln()
}

/// Lower bound `2(p+q) ln(2√3 (1 − 3α/π) + 1)` for the length.
pub fn hyperbolic_length_lower_bound(alpha: f64, t: GeodesicType) -> f64 {
    2.0 * (t.p + t.q) as f64 * hyperbolic_length_rate(alpha)
}

/// `ln(2√3 (1 − 3α/π) + 1)`, the length bound per crossing pair.
pub fn hyperbolic_length_rate(alpha: f64) -> f64 {
    (2.0 * 3f64.sqrt() * (1.0 - 3.0 * alpha / PI) + 1.0).ln()
}

// ---- verdicts ----

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Exists { path: Box<GeodesicPath> },
    NotExists { reason: String },
    Undetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub outcome: Outcome,
    /// `π/3 + ε*` when the sufficient bound is defined.
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub beta: Option<f64>,
}

impl ExistenceVerdict {
    pub fn exists(&self) -> bool {
        matches!(self.outcome, Outcome::Exists { .. })
    }
    pub fn not_exists(&self) -> bool {
        matches!(self.outcome, Outcome::NotExists { .. })
    }
}

pub fn exists_geodesic(spec: &TetrahedronSpec, t: GeodesicType) -> Result<ExistenceVerdict, ExistenceError> {
    if spec.space != SpaceKind::Spherical {
        return Err(ExistenceError::WrongSpace("spherical"));
    }
    let alpha2 = necessary_alpha_bound(t).ok();
    let alpha1 = sufficient_epsilon_bound(t).ok().map(|e| THIRD + e);
    let outcome = match midpoint_geodesic(spec, t) {
        Ok(path) => Outcome::Exists { path: Box::new(path) },
        Err(GeodesicError::TooLong { length }) => Outcome::NotExists {
            reason: format!("chord length {length} is not below 2π"),
        },
        Err(GeodesicError::NotContained { face, signed_distance, .. }) => {
            if signed_distance.abs() <= CONTAINMENT_MARGIN {
                Outcome::Undetermined {
                    reason: format!("chord touches the boundary at crossing {face} ({signed_distance:e})"),
                }
            } else if alpha2.is_some_and(|a2| spec.alpha > a2) {
                Outcome::NotExists { reason: format!("α above the necessary bound; chord leaves at crossing {face}") }
            } else {
                match abstract_shortest_curve_length(spec, t) {
                    Ok(l) if l >= 2.0 * PI - 1e-6 => Outcome::NotExists {
                        reason: format!("shortest curve through the symmetry points has length {l} ≥ 2π"),
                    },
                    Ok(l) => Outcome::Undetermined {
                        reason: format!("chord not contained but shortest curve length {l} < 2π"),
                    },
                    Err(e) => Outcome::Undetermined { reason: e.to_string() },
                }
            }
        }
        Err(e) if alpha2.is_some_and(|a2| spec.alpha > a2) => Outcome::NotExists {
            reason: format!("α above the necessary bound ({e})"),
        },
        Err(e) => Outcome::Undetermined { reason: e.to_string() },
    };
    Ok(ExistenceVerdict { outcome, alpha1, alpha2, beta: None })
}

/// Infimum of lengths of curves in the development through X1, Y1, X2, Y2
/// and X1'.
pub fn abstract_shortest_curve_length(spec: &TetrahedronSpec, t: GeodesicType) -> Result<f64, ExistenceError> {
    if spec.space != SpaceKind::Spherical {
        return Err(ExistenceError::WrongSpace("spherical"));
    }
    if let Ok(path) = midpoint_geodesic(spec, t) {
        return Ok(path.length);
    }
    Ok(taut_length(spec, t)?.0)
}

/// Taut polyline through the symmetry points, kept on the crossed edges of
/// the spherical development: Gauss–Seidel sweeps move every crossing to the
/// point of its edge minimising the distance to both neighbours, until a
/// sweep shortens the curve by less than 1e-12.
pub(crate) fn taut_length(spec: &TetrahedronSpec, t: GeodesicType) -> Result<(f64, Vec<f64>), ExistenceError> {
    let seq = crossing_sequence(t);
    let dev = build_development(spec, &seq).map_err(|e| ExistenceError::NumericalFailure(e.to_string()))?;
    let n = seq.len();
    let tc = tiling_crossings(t, 0.5).ok_or_else(|| ExistenceError::NumericalFailure("no start".into()))?;
    let ends: Vec<(V3, V3)> = (0..=n)
        .map(|i| {
            let (a, b) = dev.edge_points(i);
            (a.v(), b.v())
        })
        .collect();
    let mut fixed = vec![false; n + 1];
    for i in symmetry_indices(n) {
        fixed[i] = true;
    }
    fixed[n] = true;
    let mut frac: Vec<f64> = (0..=n).map(|i| if fixed[i] { 0.5 } else { tc[i % n].fraction }).collect();
    let point = |i: usize, f: f64| slerp(ends[i].0, ends[i].1, f);
    let mut pts: Vec<V3> = (0..=n).map(|i| point(i, frac[i])).collect();
    let total = |pts: &[V3]| pts.windows(2).map(|w| arc(w[0], w[1])).sum::<f64>();
    let mut len = total(&pts);
    for _ in 0..200_000 {
        for i in 1..n {
            if fixed[i] {
                continue;
            }
            let (a, b) = (pts[i - 1], pts[i + 1]);
            let cost = |x: V3| arc(a, x) + arc(x, b);
            let mut best = (frac[i], cost(pts[i]));
            for f in [0.0, 1.0] {
                let c = cost(point(i, f));
                if c < best.1 {
                    best = (f, c);
                }
            }
            if let Some(f) = portal_hit(ends[i].0, ends[i].1, a, b) {
                let c = cost(point(i, f));
                if c < best.1 {
                    best = (f, c);
                }
            }
            frac[i] = best.0;
            pts[i] = point(i, best.0);
        }
        let l = total(&pts);
        let done = len - l < 1e-12;
        len = l;
        if done {
            let pos = (0..=n).map(|i| frac[i] * spec.edge).collect();
            return Ok((len, pos));
        }
    }
    Err(ExistenceError::NumericalFailure("shortening did not settle".into()))
}

fn arc(a: V3, b: V3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

fn slerp(a: V3, b: V3, f: f64) -> V3 {
    let w = arc(a, b);
    if w == 0.0 {
        return a;
    }
    let (s0, s1) = (((1.0 - f) * w).sin() / w.sin(), (f * w).sin() / w.sin());
    [s0 * a[0] + s1 * b[0], s0 * a[1] + s1 * b[1], s0 * a[2] + s1 * b[2]]
}

/// Fraction along the arc `l r` where the great circle through `a`, `b`
/// crosses it, if it does.
fn portal_hit(l: V3, r: V3, a: V3, b: V3) -> Option<f64> {
    let d = cross(cross(a, b), cross(l, r));
    let nd = norm(d);
    if nd < 1e-15 {
        return None;
    }
    let w = arc(l, r);
    for x in [scale(1.0 / nd, d), scale(-1.0 / nd, d)] {
        let (al, ar) = (arc(l, x), arc(x, r));
        if (al + ar - w).abs() < 1e-12 {
            return Some(al / w);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBracket {
    /// Largest tested angle with a geodesic.
    pub lo: f64,
    /// Smallest tested angle without one.
    pub hi: f64,
    pub beta: f64,
}

fn contained(t: GeodesicType, alpha: f64) -> bool {
    TetrahedronSpec::new(SpaceKind::Spherical, alpha)
        .map(|s| midpoint_geodesic(&s, t).is_ok())
        .unwrap_or(false)
}

/// First angle at which the midpoint chord of type `t` reaches the boundary
/// of the development, bracketed to width `tol`.
pub fn threshold_beta(t: GeodesicType, tol: f64) -> Result<ThresholdBracket, ExistenceError> {
    let delta = 1e-9;
    let (mut lo, mut hi) = (THIRD + delta, 2.0 * THIRD - delta);
    let (plo, phi) = (contained(t, lo), contained(t, hi));
    if plo == phi {
        return Err(ExistenceError::NoThreshold(t));
    }
    if !plo {
        return Err(ExistenceError::NumericalFailure(format!("type {t} exists near 2π/3 but not near π/3")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if contained(t, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdBracket { lo, hi, beta: 0.5 * (lo + hi) })
}

/// Vertices of the development where the midpoint chord comes closest to
/// the boundary: (strip vertex id, left side, signed distance), for all
/// vertices within `slack` of the minimum, in strip order.
pub fn touching_witnesses(spec: &TetrahedronSpec, t: GeodesicType, slack: f64) -> Result<Vec<(usize, bool, f64)>, ExistenceError> {
    let cs = solve_chord(spec, t).map_err(|e| ExistenceError::NumericalFailure(e.to_string()))?;
    let m = cs.chain.vertex_margins(&cs.pos);
    let n = cs.chain.n();
    // the two ends of the cut edge are the same vertices as those of edge 0
    let [e0, e1] = cs.chain.vertex_ids[n];
    let min = m
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != e0 && *i != e1)
        .fold(f64::INFINITY, |a, (_, &b)| a.min(b));
    Ok(m.iter()
        .enumerate()
        .filter(|(i, v)| *i != e0 && *i != e1 && **v <= min + slack)
        .map(|(i, v)| (i, cs.chain.vertex_left[i], *v))
        .collect())
}
