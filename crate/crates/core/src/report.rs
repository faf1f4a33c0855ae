//! Stable JSON documents for developments, paths, verdicts, thresholds,
//! bounds and counts.
//!
//! Floats are written with 17 significant digits so that output is both
//! byte-stable and exactly round-trippable.

use crate::combinatorics::GeodesicType;
use crate::counting::CountReport;
use crate::existence::{
    edge_sufficient_bound, hyperbolic_clearance_bound, hyperbolic_length_lower_bound, necessary_alpha_bound,
    sufficient_epsilon_bound, ExistenceVerdict, Outcome, ThresholdBracket,
};
use crate::geodesics::{Crossing, GeodesicPath};
use crate::geom::Point2;
use crate::labels::{FaceLabel, Vertex};
use crate::space::SpaceKind;
use crate::unfolding::Development;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io;

struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{v:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// Compact JSON with 17 significant digits per float.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    v.serialize(&mut ser).expect("report types serialize");
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> serde_json::Result<T> {
    serde_json::from_str(s)
}

fn coords(space: SpaceKind, p: Point2) -> Vec<f64> {
    match space {
        SpaceKind::Spherical => vec![p.x, p.y, p.z],
        _ => vec![p.x, p.y],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub label: FaceLabel,
    pub vertices: Vec<Vec<f64>>,
    pub labels: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDoc {
    #[serde(rename = "X1")]
    pub x1: Vec<f64>,
    #[serde(rename = "Y1")]
    pub y1: Vec<f64>,
    #[serde(rename = "X2")]
    pub x2: Vec<f64>,
    #[serde(rename = "Y2")]
    pub y2: Vec<f64>,
    #[serde(rename = "X1p")]
    pub x1p: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DevelopmentDoc {
    pub space: SpaceKind,
    pub alpha: Option<f64>,
    #[serde(rename = "type")]
    pub gtype: Option<GeodesicType>,
    pub faces: Vec<FaceDoc>,
    pub symmetry_points: SymmetryDoc,
    /// Total angle at each boundary vertex, left side then right side.
    pub angles: Vec<f64>,
}

impl From<&Development> for DevelopmentDoc {
    fn from(d: &Development) -> Self {
        let c = |p| coords(d.space, p);
        let s = &d.symmetry_points;
        DevelopmentDoc {
            space: d.space,
            alpha: d.alpha,
            gtype: d.gtype,
            faces: d
                .faces
                .iter()
                .map(|f| FaceDoc { label: f.label, vertices: f.vertices.iter().map(|&p| c(p)).collect(), labels: f.labels.to_vec() })
                .collect(),
            symmetry_points: SymmetryDoc { x1: c(s.x1), y1: c(s.y1), x2: c(s.x2), y2: c(s.y2), x1p: c(s.x1p) },
            angles: d.boundary.iter().map(|b| b.angle).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    #[serde(rename = "type")]
    pub gtype: Option<GeodesicType>,
    pub length: f64,
    pub clearance: f64,
    pub crossings: Vec<Crossing>,
    pub closed: bool,
    pub simple: bool,
}

impl From<&GeodesicPath> for PathDoc {
    fn from(p: &GeodesicPath) -> Self {
        PathDoc {
            gtype: p.gtype,
            length: p.length,
            clearance: p.clearance,
            crossings: p.crossings.clone(),
            closed: p.closed,
            simple: p.simple,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    /// `exists`, `not_exists` or `undetermined`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathDoc>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl From<&ExistenceVerdict> for VerdictDoc {
    fn from(v: &ExistenceVerdict) -> Self {
        let (outcome, reason, path) = match &v.outcome {
            Outcome::Exists { path } => ("exists", None, Some(PathDoc::from(path.as_ref()))),
            Outcome::NotExists { reason } => ("not_exists", Some(reason.clone()), None),
            Outcome::Undetermined { reason } => ("undetermined", Some(reason.clone()), None),
        };
        VerdictDoc { outcome: outcome.into(), reason, path, alpha1: v.alpha1, alpha2: v.alpha2, beta: v.beta }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDoc {
    #[serde(rename = "type")]
    pub gtype: GeodesicType,
    pub lo: f64,
    pub hi: f64,
    pub beta: f64,
    pub alpha2: Option<f64>,
}

impl ThresholdDoc {
    pub fn new(t: GeodesicType, b: &ThresholdBracket) -> Self {
        ThresholdDoc { gtype: t, lo: b.lo, hi: b.hi, beta: b.beta, alpha2: necessary_alpha_bound(t).ok() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsDoc {
    #[serde(rename = "type")]
    pub gtype: GeodesicType,
    /// `π/3 + ε*`, absent when the bound is degenerate.
    pub alpha1: Option<f64>,
    pub alpha1_status: String,
    pub alpha2: Option<f64>,
    pub alpha2_status: String,
    /// Largest spherical edge length for which the geodesic is known to exist.
    pub a_star: f64,
    /// Hyperbolic bounds, present when a hyperbolic α was supplied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic_alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clearance_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<f64>,
}

impl BoundsDoc {
    pub fn new(t: GeodesicType, hyperbolic_alpha: Option<f64>) -> Self {
        let (alpha1, alpha1_status) = match sufficient_epsilon_bound(t) {
            Ok(e) => (Some(PI / 3.0 + e), "ok".to_string()),
            Err(e) => (None, e.to_string()),
        };
        let (alpha2, alpha2_status) = match necessary_alpha_bound(t) {
            Ok(a) => (Some(a), "ok".to_string()),
            Err(e) => (None, e.to_string()),
        };
        BoundsDoc {
            gtype: t,
            alpha1,
            alpha1_status,
            alpha2,
            alpha2_status,
            a_star: edge_sufficient_bound(t),
            hyperbolic_alpha,
            clearance_bound: hyperbolic_alpha.map(hyperbolic_clearance_bound),
            length_bound: hyperbolic_alpha.map(|a| hyperbolic_length_lower_bound(a, t)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthRow {
    #[serde(rename = "type")]
    pub gtype: GeodesicType,
    pub length: f64,
    pub clearance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountDoc {
    #[serde(rename = "L")]
    pub budget: f64,
    pub alpha: f64,
    pub exact: u64,
    pub bound: u64,
    pub c_printed: f64,
    pub c_derived: f64,
    pub lengths: Vec<LengthRow>,
}

impl From<&CountReport> for CountDoc {
    fn from(r: &CountReport) -> Self {
        CountDoc {
            budget: r.budget,
            alpha: r.alpha,
            exact: r.exact,
            bound: r.bound,
            c_printed: r.c_printed,
            c_derived: r.c_derived,
            lengths: r.table.iter().map(|x| LengthRow { gtype: x.t, length: x.length, clearance: x.clearance }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{euclid_geodesic, midpoint_geodesic};
    use crate::tetra::TetrahedronSpec;
    use crate::unfolding::development_for_type;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(v: &T) {
        let s = to_json(v);
        let back: T = from_json(&s).unwrap();
        assert_eq!(&back, v);
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(to_json(&0.1f64), "1.0000000000000001e-1");
        assert_eq!(to_json(&vec![1.0f64, -PI]), "[1.0000000000000000e0,-3.1415926535897931e0]");
    }

    #[test]
    fn documents_round_trip() {
        let t = GeodesicType::new(1, 2).unwrap();
        let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, 0.7).unwrap();
        let dev = development_for_type(&spec, t).unwrap();
        round_trip(&DevelopmentDoc::from(&dev));
        let s = TetrahedronSpec::new(SpaceKind::Spherical, 1.1).unwrap();
        round_trip(&DevelopmentDoc::from(&development_for_type(&s, t).unwrap()));
        round_trip(&PathDoc::from(&midpoint_geodesic(&spec, t).unwrap()));
        round_trip(&PathDoc::from(&euclid_geodesic(t, 0.5).unwrap()));
        round_trip(&BoundsDoc::new(t, Some(0.7)));
        let v = crate::existence::exists_geodesic(&s, t).unwrap();
        round_trip(&VerdictDoc::from(&v));
        round_trip(&CountDoc::from(&crate::counting::count_exact(20.0, 0.5).unwrap()));
        round_trip(&ThresholdDoc { gtype: t, lo: 1.25, hi: 1.26, beta: 1.255, alpha2: Some(1.34) });
    }

    #[test]
    fn schema_fields() {
        let t = GeodesicType::new(0, 1).unwrap();
        let spec = TetrahedronSpec::new(SpaceKind::Hyperbolic, 0.7).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&DevelopmentDoc::from(&development_for_type(&spec, t).unwrap()))).unwrap();
        for k in ["space", "alpha", "type", "faces", "symmetry_points", "angles"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["type"], serde_json::json!([0, 1]));
        assert!(v["symmetry_points"].get("X1p").is_some());
        let p: serde_json::Value = serde_json::from_str(&to_json(&PathDoc::from(&midpoint_geodesic(&spec, t).unwrap()))).unwrap();
        for k in ["type", "length", "clearance", "crossings", "closed", "simple"] {
            assert!(p.get(k).is_some(), "{k}");
        }
        let c: serde_json::Value = serde_json::from_str(&to_json(&CountDoc::from(&crate::counting::count_exact(10.0, 0.5).unwrap()))).unwrap();
        for k in ["L", "alpha", "exact", "bound", "c_printed", "c_derived"] {
            assert!(c.get(k).is_some(), "{k}");
        }
    }
}
