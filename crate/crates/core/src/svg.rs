//! SVG drawings of developments and the geodesic inside them.
//!
//! Klein disks are scaled to a circle of radius 1000, spherical charts are
//! shown by orthographic projection along the axis through the start edge,
//! and Euclidean developments are drawn in tiling units times 100.

use crate::geodesics::GeodesicPath;
use crate::geom::{point_along, Point2};
use crate::space::SpaceKind;
use crate::unfolding::Development;
use std::fmt::Write;

const SAMPLES: usize = 16;

fn to_screen(space: SpaceKind, p: Point2) -> (f64, f64) {
    let s = if space == SpaceKind::Euclidean { 100.0 } else { 1000.0 };
    (s * p.x, -s * p.y)
}

/// Screen polyline of the chart geodesic from `a` to `b`.
fn arc(space: SpaceKind, a: Point2, b: Point2) -> Vec<(f64, f64)> {
    let k = if space == SpaceKind::Spherical { SAMPLES } else { 1 };
    (0..=k).map(|i| to_screen(space, point_along(space, a, b, i as f64 / k as f64))).collect()
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect::<Vec<_>>().join(" ")
}

pub fn development_svg(dev: &Development, path: Option<&GeodesicPath>) -> String {
    let sp = dev.space;
    let mut faces = Vec::new();
    for f in &dev.faces {
        let v = f.vertices;
        let mut ring = arc(sp, v[0], v[1]);
        ring.extend(arc(sp, v[1], v[2]).into_iter().skip(1));
        ring.extend(arc(sp, v[2], v[0]).into_iter().skip(1));
        faces.push(ring);
    }
    let mut boundary = Vec::new();
    let m = dev.boundary.len();
    for i in 0..m {
        let (a, b) = (dev.boundary[i].point, dev.boundary[(i + 1) % m].point);
        boundary.extend(arc(sp, a, b).into_iter().skip(usize::from(i > 0)));
    }
    let mut geodesic = Vec::new();
    if let Some(p) = path {
        let n = p.crossings.len();
        let at = |i: usize| {
            let (a, b) = dev.edge_points(i);
            point_along(sp, a, b, p.crossings[i % n].fraction)
        };
        for i in 0..n {
            geodesic.extend(arc(sp, at(i), at(i + 1)).into_iter().skip(usize::from(i > 0)));
        }
    }
    let s = &dev.symmetry_points;
    let marks: Vec<(&str, (f64, f64))> = [("X1", s.x1), ("Y1", s.y1), ("X2", s.x2), ("Y2", s.y2), ("X1'", s.x1p)]
        .into_iter()
        .map(|(n, p)| (n, to_screen(sp, p)))
        .collect();

    let all = faces.iter().flatten().chain(geodesic.iter());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if sp == SpaceKind::Hyperbolic {
        (x0, y0, x1, y1) = (x0.min(-1000.0), y0.min(-1000.0), x1.max(1000.0), y1.max(1000.0));
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = 0.002 * vw.max(vh);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.3} {vy:.3} {vw:.3} {vh:.3}">"#
    );
    let _ = writeln!(
        out,
        "<style>.model{{fill:none;stroke:#bbb}} .face{{fill:#f4f4f4;stroke:#999}} .boundary{{fill:none;stroke:#000}} .geodesic{{fill:none;stroke:#c00}} .symmetry{{fill:#06c}}</style>"
    );
    let _ = writeln!(out, r#"<g stroke-width="{stroke:.3}">"#);
    if sp == SpaceKind::Hyperbolic {
        let _ = writeln!(out, r#"<circle class="model" cx="0" cy="0" r="1000"/>"#);
    }
    for f in &faces {
        let _ = writeln!(out, r#"<polygon class="face" points="{}"/>"#, points_attr(f));
    }
    let _ = writeln!(out, r#"<polygon class="boundary" points="{}"/>"#, points_attr(&boundary));
    if !geodesic.is_empty() {
        let _ = writeln!(out, r#"<polyline class="geodesic" points="{}"/>"#, points_attr(&geodesic));
    }
    for (name, (x, y)) in marks {
        let _ = writeln!(out, r#"<circle class="symmetry" cx="{x:.3}" cy="{y:.3}" r="{:.3}"><title>{name}</title></circle>"#, 3.0 * stroke);
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::GeodesicType;
    use crate::geodesics::midpoint_geodesic;
    use crate::tetra::TetrahedronSpec;
    use crate::unfolding::development_for_type;

    #[test]
    fn classes_present() {
        let t = GeodesicType::new(1, 1).unwrap();
        for (sp, a) in [(SpaceKind::Hyperbolic, 0.8), (SpaceKind::Spherical, 1.2)] {
            let spec = TetrahedronSpec::new(sp, a).unwrap();
            let d = development_for_type(&spec, t).unwrap();
            let p = midpoint_geodesic(&spec, t).unwrap();
            let s = development_svg(&d, Some(&p));
            for c in ["class=\"face\"", "class=\"boundary\"", "class=\"geodesic\"", "class=\"symmetry\""] {
                assert!(s.contains(c), "{c}");
            }
            assert!(!s.contains("NaN"));
            assert_eq!(s, development_svg(&d, Some(&p)));
        }
    }
}
