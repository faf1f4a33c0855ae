use proptest::prelude::*;
use std::f64::consts::PI;
use tetra_geodesics::combinatorics::{crossing_sequence, cyclically_equal, relabel, validate_sequence};
use tetra_geodesics::geom::{distance, reflect_across, side_of};
use tetra_geodesics::projection::gnomonic_project;
use tetra_geodesics::tetra::{angle_from_edge, edge_from_angle};
use tetra_geodesics::unfolding::{development_for_type, gluing_residuals, symmetry_check};
use tetra_geodesics::{GeodesicType, Point2, Segment2, Side, SpaceKind, TetrahedronSpec};

const SPACES: [SpaceKind; 3] = [SpaceKind::Euclidean, SpaceKind::Spherical, SpaceKind::Hyperbolic];

fn point(space: SpaceKind, u: f64, v: f64) -> Point2 {
    match space {
        SpaceKind::Euclidean => Point2::xy(4.0 * u - 2.0, 4.0 * v - 2.0),
        // upper hemisphere, away from the equator
        SpaceKind::Spherical => {
            let (th, ph) = (2.0 * PI * u, 1.2 * v);
            Point2::xyz(ph.sin() * th.cos(), ph.sin() * th.sin(), ph.cos())
        }
        SpaceKind::Hyperbolic => {
            let (th, r) = (2.0 * PI * u, 0.9 * v);
            Point2::xy(r * th.cos(), r * th.sin())
        }
    }
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..1.0f64
}

fn coprime_type(max_sum: u32) -> impl Strategy<Value = GeodesicType> {
    (0..max_sum, 1..=max_sum)
        .prop_filter_map("coprime, p < q, p + q bounded", move |(p, q)| {
            GeodesicType::new(p, q).ok().filter(|t| t.p + t.q <= max_sum)
        })
}

fn close(a: Point2, b: Point2) -> f64 {
    (a.x - b.x).abs().max((a.y - b.y).abs()).max((a.z - b.z).abs())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn reflection_is_an_involutive_isometry(k in 0..3usize, c in prop::array::uniform8(unit())) {
        let s = SPACES[k];
        let (a, b) = (point(s, c[0], c[1]), point(s, c[2], c[3]));
        prop_assume!(distance(s, a, b).unwrap() > 1e-3);
        let seg = Segment2::new(s, a, b).unwrap();
        let (p, q) = (point(s, c[4], c[5]), point(s, c[6], c[7]));
        let (rp, rq) = (reflect_across(s, &seg, p), reflect_across(s, &seg, q));
        prop_assert!(close(reflect_across(s, &seg, rp), p) < 1e-10);
        let (d0, d1) = (distance(s, p, q).unwrap(), distance(s, rp, rq).unwrap());
        prop_assert!((d0 - d1).abs() < 1e-10, "{d0} vs {d1}");
    }

    #[test]
    fn reflection_swaps_sides(k in 0..3usize, c in prop::array::uniform6(unit())) {
        let s = SPACES[k];
        let (a, b) = (point(s, c[0], c[1]), point(s, c[2], c[3]));
        prop_assume!(distance(s, a, b).unwrap() > 1e-3);
        let seg = Segment2::new(s, a, b).unwrap();
        let p = point(s, c[4], c[5]);
        let rp = reflect_across(s, &seg, p);
        let want = match side_of(s, &seg, p) {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::On => Side::On,
        };
        prop_assert_eq!(side_of(s, &seg, rp), want);
        prop_assert_eq!(side_of(s, &seg, a), Side::On);
    }

    #[test]
    fn gnomonic_keeps_great_circles_straight(c in prop::array::uniform8(unit())) {
        let s = SpaceKind::Spherical;
        let tp = point(s, c[0], 0.5 * c[1]);
        let (a, b) = (point(s, c[2], 0.5 * c[3]), point(s, c[4], 0.5 * c[5]));
        prop_assume!(distance(s, a, b).unwrap() > 1e-2);
        let seg = Segment2::new(s, a, b).unwrap();
        let on = |f: f64| tetra_geodesics::geom::point_at_fraction(s, seg.a, seg.b, f);
        let pts: Vec<Point2> = [0.0, c[6], 1.0].iter().map(|&f| gnomonic_project(on(f), tp)).collect::<Result<_, _>>().unwrap();
        let (u, w) = ((pts[1].x - pts[0].x, pts[1].y - pts[0].y), (pts[2].x - pts[0].x, pts[2].y - pts[0].y));
        let scale = (u.0.hypot(u.1) * w.0.hypot(w.1)).max(1.0);
        prop_assert!((u.0 * w.1 - u.1 * w.0).abs() / scale < 1e-9);
    }

    #[test]
    fn words_survive_relabelling_and_reversal(t in coprime_type(40), perm in Just([0u8, 1, 2, 3]).prop_shuffle(), k in 0..200usize) {
        let s = crossing_sequence(t);
        prop_assert!(validate_sequence(&s, t));
        let mut m = s.pair_multiplicities();
        m.sort();
        let image = relabel(&s, &perm);
        let mut mi = image.pair_multiplicities();
        mi.sort();
        prop_assert_eq!(m, mi);
        prop_assert!(cyclically_equal(&s, &s.rotated(k % s.len())));
        prop_assert_eq!(s.reversed().reversed(), s.clone());
        prop_assert_eq!(s.reversed().edge_counts(), s.edge_counts());
    }

    #[test]
    fn edge_formula_round_trips_and_is_monotone(u in 1e-4..(1.0 - 1e-4f64), du in 1e-4..0.1f64) {
        let sph = |x: f64| PI / 3.0 + x * PI / 3.0;
        let hyp = |x: f64| x * PI / 3.0;
        for (s, f, increasing) in [(SpaceKind::Spherical, &sph as &dyn Fn(f64) -> f64, true), (SpaceKind::Hyperbolic, &hyp, false)] {
            let a = f(u);
            let e = edge_from_angle(s, a).unwrap();
            prop_assert!((angle_from_edge(s, e).unwrap() - a).abs() < 1e-9);
            let v = (u + du).min(1.0 - 1e-5);
            prop_assume!(v > u);
            let e2 = edge_from_angle(s, f(v)).unwrap();
            prop_assert_eq!(e2 > e, increasing);
        }
    }

    #[test]
    fn face_area_matches_angle_excess(u in 1e-3..(1.0 - 1e-3f64)) {
        // L'Huilier from the three equal sides against Gauss-Bonnet
        let a = PI / 3.0 + u * PI / 3.0;
        let e = edge_from_angle(SpaceKind::Spherical, a).unwrap();
        let s = 1.5 * e;
        let area = 4.0 * ((s / 2.0).tan() * ((s - e) / 2.0).tan().powi(3)).sqrt().atan();
        prop_assert!((area - (3.0 * a - PI)).abs() < 1e-9, "{area} vs {}", 3.0 * a - PI);
        let a = u * PI / 3.0;
        let e = edge_from_angle(SpaceKind::Hyperbolic, a).unwrap();
        let s = 1.5 * e;
        let defect = 4.0 * ((s / 2.0).tanh() * ((s - e) / 2.0).tanh().powi(3)).sqrt().atan();
        prop_assert!((defect - (PI - 3.0 * a)).abs() < 1e-9, "{defect} vs {}", PI - 3.0 * a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn faithful_developments_glue(t in coprime_type(30), u in 0.02..0.98f64, hyperbolic in any::<bool>()) {
        let spec = if hyperbolic {
            TetrahedronSpec::new(SpaceKind::Hyperbolic, u * PI / 3.0).unwrap()
        } else {
            TetrahedronSpec::euclidean()
        };
        let d = development_for_type(&spec, t).unwrap();
        prop_assume!(d.faithful());
        let (g, i) = gluing_residuals(&d, &spec);
        prop_assert!(g.max(i) < 1e-8, "{t} at {u}: gluing {g:e}, isometry {i:e}");
        prop_assert!(symmetry_check(&d));
    }
}
