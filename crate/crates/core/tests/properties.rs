use std::f64::consts::PI;

use proptest::prelude::*;

use winternitz::closed_form::{min_cut_at_point, min_cut_centroid, FOUR_NINTHS};
use winternitz::oracle::sweep_min_perimeter;
use winternitz::shape_scan::random_triangle;
use winternitz::triangle_core::{
    centroid, embed, make_triangle, oblique_coords, EmbeddedTriangle, Triangle, Vertex,
};
use winternitz::wline::{lagrange_oracle, wline_extreme};
use winternitz::Point;

/// Sides from two shape parameters so every case is a valid triangle.
fn triangle() -> impl Strategy<Value = Triangle> {
    (0.05f64..1.0, 0.05f64..1.0, 0.1f64..10.0).prop_map(|(u, v, scale)| {
        let b = 0.5 + u;
        let c = 0.5 + v;
        // a strictly inside (|b - c|, b + c)
        let a = (b - c).abs() + (0.05 + 0.9 * u * v) * (b + c - (b - c).abs());
        make_triangle(a * scale, b * scale, c * scale).unwrap()
    })
}

/// Barycentric weights bounded away from the boundary.
fn weights() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.05f64..1.0, 0.05f64..1.0, 0.05f64..1.0).prop_map(|(x, y, z)| {
        let s = x + y + z;
        (x / s, y / s, z / s)
    })
}

fn interior(e: &EmbeddedTriangle, (wa, wb, wc): (f64, f64, f64)) -> Point {
    e.a * wa + e.b * wb + e.c * wc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pieces_sum_to_perimeter(t in triangle(), w in weights(), theta in 0.0f64..PI) {
        let e = embed(&t);
        let p = interior(&e, w);
        let (chord, lo, hi) = e.boundary().cut(p, theta).unwrap();
        prop_assert!(lo <= hi);
        prop_assert!((lo + hi - e.perimeter()).abs() <= 1e-12 * e.perimeter());
        let (inner, outer) = e.boundary().pieces(&chord);
        prop_assert!((inner + outer - e.perimeter()).abs() <= 1e-12 * e.perimeter());
    }

    #[test]
    fn opposite_directions_give_the_same_line(t in triangle(), w in weights(), theta in 0.0f64..PI) {
        let e = embed(&t);
        let p = interior(&e, w);
        let (_, lo1, _) = e.boundary().cut(p, theta).unwrap();
        let (_, lo2, _) = e.boundary().cut(p, theta + PI).unwrap();
        prop_assert!((lo1 - lo2).abs() <= 1e-12 * e.perimeter());
    }

    #[test]
    fn area_pieces_sum_to_area(t in triangle(), w in weights(), theta in 0.0f64..PI) {
        let e = embed(&t);
        let p = interior(&e, w);
        let (chord, _, _) = e.boundary().cut(p, theta).unwrap();
        let (small, large) = e.boundary().area_split(&chord);
        prop_assert!(small <= large);
        prop_assert!((small + large - e.area()).abs() <= 1e-11 * e.area());
    }

    #[test]
    fn oblique_coordinates_round_trip(t in triangle(), w in weights()) {
        let e = embed(&t);
        let p = interior(&e, w);
        for v in Vertex::ALL {
            let o = oblique_coords(&e, v, p).unwrap();
            prop_assert!(o.x > 0.0 && o.y > 0.0);
            let q = e.vertex_frame(v).at(o.x, o.y);
            prop_assert!(q.distance(p) <= 1e-12 * e.perimeter());
        }
    }

    #[test]
    fn fraction_is_scale_invariant(t in triangle(), k in 0.01f64..100.0) {
        let m1 = min_cut_centroid(&t).m;
        let m2 = min_cut_centroid(&t.scaled(k).unwrap()).m;
        prop_assert!((m1 - m2).abs() <= 1e-12);
    }

    #[test]
    fn relabeling_sides_changes_nothing(t in triangle(), perm in 0usize..6) {
        let s = [t.a, t.b, t.c];
        let order = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm];
        let u = make_triangle(s[order[0]], s[order[1]], s[order[2]]).unwrap();
        prop_assert_eq!((u.a, u.b, u.c), (t.a, t.b, t.c));
        prop_assert_eq!(min_cut_centroid(&u).m, min_cut_centroid(&t).m);
    }

    #[test]
    fn wline_matches_lagrange_oracle(x in 1e-3f64..1e3, y in 1e-3f64..1e3) {
        let w = wline_extreme(x, y).unwrap();
        let (s, t) = lagrange_oracle(x, y, 10_000);
        prop_assert!((s - w.s).abs() <= 1e-8 * w.s);
        prop_assert!((t - w.t).abs() <= 1e-8 * w.t);
        prop_assert!((w.s + w.t - w.cut).abs() <= 1e-12 * w.cut);
    }

    #[test]
    fn centroid_closed_form_matches_sweep(t in triangle()) {
        let e = embed(&t);
        let closed = min_cut_centroid(&t).m;
        let oracle = sweep_min_perimeter(&e, centroid(&e), 3600).unwrap().min_fraction;
        prop_assert!((closed - oracle).abs() <= 1e-9, "closed {} oracle {}", closed, oracle);
        prop_assert!(closed <= FOUR_NINTHS + 1e-12);
    }

    #[test]
    fn vertex_minimum_matches_sweep_at_any_point(t in triangle(), w in weights()) {
        let e = embed(&t);
        let p = interior(&e, w);
        let closed = min_cut_at_point(&e, p).unwrap().m;
        let oracle = sweep_min_perimeter(&e, p, 3600).unwrap().min_fraction;
        prop_assert!((closed - oracle).abs() <= 1e-9, "closed {} oracle {}", closed, oracle);
    }
}

#[test]
fn random_search_never_beats_four_ninths() {
    let best = (0..20_000)
        .map(|i| min_cut_centroid(&random_triangle(i)).m)
        .fold(0.0f64, f64::max);
    assert!(best <= FOUR_NINTHS + 1e-12);
    assert!(FOUR_NINTHS - best < 5e-3, "best {best}");
}
