//! Triangles given by side lengths, their canonical planar embedding, and the
//! perimeter and area pieces cut by a line through an interior point.
//!
//! Labels follow the usual convention: `a = BC`, `b = CA`, `c = AB`. After
//! [`make_triangle`] the sides are sorted so that `a ≥ b ≥ c`.

use serde::Serialize;

use crate::boundary::{Chord, ConvexBoundary};
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Slack (relative to the perimeter) at or below which the triangle
/// inequality counts as violated.
pub const DEGENERATE_SLACK: f64 = 1e-12;
/// Slack (relative to the perimeter) below which a triangle is flagged as
/// near-degenerate.
pub const NEAR_DEGENERATE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        };
        f.write_str(s)
    }
}

/// A triangle up to congruence, sides sorted `a ≥ b ≥ c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Semiperimeter.
    pub s: f64,
    /// Position of `a`, `b`, `c` in the caller's original argument list.
    pub input_order: [usize; 3],
    pub near_degenerate: bool,
}

impl Triangle {
    pub fn perimeter(&self) -> f64 {
        2.0 * self.s
    }

    /// Smallest triangle-inequality slack, `b + c − a` for sorted sides.
    pub fn slack(&self) -> f64 {
        self.b + self.c - self.a
    }

    /// Same shape with every side multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Triangle> {
        make_triangle(self.a * factor, self.b * factor, self.c * factor)
    }
}

pub fn make_triangle(a: f64, b: f64, c: f64) -> Result<Triangle> {
    let sides = [a, b, c];
    if sides.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(Error::NonPositiveSide(a, b, c));
    }
    let mut order = [0usize, 1, 2];
    // stable, so equal sides keep their input order
    order.sort_by(|&i, &j| sides[j].total_cmp(&sides[i]));
    let [a, b, c] = order.map(|i| sides[i]);
    let perimeter = a + b + c;
    let slack = b + c - a;
    if slack <= DEGENERATE_SLACK * perimeter {
        return Err(Error::TriangleInequalityViolated {
            slack,
            excess: a - b - c,
        });
    }
    Ok(Triangle {
        a,
        b,
        c,
        s: perimeter / 2.0,
        input_order: order,
        near_degenerate: slack / perimeter < NEAR_DEGENERATE_SLACK,
    })
}

/// A triangle placed in the plane with `B = (0,0)`, `C = (a,0)` and `A` above
/// the x-axis. The boundary parameter starts at `B` and runs `B → C → A → B`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedTriangle {
    pub triangle: Triangle,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    boundary: ConvexBoundary,
}

impl EmbeddedTriangle {
    pub fn boundary(&self) -> &ConvexBoundary {
        &self.boundary
    }

    pub fn perimeter(&self) -> f64 {
        self.boundary.perimeter()
    }

    pub fn area(&self) -> f64 {
        self.boundary.area()
    }

    pub fn vertex(&self, v: Vertex) -> Point {
        match v {
            Vertex::A => self.a,
            Vertex::B => self.b,
            Vertex::C => self.c,
        }
    }

    /// Boundary parameter of a vertex.
    pub fn vertex_arc(&self, v: Vertex) -> f64 {
        match v {
            Vertex::B => 0.0,
            Vertex::C => self.boundary.vertex_arc(1),
            Vertex::A => self.boundary.vertex_arc(2),
        }
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        self.boundary.contains_strictly(p)
    }

    /// Frame at vertex `v`: the vertex, unit vectors `u` and `v` along its two
    /// sides, and the lengths of those sides. For `A` the frame is `(AB, AC)`,
    /// for `B` it is `(BC, BA)` and for `C` it is `(CA, CB)`.
    pub fn vertex_frame(&self, v: Vertex) -> VertexFrame {
        let t = &self.triangle;
        let (origin, far_u, far_v, len_u, len_v) = match v {
            Vertex::A => (self.a, self.b, self.c, t.c, t.b),
            Vertex::B => (self.b, self.c, self.a, t.a, t.c),
            Vertex::C => (self.c, self.a, self.b, t.b, t.a),
        };
        VertexFrame {
            origin,
            u: (far_u - origin) / (far_u - origin).norm(),
            v: (far_v - origin) / (far_v - origin).norm(),
            len_u,
            len_v,
        }
    }
}

/// Oblique frame at a triangle vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexFrame {
    pub origin: Point,
    pub u: Point,
    pub v: Point,
    pub len_u: f64,
    pub len_v: f64,
}

impl VertexFrame {
    pub fn at(&self, x: f64, y: f64) -> Point {
        self.origin + self.u * x + self.v * y
    }
}

pub fn embed(t: &Triangle) -> EmbeddedTriangle {
    let ax = (t.a * t.a + t.c * t.c - t.b * t.b) / (2.0 * t.a);
    let ay = (t.c * t.c - ax * ax).max(0.0).sqrt();
    let a = Point::new(ax, ay);
    let b = Point::new(0.0, 0.0);
    let c = Point::new(t.a, 0.0);
    EmbeddedTriangle {
        triangle: *t,
        a,
        b,
        c,
        boundary: ConvexBoundary::from_ccw(vec![b, c, a]),
    }
}

pub fn centroid(e: &EmbeddedTriangle) -> Point {
    (e.a + e.b + e.c) / 3.0
}

/// Coordinates of a point in the oblique frame of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObliqueCoords {
    pub x: f64,
    pub y: f64,
}

pub fn oblique_coords(e: &EmbeddedTriangle, vertex: Vertex, p: Point) -> Result<ObliqueCoords> {
    e.boundary.require_interior(p)?;
    let f = e.vertex_frame(vertex);
    let det = f.u.cross(f.v);
    if det.abs() < 1e-14 {
        return Err(Error::SingularFrame);
    }
    let d = p - f.origin;
    let x = d.cross(f.v) / det;
    let y = f.u.cross(d) / det;
    if x <= 0.0 || y <= 0.0 {
        return Err(Error::NotInterior(p.x, p.y));
    }
    Ok(ObliqueCoords { x, y })
}

/// Chord through `p` with inclination `theta` and the two perimeter pieces,
/// smaller first. The pieces sum to the perimeter.
pub fn cut_at_angle(e: &EmbeddedTriangle, p: Point, theta: f64) -> Result<(Chord, f64, f64)> {
    e.boundary.cut(p, theta)
}

/// Areas of the two regions cut by the line through `p` with inclination
/// `theta`, smaller first.
pub fn area_cut_at_angle(e: &EmbeddedTriangle, p: Point, theta: f64) -> Result<(f64, f64)> {
    let (chord, _, _) = e.boundary.cut(p, theta)?;
    Ok(e.boundary.area_split(&chord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn equilateral_triangle() {
        let t = make_triangle(1.0, 1.0, 1.0).unwrap();
        assert_eq!((t.a, t.b, t.c, t.s), (1.0, 1.0, 1.0, 1.5));
        assert!(!t.near_degenerate);
    }

    #[test]
    fn sides_are_sorted() {
        let t = make_triangle(1.0, 8.0, 8.0).unwrap();
        assert_eq!((t.a, t.b, t.c, t.s), (8.0, 8.0, 1.0, 8.5));
        assert_eq!(t.input_order, [1, 2, 0]);
    }

    #[test]
    fn degenerate_and_invalid_sides_rejected() {
        match make_triangle(5.0, 4.0, 1.0) {
            Err(Error::TriangleInequalityViolated { slack, .. }) => assert_eq!(slack, 0.0),
            other => panic!("expected violation, got {other:?}"),
        }
        assert!(matches!(make_triangle(0.0, 1.0, 1.0), Err(Error::NonPositiveSide(..))));
        assert!(matches!(make_triangle(-1.0, 1.0, 1.0), Err(Error::NonPositiveSide(..))));
        assert!(make_triangle(f64::NAN, 1.0, 1.0).is_err());
        assert!(make_triangle(10.0, 4.0, 1.0).is_err());
    }

    #[test]
    fn near_degenerate_is_flagged_not_rejected() {
        let t = make_triangle(5.0, 4.0, 1.0 + 1e-8).unwrap();
        assert!(t.near_degenerate);
        let t = make_triangle(5.0, 4.0, 1.001).unwrap();
        assert!(!t.near_degenerate);
    }

    #[test]
    fn embedding_coordinates() {
        let e = embed(&make_triangle(1.0, 1.0, 1.0).unwrap());
        assert!((e.a.x - 0.5).abs() < 1e-15);
        assert!((e.a.y - 3f64.sqrt() / 2.0).abs() < 1e-15);

        let e = embed(&make_triangle(5.0, 4.0, 3.0).unwrap());
        assert!((e.a.x - 1.8).abs() < 1e-14 && (e.a.y - 2.4).abs() < 1e-14);
        // distance re-check
        assert!(rel(e.a.distance(e.b), 3.0) < 1e-12);
        assert!(rel(e.a.distance(e.c), 4.0) < 1e-12);

        let e = embed(&make_triangle(8.0, 8.0, 1.0).unwrap());
        assert_eq!(e.a.x, 1.0 / 16.0);
        assert!(rel(e.a.y, (1.0f64 - 1.0 / 256.0).sqrt()) < 1e-15);
        assert!(rel(e.a.distance(e.c), 8.0) < 1e-12);
        assert!(rel(e.a.distance(e.b), 1.0) < 1e-12);
    }

    #[test]
    fn embedding_is_counterclockwise_and_starts_at_b() {
        let e = embed(&make_triangle(7.0, 5.0, 3.0).unwrap());
        assert!((e.c - e.b).cross(e.a - e.b) > 0.0);
        assert_eq!(e.vertex_arc(Vertex::B), 0.0);
        assert_eq!(e.vertex_arc(Vertex::C), 7.0);
        assert!(rel(e.vertex_arc(Vertex::A), 12.0) < 1e-12);
        assert!(rel(e.perimeter(), 15.0) < 1e-12);
    }

    #[test]
    fn centroids() {
        let e = embed(&make_triangle(1.0, 1.0, 1.0).unwrap());
        let g = centroid(&e);
        assert!((g.x - 0.5).abs() < 1e-15 && (g.y - 3f64.sqrt() / 6.0).abs() < 1e-15);
        let e = embed(&make_triangle(5.0, 4.0, 3.0).unwrap());
        let g = centroid(&e);
        assert!((g.x - 6.8 / 3.0).abs() < 1e-14 && (g.y - 0.8).abs() < 1e-14);
        assert!(e.contains_strictly(g));
        let e = embed(&make_triangle(5.0, 4.0, 1.0 + 1e-9).unwrap());
        assert!(e.contains_strictly(centroid(&e)));
    }

    #[test]
    fn oblique_coords_at_centroid_are_thirds() {
        let e = embed(&make_triangle(1.0, 1.0, 1.0).unwrap());
        let o = oblique_coords(&e, Vertex::A, centroid(&e)).unwrap();
        assert!((o.x - 1.0 / 3.0).abs() < 1e-14 && (o.y - 1.0 / 3.0).abs() < 1e-14);

        let e = embed(&make_triangle(8.0, 8.0, 1.0).unwrap());
        let g = centroid(&e);
        let o = oblique_coords(&e, Vertex::A, g).unwrap();
        assert!(rel(o.x, 1.0 / 3.0) < 1e-12 && rel(o.y, 8.0 / 3.0) < 1e-12);
        let o = oblique_coords(&e, Vertex::B, g).unwrap();
        assert!(rel(o.x, 8.0 / 3.0) < 1e-12 && rel(o.y, 1.0 / 3.0) < 1e-12);
        let o = oblique_coords(&e, Vertex::C, g).unwrap();
        assert!(rel(o.x, 8.0 / 3.0) < 1e-12 && rel(o.y, 8.0 / 3.0) < 1e-12);
    }

    #[test]
    fn oblique_coords_round_trip_and_errors() {
        let e = embed(&make_triangle(5.0, 4.0, 3.0).unwrap());
        for v in Vertex::ALL {
            let f = e.vertex_frame(v);
            let p = f.at(0.2, 0.3);
            let o = oblique_coords(&e, v, p).unwrap();
            assert!((o.x - 0.2).abs() < 1e-13 && (o.y - 0.3).abs() < 1e-13);
        }
        assert!(matches!(
            oblique_coords(&e, Vertex::A, Point::new(-1.0, 0.5)),
            Err(Error::NotInterior(..))
        ));
        assert!(oblique_coords(&e, Vertex::A, e.b).is_err());
    }

    #[test]
    fn equilateral_parallel_cut_is_four_ninths() {
        let e = embed(&make_triangle(1.0, 1.0, 1.0).unwrap());
        let g = centroid(&e);
        let (chord, lo, hi) = cut_at_angle(&e, g, 0.0).unwrap();
        assert!((lo - 4.0 / 3.0).abs() < 1e-14);
        assert!((lo + hi - 3.0).abs() < 1e-14);
        assert_eq!(chord.theta, 0.0);
        let (amin, amax) = area_cut_at_angle(&e, g, 0.0).unwrap();
        assert!((amin / e.area() - 4.0 / 9.0).abs() < 1e-14);
        assert!(rel(amin + amax, e.area()) < 1e-12);
    }

    #[test]
    fn equilateral_median_bisects() {
        let e = embed(&make_triangle(1.0, 1.0, 1.0).unwrap());
        let g = centroid(&e);
        let (chord, lo, hi) = cut_at_angle(&e, g, PI / 2.0).unwrap();
        assert!((lo - 1.5).abs() < 1e-14 && (hi - 1.5).abs() < 1e-14);
        // passes through A at its arc parameter
        assert!((chord.t2 - 2.0).abs() < 1e-14);
        let (a1, a2) = area_cut_at_angle(&e, g, PI / 2.0).unwrap();
        assert!(rel(a1, a2) < 1e-12);
    }

    #[test]
    fn median_from_b_in_8_8_1() {
        let e = embed(&make_triangle(8.0, 8.0, 1.0).unwrap());
        let g = centroid(&e);
        let theta = (e.b - g).line_angle();
        let (chord, lo, _) = cut_at_angle(&e, g, theta).unwrap();
        assert!((lo - 5.0).abs() < 1e-12);
        assert!(chord.t1.abs() < 1e-12);
        // dense-sweep cross-check: every other chord with an endpoint near B is worse
        let mut best = f64::INFINITY;
        for k in -1000..=1000 {
            let (_, lo, _) = cut_at_angle(&e, g, theta + k as f64 * 1e-6).unwrap();
            best = best.min(lo);
        }
        assert!((best - 5.0).abs() < 1e-12);
        let (a1, a2) = area_cut_at_angle(&e, g, theta).unwrap();
        assert!(rel(a1, a2) < 1e-12);
    }

    #[test]
    fn classical_area_fraction_for_3_4_5() {
        let e = embed(&make_triangle(5.0, 4.0, 3.0).unwrap());
        let g = centroid(&e);
        let (amin, _) = area_cut_at_angle(&e, g, 0.0).unwrap();
        assert!((amin / e.area() - 4.0 / 9.0).abs() < 1e-14);
        // the clipped piece is the triangle above the parallel at height 2.4/3
        let top = 0.5 * 5.0 * (2.0 / 3.0) * 2.4 * (2.0 / 3.0);
        assert!((amin - top).abs() < 1e-13);
    }

    #[test]
    fn cut_rejects_exterior_points() {
        let e = embed(&make_triangle(5.0, 4.0, 3.0).unwrap());
        assert!(matches!(cut_at_angle(&e, Point::new(10.0, 0.0), 0.0), Err(Error::NotInterior(..))));
        assert!(area_cut_at_angle(&e, e.a, 0.3).is_err());
    }
}
