//! Explicit formulas for the shortest perimeter piece cut by a line through
//! the centroid, and the three-vertex minimum rule for arbitrary interior
//! points.
//!
//! With sides sorted `a ≥ b ≥ c`, the centroid sits at oblique coordinates
//! `(c/3, b/3)` from `A`, `(a/3, c/3)` from `B` and `(b/3, a/3)` from `C`, so
//! the W-line values are `(b + c + 2√(bc))/3` and cyclic. The W-line at `A` is
//! a chord iff `b ≤ 4c`; past that the median from `B` takes over, giving
//! `c + b/2`. Likewise at `B` with `a ≤ 4c`. At `C` the W-line is always a
//! chord.

use serde::Serialize;

use crate::boundary::Chord;
use crate::error::Result;
use crate::geometry::Point;
use crate::triangle_core::{centroid, embed, EmbeddedTriangle, Triangle, Vertex};
use crate::wline::{vertex_min_cut, VertexCut, VertexCutKind};

/// The perimeter fraction the centroid can always guarantee on the
/// equilateral triangle, and the largest over all triangles.
pub const FOUR_NINTHS: f64 = 4.0 / 9.0;
/// Claimed infimum of the perimeter fraction over all triangles.
pub const CLAIMED_INFIMUM: f64 = 3.0 / 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `(p + q + 2√(pq))/3`: the W-line is a chord.
    Root,
    /// `c + p/2`: a median replaces the W-line.
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexCuts {
    pub w_a: f64,
    pub w_b: f64,
    pub w_c: f64,
    pub branch_a: Branch,
    pub branch_b: Branch,
    pub branch_c: Branch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    WLine,
    Median,
    BoundaryChord,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutResult {
    /// Shortest perimeter piece.
    pub w: f64,
    /// `w` as a fraction of the perimeter.
    pub m: f64,
    pub perimeter: f64,
    pub achieving_vertex: Vertex,
    pub chord: Chord,
    pub classification: Classification,
}

fn root_value(p: f64, q: f64) -> f64 {
    (p + q + 2.0 * (p * q).sqrt()) / 3.0
}

/// Value of the vertex cut at `A` for normalized sides `b ≥ c`.
pub(crate) fn w_a_branch(b: f64, c: f64) -> (f64, Branch) {
    if b <= 4.0 * c {
        (root_value(b, c), Branch::Root)
    } else {
        (c + b / 2.0, Branch::Median)
    }
}

pub fn vertex_cuts_centroid(t: &Triangle) -> VertexCuts {
    let (w_a, branch_a) = w_a_branch(t.b, t.c);
    let (w_b, branch_b) = w_a_branch(t.a, t.c);
    VertexCuts {
        w_a,
        w_b,
        w_c: root_value(t.a, t.b),
        branch_a,
        branch_b,
        branch_c: Branch::Root,
    }
}

pub fn min_cut_centroid(t: &Triangle) -> CutResult {
    let cuts = vertex_cuts_centroid(t);
    let e = embed(t);
    let g = centroid(&e);
    let perimeter = t.perimeter();
    let chord = vertex_min_cut(&e, Vertex::A, g)
        .map(|c| c.chord)
        // the centroid of a valid triangle is always interior
        .expect("centroid is interior");
    CutResult {
        w: cuts.w_a,
        m: cuts.w_a / perimeter,
        perimeter,
        achieving_vertex: Vertex::A,
        chord,
        classification: match cuts.branch_a {
            Branch::Root => Classification::WLine,
            Branch::Median => Classification::Median,
        },
    }
}

fn classify(e: &EmbeddedTriangle, cut: &VertexCut) -> Classification {
    if cut.kind == VertexCutKind::WLine {
        return Classification::WLine;
    }
    let midpoints = [(e.a + e.b) / 2.0, (e.b + e.c) / 2.0, (e.c + e.a) / 2.0];
    let tol = 1e-9 * e.perimeter();
    let hits_mid = |p: Point| midpoints.iter().any(|m| m.distance(p) < tol);
    if hits_mid(cut.chord.p1) || hits_mid(cut.chord.p2) {
        Classification::Median
    } else {
        Classification::BoundaryChord
    }
}

/// `w = min(w_A, w_B, w_C)` at an arbitrary interior point, ties resolved in
/// the order `A, B, C`.
pub fn min_cut_at_point(e: &EmbeddedTriangle, p: Point) -> Result<CutResult> {
    let mut best: Option<VertexCut> = None;
    for v in Vertex::ALL {
        let cut = vertex_min_cut(e, v, p)?;
        if best.is_none_or(|b| cut.value < b.value) {
            best = Some(cut);
        }
    }
    let best = best.expect("three vertices");
    let perimeter = e.perimeter();
    Ok(CutResult {
        w: best.value,
        m: best.value / perimeter,
        perimeter,
        achieving_vertex: best.vertex,
        chord: best.chord,
        classification: classify(e, &best),
    })
}

/// `4(a + b + c)/9 − w`; never negative, zero only for equilateral triangles.
pub fn upper_bound_margin(t: &Triangle) -> f64 {
    4.0 * t.perimeter() / 9.0 - vertex_cuts_centroid(t).w_a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle_core::make_triangle;

    fn tri(a: f64, b: f64, c: f64) -> Triangle {
        make_triangle(a, b, c).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn equilateral() {
        let v = vertex_cuts_centroid(&tri(1.0, 1.0, 1.0));
        for w in [v.w_a, v.w_b, v.w_c] {
            assert!((w - 4.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!([v.branch_a, v.branch_b, v.branch_c], [Branch::Root; 3]);
        let r = min_cut_centroid(&tri(1.0, 1.0, 1.0));
        assert!((r.m - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.classification, Classification::WLine);
        assert!(upper_bound_margin(&tri(1.0, 1.0, 1.0)).abs() < 1e-15);
    }

    #[test]
    fn sides_4_4_4_1() {
        let t = tri(4.4, 4.0, 1.0);
        let v = vertex_cuts_centroid(&t);
        assert_eq!(v.w_a, 3.0);
        assert_eq!(v.branch_a, Branch::Root);
        assert!(rel(v.w_b, 3.2) < 1e-15);
        assert_eq!(v.branch_b, Branch::Median);
        assert!(rel(v.w_c, (8.4 + 2.0 * 17.6f64.sqrt()) / 3.0) < 1e-15);
        assert!((v.w_c - 5.5968).abs() < 1e-4);
        assert!((upper_bound_margin(&t) - (4.0 * 9.4 / 9.0 - 3.0)).abs() < 1e-14);
    }

    #[test]
    fn sides_8_8_1() {
        let t = tri(8.0, 8.0, 1.0);
        let v = vertex_cuts_centroid(&t);
        assert_eq!((v.w_a, v.w_b), (5.0, 5.0));
        assert_eq!((v.branch_a, v.branch_b), (Branch::Median, Branch::Median));
        assert!(rel(v.w_c, 32.0 / 3.0) < 1e-15);
        let r = min_cut_centroid(&t);
        assert!(rel(r.m, 5.0 / 17.0) < 1e-15);
        assert!(r.m < CLAIMED_INFIMUM);
        assert_eq!(r.classification, Classification::Median);
        assert!((upper_bound_margin(&t) - 23.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn near_5_4_1() {
        let r = min_cut_centroid(&tri(5.0, 4.0, 1.0001));
        assert!((r.m - 0.3).abs() < 1e-4);
        assert!(r.m > 0.3);
    }

    #[test]
    fn point_rule_matches_centroid_formula() {
        for sides in [(1.0, 1.0, 1.0), (8.0, 8.0, 1.0), (4.4, 4.0, 1.0), (5.0, 4.0, 3.0), (9.0, 5.0, 4.5)] {
            let t = tri(sides.0, sides.1, sides.2);
            let e = embed(&t);
            let at_g = min_cut_at_point(&e, centroid(&e)).unwrap();
            let closed = min_cut_centroid(&t);
            assert!(rel(at_g.w, closed.w) < 1e-12, "{sides:?}");
        }
    }

    #[test]
    fn point_rule_rejects_exterior() {
        let e = embed(&tri(5.0, 4.0, 3.0));
        assert!(min_cut_at_point(&e, Point::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn chord_realizes_w() {
        for sides in [(1.0, 1.0, 1.0), (8.0, 8.0, 1.0), (4.4, 4.0, 1.0), (5.0, 4.0, 3.0)] {
            let t = tri(sides.0, sides.1, sides.2);
            let e = embed(&t);
            let r = min_cut_centroid(&t);
            let (_, lo, _) = e.boundary().cut(centroid(&e), r.chord.theta).unwrap();
            assert!(rel(lo, r.w) < 1e-10, "{sides:?}");
        }
    }
}
