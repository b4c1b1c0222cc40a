//! Arc-length parameterized boundary of a convex polygon and the chords cut
//! from it by lines through an interior point.
//!
//! The boundary parameter starts at vertex 0 and runs counterclockwise, so
//! vertex `i` sits at `arc[i]` and `t ∈ [0, perimeter)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{normalize_line_angle, shoelace2, Point};

/// Relative distance (in units of the perimeter) a point must keep from every
/// edge to count as strictly interior.
pub const INTERIOR_EPS: f64 = 1e-12;

/// A line through an interior point, recorded by where it crosses the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Chord {
    /// Boundary parameter of the first crossing (`t1 < t2`).
    pub t1: f64,
    pub t2: f64,
    pub p1: Point,
    pub p2: Point,
    /// Inclination of the line, in `[0, π)`.
    pub theta: f64,
}

impl Chord {
    /// Length of the arc from `t1` to `t2` (counterclockwise).
    pub fn inner_piece(&self) -> f64 {
        self.t2 - self.t1
    }
}

/// Where a ray leaves the polygon.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Crossing {
    pub t: f64,
    pub point: Point,
    pub edge: usize,
    /// Distance from the ray origin.
    pub reach: f64,
    /// |sin| of the angle between the ray and the crossed edge.
    pub incidence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBoundary {
    vertices: Vec<Point>,
    /// Boundary parameter at each vertex.
    arc: Vec<f64>,
    edge_len: Vec<f64>,
    /// Unit edge directions.
    edge_dir: Vec<Point>,
    perimeter: f64,
    area: f64,
}

impl ConvexBoundary {
    /// Builds the boundary from counterclockwise vertices. Convexity is the
    /// caller's responsibility.
    pub(crate) fn from_ccw(vertices: Vec<Point>) -> Self {
        let n = vertices.len();
        let mut arc = Vec::with_capacity(n);
        let mut edge_len = Vec::with_capacity(n);
        let mut edge_dir = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            let d = vertices[(i + 1) % n] - vertices[i];
            let len = d.norm();
            arc.push(acc);
            edge_len.push(len);
            edge_dir.push(d / len);
            acc += len;
        }
        let area = 0.5 * shoelace2(&vertices);
        Self {
            vertices,
            arc,
            edge_len,
            edge_dir,
            perimeter: acc,
            area,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_len
    }

    /// Boundary parameter of vertex `i`.
    pub fn vertex_arc(&self, i: usize) -> f64 {
        self.arc[i]
    }

    /// Signed distance from `p` to the supporting line of edge `i`
    /// (positive inside).
    fn edge_clearance(&self, i: usize, p: Point) -> f64 {
        self.edge_dir[i].cross(p - self.vertices[i])
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        let tol = INTERIOR_EPS * self.perimeter;
        (0..self.vertices.len()).all(|i| self.edge_clearance(i, p) > tol)
    }

    pub(crate) fn require_interior(&self, p: Point) -> Result<()> {
        if p.x.is_finite() && p.y.is_finite() && self.contains_strictly(p) {
            Ok(())
        } else {
            Err(Error::NotInterior(p.x, p.y))
        }
    }

    /// Distance from `p` to the nearest edge segment.
    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        (0..self.vertices.len())
            .map(|i| {
                let a = self.vertices[i];
                let s = (p - a).dot(self.edge_dir[i]).clamp(0.0, self.edge_len[i]);
                p.distance(a + self.edge_dir[i] * s)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Point at boundary parameter `t` (taken modulo the perimeter).
    pub fn point_at(&self, t: f64) -> Point {
        let t = t.rem_euclid(self.perimeter);
        let i = match self.arc.binary_search_by(|a| a.total_cmp(&t)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.vertices[i] + self.edge_dir[i] * (t - self.arc[i]).min(self.edge_len[i])
    }

    /// First boundary crossing of the ray `p + λ·dir`, `λ > 0`. `p` must be
    /// interior.
    pub(crate) fn exit(&self, p: Point, dir: Point) -> Crossing {
        let mut best_edge = 0;
        let mut best = f64::INFINITY;
        for i in 0..self.vertices.len() {
            // outward component of dir relative to edge i
            let outward = -self.edge_dir[i].cross(dir);
            if outward > 0.0 {
                let lambda = self.edge_clearance(i, p) / outward;
                if lambda < best {
                    best = lambda;
                    best_edge = i;
                }
            }
        }
        let i = best_edge;
        let along = (p + dir * best - self.vertices[i])
            .dot(self.edge_dir[i])
            .clamp(0.0, self.edge_len[i]);
        let mut t = self.arc[i] + along;
        if t >= self.perimeter {
            t -= self.perimeter;
        }
        Crossing {
            t,
            point: self.vertices[i] + self.edge_dir[i] * along,
            edge: i,
            reach: best,
            incidence: self.edge_dir[i].cross(dir).abs(),
        }
    }

    /// The two crossings of the line through `p` with inclination `theta`,
    /// ordered by boundary parameter.
    pub(crate) fn crossings(&self, p: Point, theta: f64) -> (Crossing, Crossing) {
        let dir = Point::from_angle(theta);
        let fwd = self.exit(p, dir);
        let back = self.exit(p, -dir);
        if fwd.t <= back.t {
            (fwd, back)
        } else {
            (back, fwd)
        }
    }

    /// Unchecked chord through `p`; `p` must be interior.
    pub(crate) fn chord_unchecked(&self, p: Point, theta: f64) -> Chord {
        let (c1, c2) = self.crossings(p, theta);
        Chord {
            t1: c1.t,
            t2: c2.t,
            p1: c1.point,
            p2: c2.point,
            theta: normalize_line_angle(theta),
        }
    }

    /// Chord through an interior point and the two boundary-arc lengths it
    /// separates, smaller first.
    pub fn cut(&self, p: Point, theta: f64) -> Result<(Chord, f64, f64)> {
        self.require_interior(p)?;
        let chord = self.chord_unchecked(p, theta);
        let (lo, hi) = self.pieces(&chord);
        Ok((chord, lo, hi))
    }

    /// Boundary-arc lengths on the two sides of a chord, smaller first.
    pub fn pieces(&self, chord: &Chord) -> (f64, f64) {
        let inner = chord.inner_piece();
        let outer = self.perimeter - inner;
        if inner <= outer {
            (inner, outer)
        } else {
            (outer, inner)
        }
    }

    /// Areas of the region on the `t1 → t2` side of the chord and of the
    /// region on the other side, each by the shoelace formula.
    pub fn area_sides(&self, chord: &Chord) -> (f64, f64) {
        let mut inner = vec![chord.p1];
        let mut outer = vec![chord.p2];
        for (v, &t) in self.vertices.iter().zip(&self.arc) {
            if t > chord.t1 && t < chord.t2 {
                inner.push(*v);
            }
        }
        inner.push(chord.p2);
        for (v, &t) in self.vertices.iter().zip(&self.arc) {
            if t > chord.t2 {
                outer.push(*v);
            }
        }
        for (v, &t) in self.vertices.iter().zip(&self.arc) {
            if t < chord.t1 {
                outer.push(*v);
            }
        }
        outer.push(chord.p1);
        (0.5 * shoelace2(&inner).abs(), 0.5 * shoelace2(&outer).abs())
    }

    /// Areas of the two regions a chord splits the polygon into, smaller first.
    pub fn area_split(&self, chord: &Chord) -> (f64, f64) {
        let (a1, a2) = self.area_sides(chord);
        if a1 <= a2 {
            (a1, a2)
        } else {
            (a2, a1)
        }
    }

    /// Line angles (in `[0, π)`) of the chords through `p` that pass through
    /// a vertex, sorted and deduplicated.
    pub fn vertex_directions(&self, p: Point) -> Vec<f64> {
        let mut dirs: Vec<f64> = self
            .vertices
            .iter()
            .map(|&v| (v - p).line_angle())
            .collect();
        dirs.sort_by(f64::total_cmp);
        dirs.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        dirs
    }
}
