//! W-lines: for an angle with vertex `V` and a point `P` inside it, the line
//! through `P` meeting the two sides at `M` and `N` that minimizes
//! `VM + VN`.
//!
//! With `P = x·u + y·v` in the oblique frame of the angle, the minimizing line
//! meets the sides at distances `x + √(xy)` and `y + √(xy)` from the vertex,
//! cutting off `(√x + √y)²`. Inside a triangle that line may leave the sides
//! as segments; the minimum over chords is then taken by one of the two
//! cevians through `P` ending at the far end of a side.

use serde::Serialize;

use crate::boundary::Chord;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::search::golden_section;
use crate::triangle_core::{oblique_coords, EmbeddedTriangle, Vertex};

/// Relative slack in the closed-side feasibility test, so that a W-line
/// ending exactly at a vertex is still classified as a W-line.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

/// Default upper end of the oracle's search bracket, as a multiple of `x`.
pub const DEFAULT_BRACKET: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WLineSolution {
    /// Distance from the vertex to the crossing on the `u` side.
    pub s: f64,
    /// Distance from the vertex to the crossing on the `v` side.
    pub t: f64,
    pub cut: f64,
}

pub fn wline_extreme(x: f64, y: f64) -> Result<WLineSolution> {
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::NonPositiveInput(x, y));
    }
    let r = (x * y).sqrt();
    let root = x.sqrt() + y.sqrt();
    Ok(WLineSolution {
        s: x + r,
        t: y + r,
        cut: root * root,
    })
}

/// Numeric solution of `min s + t` subject to `x/s + y/t = 1`, `s > x`,
/// `t > y`, using the default bracket.
pub fn lagrange_oracle(x: f64, y: f64, n: usize) -> (f64, f64) {
    lagrange_oracle_with_bracket(x, y, n, DEFAULT_BRACKET)
}

/// Grid search over `s ∈ (x, bracket·x]` (log-spaced offsets from `x`),
/// eliminating `t` through the constraint, followed by golden-section
/// refinement of the stationarity residual of the Lagrangian
/// `L = s + t + λ(x/s + y/t − 1)`: `λ` comes from `∂L/∂s = 0` and the search
/// drives `∂L/∂t` to zero.
pub fn lagrange_oracle_with_bracket(x: f64, y: f64, n: usize, bracket: f64) -> (f64, f64) {
    let n = n.max(100);
    let t_of = |s: f64| y * s / (s - x);
    let objective = |s: f64| s + t_of(s);
    let span = x * (bracket - 1.0);
    let grid: Vec<f64> = (0..n)
        .map(|k| x + span * 10f64.powf(-12.0 * (1.0 - k as f64 / (n - 1) as f64)))
        .collect();
    let best = (0..n)
        .min_by(|&i, &j| objective(grid[i]).total_cmp(&objective(grid[j])))
        .unwrap_or(0);
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(n - 1)];

    let residual = |s: f64| {
        let lambda = s * s / x;
        let t = t_of(s);
        (1.0 - lambda * y / (t * t)).abs()
    };
    let (s, _) = golden_section(residual, lo, hi, 1e-15 * hi);
    (s, t_of(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexCutKind {
    /// The W-line itself is a chord of the triangle.
    WLine,
    /// The chord through `P` and the far end of the `u` side.
    BoundaryChordLeft,
    /// The chord through `P` and the far end of the `v` side.
    BoundaryChordRight,
}

/// Minimum of `VM + VN` over chords through `P` with `M`, `N` on the two
/// sides at vertex `V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexCut {
    pub vertex: Vertex,
    pub value: f64,
    pub kind: VertexCutKind,
    /// Distances from the vertex to the chord's crossings along `u` and `v`.
    pub along_u: f64,
    pub along_v: f64,
    pub chord: Chord,
}

pub fn vertex_min_cut(e: &EmbeddedTriangle, vertex: Vertex, p: Point) -> Result<VertexCut> {
    let o = oblique_coords(e, vertex, p)?;
    let frame = e.vertex_frame(vertex);
    let w = wline_extreme(o.x, o.y)?;

    let fits_u = w.s <= frame.len_u * (1.0 + FEASIBILITY_SLACK);
    let fits_v = w.t <= frame.len_v * (1.0 + FEASIBILITY_SLACK);
    let (kind, along_u, along_v, value) = if fits_u && fits_v {
        (VertexCutKind::WLine, w.s, w.t, w.cut)
    } else {
        // chords through P and (len_u, 0) or (0, len_v) in the oblique frame
        let left_v = o.y * frame.len_u / (frame.len_u - o.x);
        let right_u = o.x * frame.len_v / (frame.len_v - o.y);
        let left = frame.len_u + left_v;
        let right = frame.len_v + right_u;
        if left <= right {
            (VertexCutKind::BoundaryChordLeft, frame.len_u, left_v, left)
        } else {
            (VertexCutKind::BoundaryChordRight, right_u, frame.len_v, right)
        }
    };

    let m = frame.at(along_u, 0.0);
    let n = frame.at(0.0, along_v);
    let chord = e.boundary().chord_unchecked(p, (n - m).line_angle());
    Ok(VertexCut {
        vertex,
        value,
        kind,
        along_u,
        along_v,
        chord,
    })
}
