//! Convex polygons: centroid cut fractions, central symmetry, and a search
//! for the point whose worst line keeps the largest share of the perimeter.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::ConvexBoundary;
use crate::error::{Error, Result};
use crate::geometry::{shoelace2, Point};
use crate::oracle::{sweep, Measure, Refinement, SweepProfile};
use crate::search::nelder_mead_2d;

/// Extra samples per vertex-delimited sub-interval of a polygon sweep.
pub const LOCAL_SAMPLES: usize = 32;
/// `(3 − √5)/2`, the conjectured best perimeter share for convex sets.
pub const NEUMANN_PERIMETER_CONSTANT: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    boundary: ConvexBoundary,
}

/// On-disk polygon description: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Point] {
        self.boundary.vertices()
    }

    pub fn perimeter(&self) -> f64 {
        self.boundary.perimeter()
    }

    pub fn area(&self) -> f64 {
        self.boundary.area()
    }

    pub fn boundary(&self) -> &ConvexBoundary {
        &self.boundary
    }

    /// Largest vertex distance from the first vertex; the length scale used
    /// by the tolerances.
    pub fn scale(&self) -> f64 {
        let v0 = self.vertices()[0];
        self.vertices().iter().map(|v| v.distance(v0)).fold(0.0, f64::max)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: PolygonFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("polygon file: {e}")))?;
        make_polygon(file.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect())
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_file(&self) -> PolygonFile {
        PolygonFile {
            vertices: self.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

/// Validates a strictly convex polygon. Clockwise input is reversed.
pub fn make_polygon(mut points: Vec<Point>) -> Result<ConvexPolygon> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidArgument("non-finite vertex coordinate".into()));
    }
    let scale = points
        .iter()
        .flat_map(|p| points.iter().map(move |q| p.distance(*q)))
        .fold(0.0, f64::max);
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i].distance(points[j]) <= 1e-12 * scale {
                return Err(Error::DuplicateVertex(j));
            }
        }
    }
    if shoelace2(&points) < 0.0 {
        points.reverse();
    }
    for i in 0..n {
        let prev = points[(i + n - 1) % n];
        let cur = points[i];
        let next = points[(i + 1) % n];
        if (cur - prev).cross(next - cur) <= 1e-12 * scale * scale {
            return Err(Error::NotConvex(i));
        }
    }
    // a strictly left-turning closed walk can still wind more than once
    let turning: f64 = (0..n)
        .map(|i| {
            let d0 = points[i] - points[(i + n - 1) % n];
            let d1 = points[(i + 1) % n] - points[i];
            d0.cross(d1).atan2(d0.dot(d1))
        })
        .sum();
    if (turning - std::f64::consts::TAU).abs() > 1e-6 {
        return Err(Error::NotConvex(0));
    }
    Ok(ConvexPolygon {
        boundary: ConvexBoundary::from_ccw(points),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum CentroidKind {
    /// Centroid of the region.
    #[default]
    Area,
    /// Centroid of the boundary curve with uniform density.
    Perimeter,
}

pub fn poly_centroid(p: &ConvexPolygon) -> Point {
    centroid_of(p, CentroidKind::Area)
}

pub fn centroid_of(p: &ConvexPolygon, kind: CentroidKind) -> Point {
    let v = p.vertices();
    let n = v.len();
    match kind {
        CentroidKind::Area => {
            // relative to v[0] to limit cancellation
            let o = v[0];
            let (mut sx, mut sy, mut a2) = (0.0, 0.0, 0.0);
            for i in 0..n {
                let (p0, p1) = (v[i] - o, v[(i + 1) % n] - o);
                let cr = p0.cross(p1);
                a2 += cr;
                sx += (p0.x + p1.x) * cr;
                sy += (p0.y + p1.y) * cr;
            }
            o + Point::new(sx, sy) / (3.0 * a2)
        }
        CentroidKind::Perimeter => {
            let mut acc = Point::default();
            for (i, len) in p.boundary.edge_lengths().iter().enumerate() {
                acc = acc + (v[i] + v[(i + 1) % n]) * (0.5 * len);
            }
            acc / p.perimeter()
        }
    }
}

/// Perimeter sweep at `point`, refined with dense local sampling inside
/// every vertex-delimited sub-interval.
pub fn poly_min_fraction(p: &ConvexPolygon, point: Point, n: usize) -> Result<SweepProfile> {
    sweep(&p.boundary, point, n, Measure::Perimeter, Refinement::DenseLocal(LOCAL_SAMPLES))
}

/// The symmetry center, if the polygon has an even vertex count and
/// `v_i + v_{i+k}` (`k` = half the count) is constant within `tol · scale`.
pub fn is_centrally_symmetric(p: &ConvexPolygon, tol: f64) -> Option<Point> {
    let v = p.vertices();
    let n = v.len();
    if n % 2 == 1 {
        return None;
    }
    let k = n / 2;
    let center = (v[0] + v[k]) / 2.0;
    let limit = tol * p.scale();
    (0..k)
        .all(|i| ((v[i] + v[i + k]) / 2.0).distance(center) <= limit)
        .then_some(center)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeumannResult {
    pub point: Point,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Index of the start that produced the result.
    pub start: usize,
    pub starts: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannConfig {
    pub samples: usize,
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for NeumannConfig {
    fn default() -> Self {
        Self {
            samples: 720,
            starts: 8,
            seed: 0,
            max_iter: 400,
        }
    }
}

/// `Q(P)`: the smallest perimeter fraction over lines through `P`.
pub fn worst_line_fraction(p: &ConvexPolygon, point: Point, n: usize) -> Result<f64> {
    poly_min_fraction(p, point, n).map(|prof| prof.min_fraction)
}

pub fn neumann_search(p: &ConvexPolygon, n: usize, starts: usize, seed: u64) -> Result<NeumannResult> {
    neumann_search_with(
        p,
        NeumannConfig {
            samples: n,
            starts,
            seed,
            ..NeumannConfig::default()
        },
    )
}

/// Multi-start Nelder–Mead maximization of `Q`. Start 0 is the area
/// centroid; the others are seeded random interior points.
pub fn neumann_search_with(p: &ConvexPolygon, config: NeumannConfig) -> Result<NeumannResult> {
    let starts = config.starts.max(5);
    let g = poly_centroid(p);
    let scale = p.scale();
    let v = p.vertices();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut points = vec![g];
    while points.len() < starts {
        // random convex combination, pulled toward the centroid
        let weights: Vec<f64> = v.iter().map(|_| rng.random::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        let mix = v.iter().zip(&weights).fold(Point::default(), |acc, (q, w)| acc + *q * (w / total));
        let candidate = g + (mix - g) * 0.9;
        if p.boundary.contains_strictly(candidate) {
            points.push(candidate);
        }
    }

    let centroid_value = worst_line_fraction(p, g, config.samples)?;
    let objective = |q: Point| match worst_line_fraction(p, q, config.samples) {
        Ok(f) => -f,
        Err(_) => f64::INFINITY,
    };

    let runs: Vec<NeumannResult> = points
        .par_iter()
        .enumerate()
        .map(|(i, &start)| {
            let r = nelder_mead_2d(objective, start, 0.05 * scale, 1e-7 * scale, config.max_iter);
            NeumannResult {
                point: r.point,
                value: -r.value,
                iterations: r.iterations,
                converged: r.converged,
                start: i,
                starts,
                seed: config.seed,
            }
        })
        .collect();

    // Nelder–Mead never gives up its best vertex, so run 0 is at least as
    // good as the centroid; later runs must be strictly better to win
    let mut best = runs[0];
    for r in &runs[1..] {
        if r.value > best.value {
            best = *r;
        }
    }
    debug_assert!(best.value >= centroid_value);
    Ok(best)
}
