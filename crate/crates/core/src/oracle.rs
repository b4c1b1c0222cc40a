//! Brute-force minimization of the smaller perimeter (or area) piece over all
//! lines through a point. It only uses chord intersection, never the closed
//! forms, so it serves as the reference the formulas are checked against.
//!
//! The sweep samples line angles on a uniform grid over `[0, π)` plus the
//! directions through each vertex. Between two consecutive vertex directions
//! the line crosses a fixed pair of edges and the piece lengths are smooth,
//! so each such sub-interval is refined on its own with golden-section
//! search. The coarse samples guard the refinement: if it ever lands above
//! the best sample, the sample wins.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::boundary::{Chord, ConvexBoundary};
use crate::error::{Error, Result};
use crate::geometry::{line_angle_distance, normalize_line_angle, Point};
use crate::output::{fmt_num, write_csv};
use crate::search::golden_section;
use crate::triangle_core::EmbeddedTriangle;

pub const DEFAULT_SAMPLES: usize = 3600;
pub const MIN_SAMPLES: usize = 360;
/// Bracket width (radians) at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-10;
/// Local minima within this fraction of the global one are reported as ties.
pub const TIE_TOL: f64 = 1e-10;

/// What is being split by the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    Perimeter,
    Area,
}

impl Measure {
    /// Amounts on the `t1 → t2` side and on the other side of the chord.
    fn sides(self, boundary: &ConvexBoundary, chord: &Chord) -> (f64, f64) {
        match self {
            Measure::Perimeter => {
                let inner = chord.inner_piece();
                (inner, boundary.perimeter() - inner)
            }
            Measure::Area => boundary.area_sides(chord),
        }
    }

    fn total(self, boundary: &ConvexBoundary) -> f64 {
        match self {
            Measure::Perimeter => boundary.perimeter(),
            Measure::Area => boundary.area(),
        }
    }
}

/// How each vertex-delimited sub-interval is refined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Refinement {
    /// Triangles: the piece on the side of the shared vertex of the two
    /// crossed edges is unimodal across the whole sub-interval.
    Wedge,
    /// General polygons: extra uniform samples per sub-interval before the
    /// local bracket refinement.
    DenseLocal(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepProfile {
    pub measure: Measure,
    pub thetas: Vec<f64>,
    pub piece_min_fractions: Vec<f64>,
    /// Directions (in `[0, π)`) of the lines through the point and a vertex.
    pub breakpoints: Vec<f64>,
    pub argmin_theta: f64,
    /// Every refined local minimum tying with the global one.
    pub argmin_thetas: Vec<f64>,
    pub min_fraction: f64,
    /// Best value among the grid samples alone.
    pub coarse_min_fraction: f64,
    /// Largest change of the fraction that sampling continuity allows between
    /// neighbouring samples.
    pub continuity_bound: f64,
}

impl SweepProfile {
    /// Plot-ready export: `theta,piece_min_fraction`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        write_csv(
            out,
            &["theta", "piece_min_fraction"],
            self.thetas
                .iter()
                .zip(&self.piece_min_fractions)
                .map(|(t, f)| vec![fmt_num(*t), fmt_num(*f)]),
        )
    }
}

struct Evaluator<'a> {
    boundary: &'a ConvexBoundary,
    p: Point,
    measure: Measure,
    total: f64,
}

impl Evaluator<'_> {
    fn fraction(&self, theta: f64) -> f64 {
        let chord = self.boundary.chord_unchecked(self.p, theta);
        let (inner, outer) = self.measure.sides(self.boundary, &chord);
        inner.min(outer) / self.total
    }

    /// Fraction on the side containing the vertex shared by the two crossed
    /// edges (continuous within one sub-interval of a triangle).
    fn wedge_fraction(&self, theta: f64) -> f64 {
        let (c1, c2) = self.boundary.crossings(self.p, theta);
        let chord = self.boundary.chord_unchecked(self.p, theta);
        let (inner, outer) = self.measure.sides(self.boundary, &chord);
        // the shared vertex lies strictly between t1 and t2 iff the edge of the
        // second crossing directly follows the edge of the first
        let piece = if c2.edge == c1.edge + 1 {
            inner
        } else {
            outer
        };
        piece / self.total
    }

    /// Upper bound on |d fraction / dθ| at `theta`.
    fn rate(&self, theta: f64) -> f64 {
        let (c1, c2) = self.boundary.crossings(self.p, theta);
        match self.measure {
            Measure::Perimeter => {
                let speed = |r: f64, s: f64| if s > 1e-300 { r / s } else { f64::INFINITY };
                (speed(c1.reach, c1.incidence) + speed(c2.reach, c2.incidence)) / self.total
            }
            Measure::Area => 0.5 * (c1.reach * c1.reach + c2.reach * c2.reach) / self.total,
        }
    }
}

pub fn sweep_min_perimeter(e: &EmbeddedTriangle, p: Point, n: usize) -> Result<SweepProfile> {
    sweep(e.boundary(), p, n, Measure::Perimeter, Refinement::Wedge)
}

pub fn sweep_min_area(e: &EmbeddedTriangle, p: Point, n: usize) -> Result<SweepProfile> {
    sweep(e.boundary(), p, n, Measure::Area, Refinement::Wedge)
}

pub(crate) fn sweep(
    boundary: &ConvexBoundary,
    p: Point,
    n: usize,
    measure: Measure,
    refinement: Refinement,
) -> Result<SweepProfile> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    boundary.require_interior(p)?;
    let ev = Evaluator {
        boundary,
        p,
        measure,
        total: measure.total(boundary),
    };

    let breakpoints = boundary.vertex_directions(p);
    let mut thetas: Vec<f64> = (0..n).map(|k| PI * k as f64 / n as f64).collect();
    thetas.extend_from_slice(&breakpoints);
    if let Refinement::DenseLocal(extra) = refinement {
        for (lo, hi) in sub_intervals(&breakpoints) {
            for k in 1..=extra {
                thetas.push(normalize_line_angle(lo + (hi - lo) * k as f64 / (extra + 1) as f64));
            }
        }
    }
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    let fractions: Vec<f64> = thetas.iter().map(|&t| ev.fraction(t)).collect();

    let (coarse_idx, coarse_min) = fractions
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty sweep");

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in sub_intervals(&breakpoints) {
        // samples of this sub-interval, unwrapped into [lo, hi]
        let mut local: Vec<(f64, f64)> = thetas
            .iter()
            .zip(&fractions)
            .filter_map(|(&t, &f)| {
                let u = if t < lo { t + PI } else { t };
                (u >= lo && u <= hi).then_some((u, f))
            })
            .collect();
        local.sort_by(|a, b| a.0.total_cmp(&b.0));
        let Some(best) = (0..local.len()).min_by(|&i, &j| local[i].1.total_cmp(&local[j].1)) else {
            continue;
        };
        let mut interval_best = local[best];

        let a = local[best.saturating_sub(1)].0;
        let b = local[(best + 1).min(local.len() - 1)].0;
        if b > a {
            let r = golden_section(|t| ev.fraction(t), a, b, REFINE_TOL);
            if r.1 < interval_best.1 {
                interval_best = r;
            }
        }
        if refinement == Refinement::Wedge && hi > lo {
            let (t, _) = golden_section(|t| ev.wedge_fraction(t), lo, hi, REFINE_TOL);
            let f = ev.fraction(t);
            if f < interval_best.1 {
                interval_best = (t, f);
            }
        }
        candidates.push((normalize_line_angle(interval_best.0), interval_best.1));
    }

    let (mut argmin_theta, mut min_fraction) = candidates
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((thetas[coarse_idx], coarse_min));
    if min_fraction > coarse_min {
        log::warn!(
            "refinement ({min_fraction}) worse than coarse sample ({coarse_min}); keeping the sample"
        );
        argmin_theta = thetas[coarse_idx];
        min_fraction = coarse_min;
    }

    let mut argmin_thetas: Vec<f64> = Vec::new();
    for &(t, f) in &candidates {
        if f <= min_fraction + TIE_TOL && argmin_thetas.iter().all(|&u| line_angle_distance(u, t) > 1e-6) {
            argmin_thetas.push(t);
        }
    }
    if argmin_thetas.is_empty() {
        argmin_thetas.push(argmin_theta);
    }
    argmin_thetas.sort_by(f64::total_cmp);

    let rates: Vec<f64> = thetas.iter().map(|&t| ev.rate(t)).collect();
    let m = thetas.len();
    let continuity_bound = (0..m)
        .map(|k| {
            let next = (k + 1) % m;
            let step = if next == 0 { thetas[0] + PI - thetas[k] } else { thetas[next] - thetas[k] };
            2.0 * rates[k].max(rates[next]) * step
        })
        .fold(0.0, f64::max);

    Ok(SweepProfile {
        measure,
        thetas,
        piece_min_fractions: fractions,
        breakpoints,
        argmin_theta,
        argmin_thetas,
        min_fraction,
        coarse_min_fraction: coarse_min,
        continuity_bound,
    })
}

/// Consecutive breakpoint pairs, the last one wrapping through π.
fn sub_intervals(breakpoints: &[f64]) -> Vec<(f64, f64)> {
    let k = breakpoints.len();
    if k == 0 {
        return vec![(0.0, PI)];
    }
    (0..k)
        .map(|i| {
            if i + 1 < k {
                (breakpoints[i], breakpoints[i + 1])
            } else {
                (breakpoints[i], breakpoints[0] + PI)
            }
        })
        .collect()
}

/// `(m, 1 − m)` for a full sweep, after checking the sampled fractions cover
/// `[m, 1/2]` without gaps wider than the continuity bound.
pub fn range_interval(profile: &SweepProfile) -> Result<(f64, f64)> {
    let m = profile.min_fraction;
    let mut values = profile.piece_min_fractions.clone();
    values.push(m);
    values.sort_by(f64::total_cmp);
    let bound = profile.continuity_bound;
    let mut worst = 0.0f64;
    for w in values.windows(2) {
        worst = worst.max(w[1] - w[0]);
    }
    worst = worst.max(0.5 - values[values.len() - 1]);
    if worst > bound {
        return Err(Error::GapDetected { gap: worst, bound });
    }
    Ok((m, 1.0 - m))
}
