//! Triangle shape space normalized to unit perimeter.
//!
//! A shape is a pair `(b, c)` with `a = 1 − b − c` and `a ≥ b ≥ c`, which
//! together with the triangle inequality is the region
//! `(1 − c)/2 ≥ b ≥ c > 1/2 − b`. On it the centroid cut fraction is
//! `F(b, c) = (b + c + 2√(bc))/3` for `b ≤ 4c` and `c + b/2` otherwise.

use std::io::Write;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{w_a_branch, Branch, CLAIMED_INFIMUM};
use crate::error::{Error, Result};
use crate::oracle::sweep_min_perimeter;
use crate::output::{fmt_num, write_csv};
use crate::triangle_core::{centroid, embed, make_triangle, Triangle};

/// Tolerance for membership in the closed region.
const REGION_TOL: f64 = 1e-12;
/// Margin used by [`random_triangle`].
pub const RANDOM_MARGIN: f64 = 1e-4;

pub fn in_closed_region(b: f64, c: f64) -> bool {
    c >= -REGION_TOL
        && b >= c - REGION_TOL
        && b <= (1.0 - c) / 2.0 + REGION_TOL
        && b + c >= 0.5 - REGION_TOL
}

/// The centroid cut fraction of the normalized shape `(b, c)`.
pub fn shape_fraction(b: f64, c: f64) -> Result<(f64, Branch)> {
    if !(b.is_finite() && c.is_finite() && in_closed_region(b, c)) {
        return Err(Error::OutsideRegion { b, c });
    }
    Ok(w_a_branch(b, c.max(0.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapePoint {
    pub b: f64,
    pub c: f64,
    pub a: f64,
    /// `F(b, c)`, which equals `m` at unit perimeter.
    pub f: f64,
    pub branch: Branch,
    pub near_degenerate: bool,
}

impl ShapePoint {
    pub fn below_claimed_bound(&self) -> bool {
        self.f < CLAIMED_INFIMUM
    }

    fn flag(&self) -> String {
        let mut flags = Vec::new();
        if self.below_claimed_bound() {
            flags.push("below_3_10");
        }
        if self.near_degenerate {
            flags.push("near_degenerate");
        }
        if flags.is_empty() {
            "none".to_string()
        } else {
            flags.join("|")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Corner {
    pub label: &'static str,
    /// Horizontal axis of the shape plot.
    pub c: f64,
    /// Vertical axis of the shape plot.
    pub b: f64,
    pub f: f64,
    pub branch: Branch,
    /// On `b + c = 1/2` or `c = 0`.
    pub degenerate: bool,
}

/// The five corners of the two sub-regions split by `b = 4c`, as `(c, b)`.
pub fn corner_values() -> Vec<Corner> {
    let corners: [(&str, f64, f64); 5] = [
        ("(0,1/2)", 0.0, 1.0 / 2.0),
        ("(1/4,1/4)", 1.0 / 4.0, 1.0 / 4.0),
        ("(1/3,1/3)", 1.0 / 3.0, 1.0 / 3.0),
        ("(1/10,4/10)", 1.0 / 10.0, 4.0 / 10.0),
        ("(1/9,4/9)", 1.0 / 9.0, 4.0 / 9.0),
    ];
    corners
        .into_iter()
        .map(|(label, c, b)| {
            let (f, branch) = shape_fraction(b, c).expect("corners lie in the closed region");
            Corner {
                label,
                c,
                b,
                f,
                branch,
                degenerate: c == 0.0 || (b + c - 0.5).abs() < 1e-15,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub resolution: usize,
    pub margin: f64,
    /// Seeds the choice of grid points cross-checked by the sweep oracle.
    pub seed: u64,
    /// Share of grid points cross-checked by the sweep oracle.
    pub oracle_share: f64,
    pub oracle_samples: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            resolution: 400,
            margin: 1e-3,
            seed: 0,
            oracle_share: 0.01,
            oracle_samples: 720,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub grid: Vec<ShapePoint>,
    pub min_point: ShapePoint,
    pub max_point: ShapePoint,
    pub corner_values: Vec<Corner>,
    pub below_claimed_bound: Vec<ShapePoint>,
    pub oracle_checked: usize,
    /// Largest relative gap between `F` and the sweep oracle on the checked
    /// subsample.
    pub oracle_max_rel_err: f64,
}

/// Everything in a [`ScanReport`] except the grid itself.
#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary<'a> {
    pub resolution: usize,
    pub margin: f64,
    pub seed: u64,
    pub grid_points: usize,
    pub min_point: &'a ShapePoint,
    pub max_point: &'a ShapePoint,
    pub claimed_infimum: f64,
    pub corner_values: &'a [Corner],
    pub corner_minimum: f64,
    pub below_claimed_bound_count: usize,
    pub below_claimed_bound: &'a [ShapePoint],
    pub oracle_checked: usize,
    pub oracle_max_rel_err: f64,
}

impl ScanReport {
    pub fn summary(&self) -> ScanSummary<'_> {
        ScanSummary {
            resolution: self.config.resolution,
            margin: self.config.margin,
            seed: self.config.seed,
            grid_points: self.grid.len(),
            min_point: &self.min_point,
            max_point: &self.max_point,
            claimed_infimum: CLAIMED_INFIMUM,
            corner_values: &self.corner_values,
            corner_minimum: self.corner_values.iter().map(|c| c.f).fold(f64::INFINITY, f64::min),
            below_claimed_bound_count: self.below_claimed_bound.len(),
            below_claimed_bound: &self.below_claimed_bound,
            oracle_checked: self.oracle_checked,
            oracle_max_rel_err: self.oracle_max_rel_err,
        }
    }

    /// One row per grid point: `c,b,a,F,branch,flag`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        write_csv(
            out,
            &["c", "b", "a", "F", "branch", "flag"],
            self.grid.iter().map(|p| {
                vec![
                    fmt_num(p.c),
                    fmt_num(p.b),
                    fmt_num(p.a),
                    fmt_num(p.f),
                    format!("{:?}", p.branch),
                    p.flag(),
                ]
            }),
        )
    }
}

pub fn scan_region(resolution: usize, margin: f64) -> Result<ScanReport> {
    scan_region_with(ScanConfig {
        resolution,
        margin,
        ..ScanConfig::default()
    })
}

/// Evaluates `F` on a `resolution × resolution` grid over the region pulled
/// in by `margin` from its degenerate edges (`c ≥ margin`,
/// `b + c ≥ 1/2 + margin`). Columns run over `c ∈ [margin, 1/3]`; each column
/// is sampled uniformly in `b` across its admissible range.
pub fn scan_region_with(config: ScanConfig) -> Result<ScanReport> {
    let ScanConfig {
        resolution,
        margin,
        seed,
        oracle_share,
        oracle_samples,
    } = config;
    if resolution < 50 {
        return Err(Error::InvalidArgument(format!("resolution must be at least 50, got {resolution}")));
    }
    if !(margin > 0.0 && margin < 1.0 / 6.0) {
        return Err(Error::InvalidArgument(format!("margin must lie in (0, 1/6), got {margin}")));
    }

    let rows: Vec<Vec<ShapePoint>> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let c = margin + (1.0 / 3.0 - margin) * i as f64 / (resolution - 1) as f64;
            let lo = c.max(0.5 + margin - c);
            let hi = (1.0 - c) / 2.0;
            if lo > hi {
                return Vec::new();
            }
            let count = if hi - lo < 1e-15 { 1 } else { resolution };
            (0..count)
                .filter_map(|j| {
                    let b = if count == 1 { lo } else { lo + (hi - lo) * j as f64 / (count - 1) as f64 };
                    let (f, branch) = shape_fraction(b, c).ok()?;
                    let a = 1.0 - b - c;
                    let near_degenerate = make_triangle(a, b, c).map(|t| t.near_degenerate).ok()?;
                    Some(ShapePoint {
                        b,
                        c,
                        a,
                        f,
                        branch,
                        near_degenerate,
                    })
                })
                .collect()
        })
        .collect();
    let grid: Vec<ShapePoint> = rows.into_iter().flatten().collect();
    if grid.is_empty() {
        return Err(Error::InvalidArgument("scan grid is empty".into()));
    }

    // first occurrence in (row, column) order wins ties
    let mut min_point = grid[0];
    let mut max_point = grid[0];
    for p in &grid {
        if p.f < min_point.f {
            min_point = *p;
        }
        if p.f > max_point.f {
            max_point = *p;
        }
    }
    let below_claimed_bound: Vec<ShapePoint> = grid.iter().copied().filter(ShapePoint::below_claimed_bound).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = ((grid.len() as f64 * oracle_share).ceil() as usize).min(grid.len());
    let mut picked = sample(&mut rng, grid.len(), checks).into_vec();
    picked.sort_unstable();
    let errors: Vec<f64> = picked
        .par_iter()
        .map(|&k| {
            let p = &grid[k];
            let e = embed(&make_triangle(p.a, p.b, p.c)?);
            let prof = sweep_min_perimeter(&e, centroid(&e), oracle_samples)?;
            Ok((prof.min_fraction - p.f).abs() / p.f)
        })
        .collect::<Result<Vec<f64>>>()?;
    let oracle_max_rel_err = errors.into_iter().fold(0.0, f64::max);

    Ok(ScanReport {
        config,
        grid,
        min_point,
        max_point,
        corner_values: corner_values(),
        below_claimed_bound,
        oracle_checked: checks,
        oracle_max_rel_err,
    })
}

/// A seeded random triangle, uniform over the shape region kept `1e-4` away
/// from its degenerate edges.
pub fn random_triangle(seed: u64) -> Triangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c: f64 = rng.random::<f64>() / 3.0;
        let b: f64 = 0.25 + 0.25 * rng.random::<f64>();
        let inside = c >= RANDOM_MARGIN
            && b + c >= 0.5 + RANDOM_MARGIN
            && b >= c
            && b <= (1.0 - c) / 2.0;
        if inside {
            if let Ok(t) = make_triangle(1.0 - b - c, b, c) {
                return t;
            }
        }
    }
}
