//! The full verification run behind `winternitz verify`: every quantitative
//! claim recomputed along two independent routes, with measured-vs-claimed
//! disagreements reported separately from genuine failures.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{
    min_cut_centroid, upper_bound_margin, vertex_cuts_centroid, w_a_branch, Branch, CLAIMED_INFIMUM, FOUR_NINTHS,
};
use crate::convex_poly::{
    is_centrally_symmetric, make_polygon, neumann_search, poly_centroid, poly_min_fraction, worst_line_fraction,
    ConvexPolygon, NEUMANN_PERIMETER_CONSTANT,
};
use crate::error::Result;
use crate::geometry::{line_angle_distance, Point};
use crate::oracle::{sweep_min_area, sweep_min_perimeter, DEFAULT_SAMPLES};
use crate::output::fmt_num;
use crate::shape_scan::{corner_values, random_triangle, scan_region_with, shape_fraction, ScanConfig};
use crate::triangle_core::{centroid, embed, make_triangle, Triangle};
use crate::wline::{lagrange_oracle, wline_extreme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// Both routes agree, but the result contradicts a published claim.
    Discrepancy,
    /// Reported only; nothing is asserted.
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
            Status::Info => "INFO",
        }
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// A value stated in the source publication.
    Paper,
    /// Follows from symmetry or arithmetic.
    Trivial,
    /// Computed here by an independent route.
    Derived,
}

impl Provenance {
    fn tag(self) -> &'static str {
        match self {
            Provenance::Paper => "[PAPER]",
            Provenance::Trivial => "[TRIVIAL]",
            Provenance::Derived => "[DERIVED]",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub claim: String,
    pub claimed: f64,
    pub measured: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub seed: u64,
    pub quick: bool,
    pub scan_resolution: usize,
    pub entries: Vec<CheckEntry>,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "winternitz {} verify (seed {}, {}; scan resolution {})",
            self.version,
            self.seed,
            if self.quick { "quick" } else { "full" },
            self.scan_resolution
        );
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{:<11} {:<58} measured {:<20} expected {:<20} tol {:<8} {}{}",
                e.status.label(),
                e.name,
                fmt_num(e.measured),
                fmt_num(e.expected),
                fmt_num(e.tolerance),
                e.provenance.tag(),
                if e.note.is_empty() { String::new() } else { format!("  ({})", e.note) }
            );
        }
        let _ = writeln!(s, "\nDISCREPANCIES ({})", self.discrepancies.len());
        for d in &self.discrepancies {
            let _ = writeln!(
                s,
                "  {}: claimed {} vs measured {}; {}",
                d.claim,
                fmt_num(d.claimed),
                fmt_num(d.measured),
                d.note
            );
        }
        let fails = self.entries.iter().filter(|e| e.status == Status::Fail).count();
        let _ = writeln!(
            s,
            "\n{} checks, {} failed, {} discrepancies",
            self.entries.len(),
            fails,
            self.discrepancies.len()
        );
        s
    }
}

#[derive(Default)]
struct Builder {
    entries: Vec<CheckEntry>,
    discrepancies: Vec<Discrepancy>,
}

impl Builder {
    fn check(
        &mut self,
        name: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> bool {
        let ok = (measured - expected).abs() <= tolerance;
        self.push(name, ok, measured, expected, tolerance, provenance, "");
        ok
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        measured: f64,
        expected: f64,
        tolerance: f64,
        provenance: Provenance,
        note: &str,
    ) {
        self.entries.push(CheckEntry {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance,
            provenance,
            note: note.to_string(),
        });
    }

    fn info(&mut self, name: impl Into<String>, measured: f64, expected: f64, provenance: Provenance, note: &str) {
        self.entries.push(CheckEntry {
            name: name.into(),
            status: Status::Info,
            measured,
            expected,
            tolerance: 0.0,
            provenance,
            note: note.to_string(),
        });
    }

    fn discrepancy(&mut self, name: impl Into<String>, claim: &str, claimed: f64, measured: f64, note: &str) {
        let name = name.into();
        self.entries.push(CheckEntry {
            name,
            status: Status::Discrepancy,
            measured,
            expected: claimed,
            tolerance: 0.0,
            provenance: Provenance::Paper,
            note: note.to_string(),
        });
        self.discrepancies.push(Discrepancy {
            claim: claim.to_string(),
            claimed,
            measured,
            note: note.to_string(),
        });
    }
}

fn tri(a: f64, b: f64, c: f64) -> Result<Triangle> {
    make_triangle(a, b, c)
}

/// Minimum piece fraction at the centroid by the sweep oracle.
fn oracle_m(t: &Triangle, n: usize) -> Result<f64> {
    let e = embed(t);
    Ok(sweep_min_perimeter(&e, centroid(&e), n)?.min_fraction)
}

pub fn run_verify(seed: u64, quick: bool) -> Result<VerifyReport> {
    let mut r = Builder::default();
    let scale = |full: usize, q: usize| if quick { q } else { full };
    let resolution = scale(400, 100);

    // 1. equilateral maximum
    let eq = tri(1.0, 1.0, 1.0)?;
    let closed = min_cut_centroid(&eq);
    r.check("equilateral m, closed form", closed.m, FOUR_NINTHS, 1e-12, Provenance::Paper);
    let e = embed(&eq);
    let prof = sweep_min_perimeter(&e, centroid(&e), DEFAULT_SAMPLES)?;
    r.check("equilateral m, sweep oracle", prof.min_fraction, FOUR_NINTHS, 1e-9, Provenance::Paper);
    let parallels = [0.0, PI / 3.0, 2.0 * PI / 3.0];
    let worst_angle = parallels
        .iter()
        .map(|&p| {
            prof.argmin_thetas
                .iter()
                .map(|&t| line_angle_distance(t, p))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    r.push(
        "equilateral argmin chords are the three parallels",
        prof.argmin_thetas.len() == 3 && worst_angle <= 1e-6,
        worst_angle,
        0.0,
        1e-6,
        Provenance::Paper,
        &format!("{} argmin chords", prof.argmin_thetas.len()),
    );

    // 2. oracle against closed form
    let count = scale(1000, 100);
    let errs: Vec<f64> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let t = random_triangle(seed.wrapping_add(i));
            let closed = min_cut_centroid(&t);
            let e = embed(&t);
            let prof = sweep_min_perimeter(&e, centroid(&e), DEFAULT_SAMPLES)?;
            Ok((closed.w - prof.min_fraction * e.perimeter()).abs() / e.perimeter())
        })
        .collect::<Result<_>>()?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    r.check(
        format!("closed form = sweep oracle on {count} random triangles"),
        worst,
        0.0,
        1e-6,
        Provenance::Derived,
    );

    // 3. ordering and branches
    let count = scale(10_000, 1000);
    let mut worst_order = 0.0f64;
    let mut c_median = 0usize;
    for i in 0..count as u64 {
        let t = random_triangle(seed.wrapping_add(i));
        let v = vertex_cuts_centroid(&t);
        let tol = 1e-12 * t.perimeter();
        worst_order = worst_order.max(v.w_a - v.w_b - tol).max(v.w_b - v.w_c - tol);
        if v.branch_c == Branch::Median {
            c_median += 1;
        }
    }
    r.push(
        format!("w_A <= w_B <= w_C on {count} random triangles"),
        worst_order <= 0.0,
        worst_order.max(0.0),
        0.0,
        1e-12,
        Provenance::Paper,
        "",
    );
    r.check("w_C median branch count", c_median as f64, 0.0, 0.0, Provenance::Paper);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_branch = 0.0f64;
    for _ in 0..1000 {
        let c: f64 = 0.01 + rng.random::<f64>();
        let (below, bb) = w_a_branch(4.0 * c * (1.0 - 1e-14), c);
        let (above, ba) = w_a_branch(4.0 * c * (1.0 + 1e-14), c);
        debug_assert!(bb == Branch::Root && ba == Branch::Median);
        worst_branch = worst_branch.max((below - above).abs() / above);
    }
    r.check("w_A branches agree across b = 4c", worst_branch, 0.0, 1e-12, Provenance::Paper);

    // 4 + 12. scan, upper bound, determinism
    let config = ScanConfig {
        resolution,
        margin: 1e-3,
        seed,
        ..ScanConfig::default()
    };
    let scan = scan_region_with(config)?;
    let mut worst_margin = f64::INFINITY;
    let mut equality_outside_band = 0usize;
    for p in &scan.grid {
        let t = tri(p.a, p.b, p.c)?;
        let m = upper_bound_margin(&t);
        worst_margin = worst_margin.min(m / t.perimeter());
        if m < 1e-9 * t.perimeter() && t.a / t.c >= 1.0 + 1e-4 {
            equality_outside_band += 1;
        }
    }
    r.push(
        "upper bound margin >= 0 on the scan grid (relative to 2s)",
        worst_margin >= -1e-12,
        worst_margin,
        0.0,
        1e-12,
        Provenance::Paper,
        "",
    );
    r.check(
        "near-equality of 4/9 bound outside the equilateral band",
        equality_outside_band as f64,
        0.0,
        0.0,
        Provenance::Paper,
    );
    r.check(
        "scan max F is 4/9",
        scan.max_point.f,
        FOUR_NINTHS,
        2.0 / resolution as f64,
        Provenance::Paper,
    );
    r.check("scan oracle subsample agreement", scan.oracle_max_rel_err, 0.0, 1e-6, Provenance::Derived);
    let rerun = scan_region_with(config)?;
    let (mut csv1, mut csv2) = (Vec::new(), Vec::new());
    scan.write_csv(&mut csv1).map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    rerun.write_csv(&mut csv2).map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    r.push(
        "scan rerun is bit-identical",
        csv1 == csv2 && scan == rerun,
        (csv1 == csv2) as u8 as f64,
        1.0,
        0.0,
        Provenance::Trivial,
        "",
    );
    if scan.min_point.f < CLAIMED_INFIMUM {
        r.discrepancy(
            "scan min F below 3/10",
            "infimum of m over triangles is 3/10",
            CLAIMED_INFIMUM,
            scan.min_point.f,
            &format!(
                "margin {}: min at (c,b) = ({}, {}); {} of {} grid shapes below 3/10",
                fmt_num(config.margin),
                fmt_num(scan.min_point.c),
                fmt_num(scan.min_point.b),
                scan.below_claimed_bound.len(),
                scan.grid.len()
            ),
        );
    }

    // 5. corner table
    let corners = corner_values();
    for k in &corners {
        let (expected, prov) = match k.label {
            "(1/10,4/10)" => (0.3, Provenance::Paper),
            "(1/3,1/3)" => (FOUR_NINTHS, Provenance::Paper),
            "(0,1/2)" => (0.25, Provenance::Derived),
            _ => (1.0 / 3.0, Provenance::Derived),
        };
        r.check(
            format!("corner (c,b) = {} i.e. (b,c) = ({}, {})", k.label, fmt_num(k.b), fmt_num(k.c)),
            k.f,
            expected,
            1e-12,
            prov,
        );
    }
    let near = tri(0.4995, 0.4995, 0.001)?;
    let formula = shape_fraction(near.b / near.perimeter(), near.c / near.perimeter())?.0;
    let sweep = oracle_m(&near, DEFAULT_SAMPLES)?;
    r.check(
        "near-corner 0.4995/0.4995/0.001: formula vs sweep",
        formula,
        sweep,
        1e-6,
        Provenance::Derived,
    );
    let corner_min = corners.iter().map(|k| k.f).fold(f64::INFINITY, f64::min);
    r.discrepancy(
        "corner minimum vs claimed 3/10",
        "corner evaluations give a minimum of 3/10",
        CLAIMED_INFIMUM,
        corner_min,
        "corner (c,b) = (0,1/2) evaluates to 1/4 on the c + b/2 branch",
    );

    // 6. 8-8-1 audit
    let t881 = tri(8.0, 8.0, 1.0)?;
    let closed = min_cut_centroid(&t881).m;
    let sweep = oracle_m(&t881, DEFAULT_SAMPLES)?;
    r.check("8-8-1: closed form vs sweep", closed, sweep, 1e-9, Provenance::Derived);
    r.check("8-8-1: m = 5/17", closed, 5.0 / 17.0, 1e-12, Provenance::Derived);
    if closed < CLAIMED_INFIMUM {
        r.discrepancy(
            "8-8-1 below 3/10",
            "every triangle has m > 3/10",
            CLAIMED_INFIMUM,
            closed,
            "sides 8,8,1: w = c + b/2 = 5 of perimeter 17, confirmed by the sweep oracle",
        );
    }

    // 7. approach to 5-4-1
    let mut prev = f64::INFINITY;
    let mut ok = true;
    let mut worst = 0.0f64;
    for eps in [1e-2, 1e-3, 1e-4] {
        let m = min_cut_centroid(&tri(5.0, 4.0, 1.0 + eps)?).m;
        ok &= (m - 0.3).abs() <= 2.0 * eps && m < prev;
        worst = worst.max((m - 0.3).abs() / eps);
        prev = m;
    }
    r.push(
        "5-4-(1+eps): |m - 3/10| <= 2 eps, decreasing",
        ok,
        worst,
        0.0,
        2.0,
        Provenance::Paper,
        "measured is max |m - 3/10| / eps",
    );

    // 8. classical area bound
    let count = scale(100, 20);
    let area_errs: Vec<f64> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let t = random_triangle(seed.wrapping_add(i));
            let e = embed(&t);
            Ok((sweep_min_area(&e, centroid(&e), DEFAULT_SAMPLES)?.min_fraction - FOUR_NINTHS).abs())
        })
        .collect::<Result<_>>()?;
    r.check(
        format!("area fraction 4/9 at centroid, {count} random triangles"),
        area_errs.iter().copied().fold(0.0, f64::max),
        0.0,
        1e-6,
        Provenance::Paper,
    );

    // 9. W-line against the Lagrange oracle
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = 10.0 * (1.0 - rng.random::<f64>());
        let y = 10.0 * (1.0 - rng.random::<f64>());
        let w = wline_extreme(x, y)?;
        let (s, t) = lagrange_oracle(x, y, 10_000);
        worst = worst.max((s - w.s).abs() / w.s).max((t - w.t).abs() / w.t);
    }
    r.check("W-line = Lagrange oracle, 100 random (x,y)", worst, 0.0, 1e-8, Provenance::Paper);

    // 10. central symmetry
    let rect = make_polygon(vec![
        Point::new(0.0, 0.0),
        Point::new(2.0, 0.0),
        Point::new(2.0, 1.0),
        Point::new(0.0, 1.0),
    ])?;
    let hex = make_polygon((0..6).map(|i| Point::from_angle(PI * i as f64 / 3.0)).collect())?;
    for (name, poly) in [("rectangle 2x1", &rect), ("regular hexagon", &hex)] {
        let value = match is_centrally_symmetric(poly, 1e-12) {
            Some(center) => poly_min_fraction(poly, center, DEFAULT_SAMPLES)?.min_fraction,
            None => f64::NAN,
        };
        r.check(format!("{name}: fraction 1/2 at center"), value, 0.5, 1e-9, Provenance::Paper);
    }

    // 11. Neumann search
    let square = make_polygon(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])?;
    let starts = scale(8, 5);
    let samples = scale(720, 360);
    let res = neumann_search(&square, samples, starts, seed)?;
    r.check("Neumann search on unit square: value", res.value, 0.5, 1e-6, Provenance::Trivial);
    r.check(
        "Neumann search on unit square: distance to center",
        res.point.distance(Point::new(0.5, 0.5)),
        0.0,
        1e-6,
        Provenance::Trivial,
    );
    let polys: Vec<(&str, ConvexPolygon)> = vec![
        ("equilateral", make_polygon(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 3f64.sqrt() / 2.0)])?),
        ("8-8-1", {
            let e = embed(&t881);
            make_polygon(vec![e.b, e.c, e.a])?
        }),
        ("rectangle 2x1", rect.clone()),
        ("regular hexagon", hex.clone()),
    ];
    for (name, poly) in &polys {
        let res = neumann_search(poly, samples, starts, seed)?;
        let q_g = worst_line_fraction(poly, poly_centroid(poly), samples)?;
        r.push(
            format!("Neumann search on {name}: Q(centroid) <= value <= 1/2"),
            res.value >= q_g - 1e-9 && res.value <= 0.5 + 1e-12,
            res.value,
            q_g,
            1e-9,
            Provenance::Derived,
            "expected column is Q(centroid)",
        );
        r.info(
            format!("Neumann value on {name} vs (3-sqrt5)/2"),
            res.value,
            NEUMANN_PERIMETER_CONSTANT,
            Provenance::Paper,
            "reported only",
        );
    }

    Ok(VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        quick,
        scan_resolution: resolution,
        entries: r.entries,
        discrepancies: r.discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_verify_passes_with_discrepancies() {
        let rep = run_verify(0, true).unwrap();
        let failures: Vec<_> = rep.entries.iter().filter(|e| e.status == Status::Fail).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(rep.discrepancies.len() >= 2);
        assert!(rep.render_table().contains("DISCREPANCIES"));
    }
}
