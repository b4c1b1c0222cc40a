//! Command-line front end. Results go to stdout as JSON (numbers rounded to
//! 12 significant digits), plot data to CSV files. Exit codes: 0 success,
//! 1 computation failure (JSON error on stderr), 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::closed_form::{min_cut_at_point, min_cut_centroid, upper_bound_margin, vertex_cuts_centroid, CLAIMED_INFIMUM};
use crate::convex_poly::{
    centroid_of, is_centrally_symmetric, neumann_search_with, poly_min_fraction, worst_line_fraction, CentroidKind,
    ConvexPolygon, NeumannConfig, NEUMANN_PERIMETER_CONSTANT,
};
use crate::error::Error;
use crate::geometry::Point;
use crate::oracle::{range_interval, sweep_min_area, sweep_min_perimeter, SweepProfile, DEFAULT_SAMPLES};
use crate::output::to_json_string;
use crate::shape_scan::{scan_region_with, ScanConfig};
use crate::triangle_core::{centroid, embed, make_triangle, Triangle};
use crate::verify::run_verify;
use crate::wline::{lagrange_oracle, wline_extreme};

/// Environment variable supplying the default seed.
pub const SEED_ENV: &str = "WINTERNITZ_SEED";

#[derive(Debug, Parser)]
#[command(name = "winternitz", version, about = "Shortest pieces cut by lines through a point of a triangle or convex polygon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal perimeter piece at the centroid (or a given point).
    Cut {
        /// Side lengths, any order: `a,b,c`.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        sides: [f64; 3],
        /// Interior point `x,y` in the canonical embedding (B at the origin, C on the positive x-axis).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
    },
    /// W-line extreme for oblique coordinates `(x, y)`, checked against the Lagrange oracle.
    Wline {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        /// Grid size of the Lagrange oracle.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Angular sweep of the smaller piece; writes `theta,piece_min_fraction`.
    Sweep {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        sides: [f64; 3],
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Sweep area fractions instead of perimeter fractions.
        #[arg(long)]
        area: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan of normalized shape space; writes `c,b,a,F,branch,flag`.
    Scan {
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-3)]
        margin: f64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the JSON summary to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Minimal perimeter piece through a point of a convex polygon.
    Polygon {
        /// JSON file `{"vertices": [[x, y], ...]}`.
        #[arg(long)]
        file: PathBuf,
        /// Defaults to the area centroid.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        /// Use the centroid of the boundary curve as the default point.
        #[arg(long)]
        perimeter_centroid: bool,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for the interior point maximizing the minimal piece.
    Neumann {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        starts: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// Recompute every quantitative claim and print a PASS/FAIL/DISCREPANCY table.
    Verify {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Reduced sample counts (well under a minute).
        #[arg(long)]
        quick: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = parse_floats(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

fn parse_point(s: &str) -> Result<Point, String> {
    let v = parse_floats(s, 2)?;
    Ok(Point::new(v[0], v[1]))
}

#[derive(Debug)]
enum Failure {
    Compute(Error),
    Io(String),
    /// Verification ran, but a check failed; the report is already printed.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Runs the tool on `args` (including the program name) with the process's
/// stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(f) => {
            let (kind, message) = match f {
                Failure::Compute(e) => (e.kind().to_string(), e.to_string()),
                Failure::Io(m) => ("Io".to_string(), m),
                Failure::Checks => unreachable!(),
            };
            let body = json!({ "error": { "kind": kind, "message": message } });
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&body).unwrap_or_default());
            1
        }
    }
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    writeln!(out, "{}", to_json_string(value)?)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn sides_json(t: &Triangle) -> Value {
    json!({
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "input_order": t.input_order,
        "perimeter": t.perimeter(),
        "near_degenerate": t.near_degenerate,
    })
}

fn profile_json(prof: &SweepProfile) -> Value {
    json!({
        "measure": prof.measure,
        "samples": prof.thetas.len(),
        "min_fraction": prof.min_fraction,
        "argmin_theta": prof.argmin_theta,
        "argmin_thetas": prof.argmin_thetas,
        "coarse_min_fraction": prof.coarse_min_fraction,
        "breakpoints": prof.breakpoints,
        "continuity_bound": prof.continuity_bound,
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Cut { sides, point } => cmd_cut(sides, point, out),
        Command::Wline { x, y, grid } => {
            let w = wline_extreme(x, y)?;
            let (s, t) = lagrange_oracle(x, y, grid);
            emit(
                out,
                &json!({
                    "x": x,
                    "y": y,
                    "s": w.s,
                    "t": w.t,
                    "cut": w.cut,
                    "oracle": { "s": s, "t": t, "rel_err": ((s - w.s).abs() / w.s).max((t - w.t).abs() / w.t) },
                }),
            )
        }
        Command::Sweep {
            sides,
            point,
            samples,
            area,
            out: path,
        } => {
            let t = make_triangle(sides[0], sides[1], sides[2])?;
            let e = embed(&t);
            let p = point.unwrap_or_else(|| centroid(&e));
            e.boundary().require_interior(p)?;
            let prof = if area {
                sweep_min_area(&e, p, samples)?
            } else {
                sweep_min_perimeter(&e, p, samples)?
            };
            let range = range_interval(&prof)?;
            let mut f = create(&path)?;
            prof.write_csv(&mut f)?;
            f.flush()?;
            let mut v = profile_json(&prof);
            v["sides"] = sides_json(&t);
            v["point"] = json!(p);
            v["range"] = json!([range.0, range.1]);
            v["csv"] = json!(path.display().to_string());
            emit(out, &v)
        }
        Command::Scan {
            resolution,
            margin,
            seed,
            out: path,
            summary,
        } => {
            let report = scan_region_with(ScanConfig {
                resolution,
                margin,
                seed,
                ..ScanConfig::default()
            })?;
            let mut f = create(&path)?;
            report.write_csv(&mut f)?;
            f.flush()?;
            let text = to_json_string(&report.summary())?;
            if let Some(sp) = summary {
                let mut f = create(&sp)?;
                writeln!(f, "{text}")?;
                f.flush()?;
            }
            writeln!(out, "{text}")?;
            Ok(())
        }
        Command::Polygon {
            file,
            point,
            perimeter_centroid,
            samples,
            out: path,
        } => {
            let poly = ConvexPolygon::from_json_file(&file)?;
            let kind = if perimeter_centroid {
                CentroidKind::Perimeter
            } else {
                CentroidKind::Area
            };
            let p = point.unwrap_or_else(|| centroid_of(&poly, kind));
            let prof = poly_min_fraction(&poly, p, samples)?;
            if let Some(path) = &path {
                let mut f = create(path)?;
                prof.write_csv(&mut f)?;
                f.flush()?;
            }
            let mut v = profile_json(&prof);
            v["vertices"] = json!(poly.vertices());
            v["perimeter"] = json!(poly.perimeter());
            v["area"] = json!(poly.area());
            v["point"] = json!(p);
            v["point_source"] = json!(match (point, kind) {
                (Some(_), _) => "given",
                (None, CentroidKind::Area) => "area_centroid",
                (None, CentroidKind::Perimeter) => "perimeter_centroid",
            });
            v["symmetry_center"] = json!(is_centrally_symmetric(&poly, 1e-12));
            emit(out, &v)
        }
        Command::Neumann {
            file,
            starts,
            seed,
            samples,
        } => {
            let poly = ConvexPolygon::from_json_file(&file)?;
            let res = neumann_search_with(
                &poly,
                NeumannConfig {
                    samples,
                    starts,
                    seed,
                    ..NeumannConfig::default()
                },
            )?;
            let g = centroid_of(&poly, CentroidKind::Area);
            let q_g = worst_line_fraction(&poly, g, samples)?;
            emit(
                out,
                &json!({
                    "result": res,
                    "centroid": g,
                    "centroid_value": q_g,
                    "reference_constant": NEUMANN_PERIMETER_CONSTANT,
                    "value_minus_reference": res.value - NEUMANN_PERIMETER_CONSTANT,
                }),
            )
        }
        Command::Verify { seed, quick, json } => {
            let report = run_verify(seed, quick)?;
            write!(out, "{}", report.render_table())?;
            if let Some(path) = json {
                let mut f = create(&path)?;
                writeln!(f, "{}", to_json_string(&report)?)?;
                f.flush()?;
            }
            if report.failed() {
                Err(Failure::Checks)
            } else {
                Ok(())
            }
        }
    }
}

fn cmd_cut(sides: [f64; 3], point: Option<Point>, out: &mut dyn Write) -> Result<(), Failure> {
    let t = make_triangle(sides[0], sides[1], sides[2])?;
    let e = embed(&t);
    let g = centroid(&e);
    let mut v = json!({ "sides": sides_json(&t) });
    let (res, p) = match point {
        None => {
            v["vertex_cuts"] = json!(vertex_cuts_centroid(&t));
            v["upper_bound_margin"] = json!(upper_bound_margin(&t));
            (min_cut_centroid(&t), g)
        }
        Some(p) => {
            e.boundary().require_interior(p)?;
            (min_cut_at_point(&e, p)?, p)
        }
    };
    v["point"] = json!(p);
    v["at_centroid"] = json!(point.is_none());
    v["w"] = json!(res.w);
    v["m"] = json!(res.m);
    v["achieving_vertex"] = json!(res.achieving_vertex.to_string());
    v["classification"] = json!(res.classification);
    v["chord"] = json!(res.chord);
    let oracle = sweep_min_perimeter(&e, p, DEFAULT_SAMPLES)?;
    v["oracle"] = json!({
        "m": oracle.min_fraction,
        "argmin_thetas": oracle.argmin_thetas,
        "abs_diff": (oracle.min_fraction - res.m).abs(),
    });
    if point.is_none() && res.m < CLAIMED_INFIMUM {
        v["discrepancy"] = json!({
            "claimed_infimum": CLAIMED_INFIMUM,
            "note": format!(
                "m = {} is below the claimed lower bound 3/10 for the centroid; confirmed by the sweep oracle",
                crate::output::fmt_num(res.m)
            ),
        });
    }
    emit(out, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["winternitz"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn parses_lists() {
        assert_eq!(parse_triple("3, 4,5").unwrap(), [3.0, 4.0, 5.0]);
        assert!(parse_triple("3,4").is_err());
        assert_eq!(parse_point("0.5,-1").unwrap(), Point::new(0.5, -1.0));
    }

    #[test]
    fn usage_error_exits_2() {
        assert_eq!(run_capture(&["cut"]).0, 2);
        assert_eq!(run_capture(&["cut", "--sides", "1,2"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
    }

    #[test]
    fn computation_error_exits_1_with_json() {
        let (code, _, err) = run_capture(&["cut", "--sides", "1,2,5"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["kind"], "TriangleInequalityViolated");
    }

    #[test]
    fn cut_reports_discrepancy_for_881() {
        let (code, out, _) = run_capture(&["cut", "--sides", "1,8,8"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["m"].as_f64().unwrap() - 5.0 / 17.0).abs() < 1e-11);
        assert_eq!(v["sides"]["a"], 8.0);
        assert_eq!(v["sides"]["c"], 1.0);
        assert!(v.get("discrepancy").is_some());
    }

    #[test]
    fn wline_output() {
        let (code, out, _) = run_capture(&["wline", "--x", "1", "--y", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cut"], 9.0);
        assert!(v["oracle"]["rel_err"].as_f64().unwrap() < 1e-8);
    }
}
