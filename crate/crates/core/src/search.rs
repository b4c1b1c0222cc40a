//! One- and two-dimensional derivative-free minimizers.

use crate::geometry::Point;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any bracket by far more than f64 can resolve
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Outcome of a Nelder–Mead run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult {
    pub point: Point,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder–Mead minimization of `f` over the plane.
///
/// Stops when the simplex diameter drops below `xtol` or after `max_iter`
/// iterations. `f` may return `+∞` to mark infeasible points.
pub fn nelder_mead_2d(
    f: impl Fn(Point) -> f64,
    start: Point,
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> SimplexResult {
    let mut simplex = [start, start + Point::new(step, 0.0), start + Point::new(0.0, step)];
    let mut values = simplex.map(&f);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        // order best → worst; stable sort keeps ties deterministic
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        let diameter = simplex[0]
            .distance(simplex[1])
            .max(simplex[0].distance(simplex[2]))
            .max(simplex[1].distance(simplex[2]));
        if diameter < xtol {
            converged = true;
            break;
        }
        iterations += 1;

        let mid = (simplex[0] + simplex[1]) / 2.0;
        let reflected = mid + (mid - simplex[2]);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = mid + (mid - simplex[2]) * 2.0;
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (candidate, fc) = if fr < values[2] {
            let p = mid + (reflected - mid) * 0.5;
            (p, f(p))
        } else {
            let p = mid + (simplex[2] - mid) * 0.5;
            (p, f(p))
        };
        if fc < values[2].min(fr) {
            simplex[2] = candidate;
            values[2] = fc;
            continue;
        }
        // shrink toward the best vertex
        for k in 1..3 {
            simplex[k] = simplex[0] + (simplex[k] - simplex[0]) * 0.5;
            values[k] = f(simplex[k]);
        }
    }

    let best = (0..3)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap_or(0);
    SimplexResult {
        point: simplex[best],
        value: values[best],
        iterations,
        converged,
    }
}
