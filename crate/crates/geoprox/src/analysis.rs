//! Post-hoc trace analysis: the coupled minimization objective, an
//! asymptotic-center estimator for converged tails, three-regime
//! classification of alternating runs, and solution-pair checks.

use crate::error::{Error, Result};
use crate::geometry::{distance, geodesic_point, Point};
use crate::iteration::{IterationTrace, Termination};
use crate::operators::{argmin_over_space, resolve, FunctionSpec};
use crate::sets::ConvexSet;

/// The coupled two-block minimization problem: minimize
/// `f(x) + g(y) + d(x,y)^2 / (2 lambda)` over pairs `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinProblem {
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    pub lambda: f64,
    /// Optional certified lower bound on the objective.
    pub lower_bound: Option<f64>,
}

impl MinProblem {
    pub fn new(f: FunctionSpec, g: FunctionSpec, lambda: f64) -> Result<MinProblem> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain("coupling step lambda must be positive"));
        }
        if *f.space() != *g.space() {
            return Err(Error::mismatch("the two functions live in different spaces"));
        }
        Ok(MinProblem { f, g, lambda, lower_bound: None })
    }
}

/// Objective value; +inf exactly when an indicator constraint is violated.
pub fn phi(prob: &MinProblem, x: &Point, y: &Point) -> Result<f64> {
    let fx = prob.f.eval(x)?;
    if fx.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let gy = prob.g.eval(y)?;
    if gy.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(fx + gy + distance(x, y)?.powi(2) / (2.0 * prob.lambda))
}

/// Checks whether `x_star` is fixed by the composed resolvents
/// `J_lambda^f (J_lambda^g (.))` to within `tol`; if so, the pair
/// `(x_star, J_lambda^g(x_star))` solves the coupled problem and is
/// returned.
pub fn check_solution_pair(
    prob: &MinProblem,
    x_star: &Point,
    tol: f64,
) -> Result<Option<(Point, Point)>> {
    let y = resolve(&prob.g, prob.lambda, x_star)?;
    let back = resolve(&prob.f, prob.lambda, &y)?;
    if distance(x_star, &back)? <= tol {
        Ok(Some((x_star.clone(), y)))
    } else {
        Ok(None)
    }
}

/// Tail diameter past this value is treated as divergence.
const TAIL_ESCAPE_RADIUS: f64 = 50.0;

/// Estimates the asymptotic center of a bounded tail: approximately
/// minimizes `y -> max_n d(y, x_n)` by repeatedly stepping toward the
/// farthest tail point, then polishing with a derivative-free local
/// refinement. Returns the center and the achieved max-distance radius.
pub fn asymptotic_center_estimate(tail: &[Point], search_tol: f64) -> Result<(Point, f64)> {
    if tail.is_empty() {
        return Err(Error::domain("empty tail"));
    }
    let space = tail[0].space().clone();
    for p in tail {
        if *p.space() != space {
            return Err(Error::mismatch("tail points live in different spaces"));
        }
    }
    let mut diameter = 0.0f64;
    for (i, p) in tail.iter().enumerate() {
        for q in &tail[i + 1..] {
            diameter = diameter.max(distance(p, q)?);
        }
    }
    if diameter > TAIL_ESCAPE_RADIUS {
        return Err(Error::Diverged(format!(
            "tail diameter {diameter} exceeds the escape radius {TAIL_ESCAPE_RADIUS}"
        )));
    }

    let radius_at = |y: &Point| -> f64 {
        tail.iter().map(|p| distance(y, p).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    };
    let farthest = |y: &Point| -> &Point {
        tail.iter()
            .max_by(|a, b| {
                distance(y, a).unwrap_or(0.0).total_cmp(&distance(y, b).unwrap_or(0.0))
            })
            .expect("tail is nonempty")
    };

    // Step toward the farthest point with harmonically decaying weights.
    let mut center = tail[tail.len() - 1].clone();
    for k in 0..96usize {
        let w = farthest(&center);
        center = geodesic_point(&center, w, 1.0 / (k + 2) as f64)?;
    }
    // Local refinement of the minimax objective around the incumbent.
    let polished = argmin_over_space(&space, &|y| radius_at(y), &center, search_tol)?;
    if radius_at(&polished) < radius_at(&center) {
        center = polished;
    }
    let radius = radius_at(&center);
    Ok((center, radius))
}

/// The three observable outcomes of an alternating projection run.
#[derive(Debug, Clone)]
pub enum Regime {
    /// The two sets meet; the run converged into the intersection.
    CommonFixedPoint,
    /// The sets are disjoint but a nearest pair exists; the run converged
    /// to it.
    BestApproximationPair { pair: (Point, Point), value: f64 },
    /// No nearest pair exists; the iterates are unbounded.
    Divergent,
}

/// Classification of a trace together with the measurements it rests on.
#[derive(Debug, Clone)]
pub struct RegimeVerdict {
    pub regime: Regime,
    pub evidence: Evidence,
}

#[derive(Debug, Clone)]
pub struct Evidence {
    pub final_step: Option<f64>,
    /// Distance from the start point to the final iterate.
    pub spread: f64,
    /// Final residual per mapping.
    pub final_residuals: Vec<f64>,
    /// Final gap `d(x_n, y_n)` when the trace has a companion sequence.
    pub pair_gap: Option<f64>,
    /// Distances of the final iterate to the two sets.
    pub dist_to_sets: (f64, f64),
}

/// Classifies an alternating-projections trace over sets `a` and `b`:
/// escape means divergence; convergence splits on whether the final pair
/// gap is below `tol`. A budget-exhausted run without convergence is
/// inconclusive (an error, not a verdict).
pub fn classify_alternating(
    trace: &IterationTrace,
    a: &ConvexSet,
    b: &ConvexSet,
    tol: f64,
) -> Result<RegimeVerdict> {
    let ys = trace
        .ys
        .as_ref()
        .ok_or_else(|| Error::domain("trace has no companion sequence; run the alternating scheme"))?;
    let x = trace.final_point();
    let y = ys.last();
    let spread = distance(&trace.points[0], x)?;
    let evidence = Evidence {
        final_step: trace.final_step(),
        spread,
        final_residuals: trace.residuals.iter().filter_map(|c| c.last().copied()).collect(),
        pair_gap: y.map(|y| distance(x, y)).transpose()?,
        dist_to_sets: (a.dist_to_point(x)?, b.dist_to_point(x)?),
    };
    let regime = match trace.termination {
        Termination::Escaped(_) => Regime::Divergent,
        Termination::StepTol => {
            let y = y.ok_or_else(|| Error::domain("empty companion sequence"))?;
            let gap = evidence.pair_gap.expect("computed above");
            if gap <= tol {
                Regime::CommonFixedPoint
            } else {
                Regime::BestApproximationPair { pair: (x.clone(), y.clone()), value: gap }
            }
        }
        Termination::MaxSteps => {
            return Err(Error::Inconclusive(format!(
                "run exhausted its budget without converging (final step {:?})",
                trace.final_step()
            )))
        }
    };
    Ok(RegimeVerdict { regime, evidence })
}
