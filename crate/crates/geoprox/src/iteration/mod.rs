//! The two iteration schemes: cyclic inexact iteration over finitely many
//! mappings, and the two-operator alternating scheme, with error
//! schedules, stopping rules and trace recording.
//!
//! A cyclic run produces `x_{n+1}` within `eps_n` of `T_{(n mod r)+1}(x_n)`;
//! the displacement is applied with magnitude exactly `eps_n` in a
//! deterministic pseudo-random direction (the adversarial realization of
//! the inexactness relation). An alternating run interleaves two mappings,
//! `y_n` near `T_1(x_n)` and `x_{n+1}` near `T_2(y_n)`, with separate
//! schedules for the two half-steps.

mod schedule;
mod trace;

pub use schedule::ErrorSchedule;
pub use trace::{IterationTrace, Termination};

use crate::error::{Error, Result};
use crate::geometry::{self, distance, Point};
use crate::operators::Mapping;

/// Cyclic iteration over `r >= 1` mappings.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicProblem {
    pub mappings: Vec<Mapping>,
    pub start: Point,
    pub errors: ErrorSchedule,
    pub max_steps: usize,
    /// A step counts as converged when below this; `r` consecutive such
    /// steps stop the run (a single small intra-cycle step is not enough).
    pub stop_tol: f64,
    pub escape_radius: f64,
    pub seed: u64,
    /// Optional reference point for the Fejér-distance column.
    pub reference: Option<Point>,
    /// Keep every `thin`-th iterate (scalar columns stay complete).
    pub thin: usize,
}

impl CyclicProblem {
    pub fn new(mappings: Vec<Mapping>, start: Point) -> CyclicProblem {
        CyclicProblem {
            mappings,
            start,
            errors: ErrorSchedule::Zero,
            max_steps: 10_000,
            stop_tol: 1e-10,
            escape_radius: 50.0,
            seed: 0,
            reference: None,
            thin: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.mappings.is_empty() {
            return Err(Error::domain("cyclic problem needs at least one mapping"));
        }
        for m in &self.mappings {
            if *m.space() != *self.start.space() {
                return Err(Error::mismatch("mapping space differs from the start point's"));
            }
        }
        if let Some(q) = &self.reference {
            if *q.space() != *self.start.space() {
                return Err(Error::mismatch("reference point lives in a different space"));
            }
        }
        if self.thin == 0 {
            return Err(Error::domain("thinning factor must be at least 1"));
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }
}

/// Two-mapping alternating iteration with separate half-step schedules.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingProblem {
    pub t1: Mapping,
    pub t2: Mapping,
    pub start: Point,
    pub eps: ErrorSchedule,
    pub delta: ErrorSchedule,
    pub max_steps: usize,
    pub stop_tol: f64,
    pub escape_radius: f64,
    pub seed: u64,
    pub reference: Option<Point>,
    pub thin: usize,
}

impl AlternatingProblem {
    pub fn new(t1: Mapping, t2: Mapping, start: Point) -> AlternatingProblem {
        AlternatingProblem {
            t1,
            t2,
            start,
            eps: ErrorSchedule::Zero,
            delta: ErrorSchedule::Zero,
            max_steps: 10_000,
            stop_tol: 1e-10,
            escape_radius: 50.0,
            seed: 0,
            reference: None,
            thin: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if *self.t1.space() != *self.start.space() || *self.t2.space() != *self.start.space() {
            return Err(Error::mismatch("mapping space differs from the start point's"));
        }
        if let Some(q) = &self.reference {
            if *q.space() != *self.start.space() {
                return Err(Error::mismatch("reference point lives in a different space"));
            }
        }
        if self.thin == 0 {
            return Err(Error::domain("thinning factor must be at least 1"));
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }
}

struct Recorder<'a> {
    mappings: Vec<&'a Mapping>,
    reference: Option<&'a Point>,
    thin: usize,
    points: Vec<Point>,
    point_indices: Vec<usize>,
    residuals: Vec<Vec<f64>>,
    fejer: Option<Vec<f64>>,
}

impl<'a> Recorder<'a> {
    fn new(mappings: Vec<&'a Mapping>, reference: Option<&'a Point>, thin: usize) -> Self {
        Recorder {
            residuals: vec![Vec::new(); mappings.len()],
            fejer: reference.map(|_| Vec::new()),
            mappings,
            reference,
            thin,
            points: Vec::new(),
            point_indices: Vec::new(),
        }
    }

    fn observe(&mut self, n: usize, x: &Point) -> Result<()> {
        if n % self.thin == 0 {
            self.points.push(x.clone());
            self.point_indices.push(n);
        }
        for (col, m) in self.residuals.iter_mut().zip(&self.mappings) {
            col.push(distance(x, &m.apply(x)?)?);
        }
        if let (Some(f), Some(q)) = (self.fejer.as_mut(), self.reference) {
            f.push(distance(x, q)?);
        }
        Ok(())
    }

    fn seal(&mut self, n: usize, x: &Point) {
        if self.point_indices.last() != Some(&n) {
            self.points.push(x.clone());
            self.point_indices.push(n);
        }
    }
}

/// Runs the cyclic scheme, recording steps, residuals and optional Fejér
/// distances. Terminates when `r` consecutive steps fall below
/// `stop_tol`, when the iterate escapes, or at the step budget.
pub fn run_cyclic(problem: &CyclicProblem) -> Result<IterationTrace> {
    problem.validate()?;
    let r = problem.mappings.len();
    let mut rec = Recorder::new(
        problem.mappings.iter().collect(),
        problem.reference.as_ref(),
        problem.thin,
    );
    let mut steps = Vec::new();
    let mut x = problem.start.clone();
    rec.observe(0, &x)?;

    let mut exact = true;
    let mut consecutive_small = 0usize;
    let mut termination = Termination::MaxSteps;
    for n in 0..problem.max_steps {
        let mapped = problem.mappings[n % r].apply(&x)?;
        let eps = problem.errors.value(n);
        let next = if eps > 0.0 {
            exact = false;
            geometry::displace(&mapped, eps, problem.seed, n as u64)?
        } else {
            mapped
        };
        let step = distance(&x, &next)?;
        steps.push(step);
        x = next;
        rec.observe(n + 1, &x)?;

        if step < problem.stop_tol {
            consecutive_small += 1;
        } else {
            consecutive_small = 0;
        }
        if consecutive_small >= r {
            termination = Termination::StepTol;
            break;
        }
        let spread = distance(&problem.start, &x)?;
        if spread > problem.escape_radius {
            termination = Termination::Escaped(spread);
            break;
        }
    }
    rec.seal(steps.len(), &x);
    Ok(IterationTrace {
        points: rec.points,
        point_indices: rec.point_indices,
        ys: None,
        steps,
        y_steps: None,
        residuals: rec.residuals,
        fejer: rec.fejer,
        termination,
        exact,
    })
}

/// Runs the alternating scheme. Escape detection is always on: when the
/// fixed-point set of the composition is empty the iterates are unbounded,
/// and crossing the escape radius is the detectable signature of that
/// regime.
pub fn run_alternating(problem: &AlternatingProblem) -> Result<IterationTrace> {
    problem.validate()?;
    let mut rec = Recorder::new(
        vec![&problem.t1, &problem.t2],
        problem.reference.as_ref(),
        problem.thin,
    );
    let mut steps = Vec::new();
    let mut y_steps = Vec::new();
    let mut ys: Vec<Point> = Vec::new();
    let mut x = problem.start.clone();
    rec.observe(0, &x)?;

    let mut exact = true;
    let mut prev_y: Option<(usize, Point)> = None;
    let mut last_stored_y = usize::MAX;
    let mut consecutive_small = 0usize;
    let mut termination = Termination::MaxSteps;
    for n in 0..problem.max_steps {
        let eps = problem.eps.value(n);
        let mut y = problem.t1.apply(&x)?;
        if eps > 0.0 {
            exact = false;
            y = geometry::displace(&y, eps, problem.seed, 2 * n as u64)?;
        }
        let delta = problem.delta.value(n);
        let mut next = problem.t2.apply(&y)?;
        if delta > 0.0 {
            exact = false;
            next = geometry::displace(&next, delta, problem.seed, 2 * n as u64 + 1)?;
        }

        if let Some((_, py)) = &prev_y {
            y_steps.push(distance(py, &y)?);
        }
        if n % problem.thin == 0 {
            ys.push(y.clone());
            last_stored_y = n;
        }
        prev_y = Some((n, y));

        let step = distance(&x, &next)?;
        steps.push(step);
        x = next;
        rec.observe(n + 1, &x)?;

        if step < problem.stop_tol {
            consecutive_small += 1;
        } else {
            consecutive_small = 0;
        }
        if consecutive_small >= 2 {
            termination = Termination::StepTol;
            break;
        }
        let spread = distance(&problem.start, &x)?;
        if spread > problem.escape_radius {
            termination = Termination::Escaped(spread);
            break;
        }
    }
    if let Some((n, py)) = prev_y {
        if last_stored_y != n {
            ys.push(py);
        }
    }
    rec.seal(steps.len(), &x);
    Ok(IterationTrace {
        points: rec.points,
        point_indices: rec.point_indices,
        ys: Some(ys),
        steps,
        y_steps: Some(y_steps),
        residuals: rec.residuals,
        fejer: rec.fejer,
        termination,
        exact,
    })
}
