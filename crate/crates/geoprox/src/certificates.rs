//! Explicit asymptotic-regularity rate bounds and their validation against
//! recorded traces.
//!
//! The bounds are a-priori indices: past them, consecutive-iterate steps
//! (and past the companion bound, per-mapping residuals) are guaranteed to
//! sit below the requested `eps` for exact runs driven by firmly
//! nonexpansive mappings with a common fixed point. The square brackets in
//! the formulas are floors; results saturate at `u64::MAX` instead of
//! overflowing.

use crate::analysis::{phi, MinProblem};
use crate::error::{Error, Result};
use crate::geometry::{distance, Point};
use crate::iteration::{IterationTrace, Termination};
use crate::operators::resolve;

// Floor with a relative upward nudge: decimal inputs whose exact value
// lands on an integer otherwise floor one too low (0.1^2 > 1/100 in
// binary). Nudging up can only increase a bound, which keeps it valid.
fn floor_u64(x: f64) -> u64 {
    if !(x >= 0.0) {
        0
    } else if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        (x + x * 1e-12 + 1e-12).floor() as u64
    }
}

fn check_common(eps: f64, b: f64, c: f64, p: f64) -> Result<()> {
    if !(eps > 0.0) || !(b > 0.0) || !(c > 0.0) || !(p > 1.0) {
        return Err(Error::domain(
            "rate inputs need eps > 0, b > 0, c > 0 and exponent p > 1",
        ));
    }
    Ok(())
}

/// Step-size bound for the exact two-mapping cycle:
/// `2 [ (2/c) (4 p b^p / (c eps^p))^p ]` when `eps < 2b`, zero otherwise.
pub fn theta2(eps: f64, b: f64, c: f64, p: f64) -> Result<u64> {
    check_common(eps, b, c, p)?;
    if eps >= 2.0 * b {
        return Ok(0);
    }
    let inner = (2.0 / c) * ((4.0 * p * b.powf(p)) / (c * eps.powf(p))).powf(p);
    Ok(floor_u64(inner).saturating_mul(2))
}

/// Residual bound companion of [`theta2`]: one more step.
pub fn theta_tilde2(eps: f64, b: f64, c: f64, p: f64) -> Result<u64> {
    Ok(theta2(eps, b, c, p)?.saturating_add(1))
}

/// Step-size bound for the exact `r`-mapping cycle:
/// `r [ (2/c) (2 r p b^p / (c eps^p))^p ]` when `eps < 2b`, zero otherwise.
/// Reduces to [`theta2`] at `r = 2`.
pub fn theta_r(eps: f64, b: f64, c: f64, p: f64, r: u32) -> Result<u64> {
    check_common(eps, b, c, p)?;
    if r < 1 {
        return Err(Error::domain("cycle length r must be at least 1"));
    }
    if eps >= 2.0 * b {
        return Ok(0);
    }
    let inner = (2.0 / c) * ((2.0 * r as f64 * p * b.powf(p)) / (c * eps.powf(p))).powf(p);
    Ok(floor_u64(inner).saturating_mul(r as u64))
}

/// Residual bound companion of [`theta_r`]:
/// `[r/2] + theta2(eps / (2 ceil(r/2) - 1), b, c, p)`.
pub fn theta_tilde_r(eps: f64, b: f64, c: f64, p: f64, r: u32) -> Result<u64> {
    check_common(eps, b, c, p)?;
    if r < 1 {
        return Err(Error::domain("cycle length r must be at least 1"));
    }
    let scaled = eps / (2.0 * ((r as f64) / 2.0).ceil() - 1.0);
    Ok((r as u64 / 2).saturating_add(theta2(scaled, b, c, p)?))
}

/// Step-size bound for exact alternating resolvents on an objective
/// bounded below by `m` with initial value bound `b`:
/// `[2 lambda (b - m) / eps^2] + 1`.
pub fn theta_min(eps: f64, b: f64, m: f64, lambda: f64) -> Result<u64> {
    if !(eps > 0.0) || !(lambda > 0.0) || !(b >= m) {
        return Err(Error::domain(
            "rate inputs need eps > 0, lambda > 0 and b >= m",
        ));
    }
    Ok(floor_u64(2.0 * lambda * (b - m) / (eps * eps)).saturating_add(1))
}

/// A rate bound bundled with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub enum CertKind {
    /// Steps of a two-mapping cycle (residuals from the bound + 1 on).
    Theta2 { eps: f64, b: f64, c: f64, p: f64 },
    /// Residuals only, two-mapping cycle.
    ThetaTilde2 { eps: f64, b: f64, c: f64, p: f64 },
    /// Steps of an `r`-mapping cycle (residuals from the companion bound).
    ThetaR { eps: f64, b: f64, c: f64, p: f64, r: u32 },
    /// Residuals only, `r`-mapping cycle.
    ThetaTildeR { eps: f64, b: f64, c: f64, p: f64, r: u32 },
    /// Alternating resolvents: steps, plus objective values when a
    /// solution pair is supplied.
    ThetaMin { eps: f64, b: f64, m: f64, lambda: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateCertificate {
    pub kind: CertKind,
    pub bound: u64,
}

impl RateCertificate {
    pub fn theta2(eps: f64, b: f64, c: f64, p: f64) -> Result<RateCertificate> {
        Ok(RateCertificate { kind: CertKind::Theta2 { eps, b, c, p }, bound: theta2(eps, b, c, p)? })
    }

    pub fn theta_tilde2(eps: f64, b: f64, c: f64, p: f64) -> Result<RateCertificate> {
        Ok(RateCertificate {
            kind: CertKind::ThetaTilde2 { eps, b, c, p },
            bound: theta_tilde2(eps, b, c, p)?,
        })
    }

    pub fn theta_r(eps: f64, b: f64, c: f64, p: f64, r: u32) -> Result<RateCertificate> {
        Ok(RateCertificate {
            kind: CertKind::ThetaR { eps, b, c, p, r },
            bound: theta_r(eps, b, c, p, r)?,
        })
    }

    pub fn theta_tilde_r(eps: f64, b: f64, c: f64, p: f64, r: u32) -> Result<RateCertificate> {
        Ok(RateCertificate {
            kind: CertKind::ThetaTildeR { eps, b, c, p, r },
            bound: theta_tilde_r(eps, b, c, p, r)?,
        })
    }

    pub fn theta_min(eps: f64, b: f64, m: f64, lambda: f64) -> Result<RateCertificate> {
        Ok(RateCertificate {
            kind: CertKind::ThetaMin { eps, b, m, lambda },
            bound: theta_min(eps, b, m, lambda)?,
        })
    }

    pub fn eps(&self) -> f64 {
        match self.kind {
            CertKind::Theta2 { eps, .. }
            | CertKind::ThetaTilde2 { eps, .. }
            | CertKind::ThetaR { eps, .. }
            | CertKind::ThetaTildeR { eps, .. }
            | CertKind::ThetaMin { eps, .. } => eps,
        }
    }
}

/// What the certificate's `b` hypothesis is checked against.
pub enum CertContext<'a> {
    /// A common fixed point `u` with `d(x_0, u) <= b`.
    FixedPoint(&'a Point),
    /// The coupled minimization problem behind an alternating-resolvent
    /// run; a known solution pair enables the objective-value check.
    Minimization { prob: &'a MinProblem, solution: Option<(&'a Point, &'a Point)> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertVerdict {
    Holds,
    Violated,
    /// The trace is too short to reach the bound and did not converge.
    Inconclusive,
}

/// Validation outcome: where checking started, what failed first, and a
/// human-readable account.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub verdict: CertVerdict,
    pub first_violation: Option<usize>,
    pub checked_from: u64,
    pub detail: String,
}

impl CertReport {
    pub fn holds(&self) -> bool {
        self.verdict == CertVerdict::Holds
    }
}

fn check_column(
    values: &[f64],
    from: u64,
    eps: f64,
    what: &str,
    stop_tol_ok: bool,
) -> CertReport {
    let n = values.len() as u64;
    if from >= n {
        if stop_tol_ok {
            return CertReport {
                verdict: CertVerdict::Holds,
                first_violation: None,
                checked_from: from,
                detail: format!("{what}: run converged before index {from}"),
            };
        }
        return CertReport {
            verdict: CertVerdict::Inconclusive,
            first_violation: None,
            checked_from: from,
            detail: format!("{what}: trace has only {n} entries, bound is {from}"),
        };
    }
    for (i, &v) in values.iter().enumerate().skip(from as usize) {
        if v > eps {
            return CertReport {
                verdict: CertVerdict::Violated,
                first_violation: Some(i),
                checked_from: from,
                detail: format!("{what}: value {v} at index {i} exceeds eps = {eps}"),
            };
        }
    }
    CertReport {
        verdict: CertVerdict::Holds,
        first_violation: None,
        checked_from: from,
        detail: format!("{what}: checked indices {from}..{n}"),
    }
}

fn merge(reports: Vec<CertReport>) -> CertReport {
    let mut out: Option<CertReport> = None;
    for r in reports {
        out = Some(match out {
            None => r,
            Some(acc) => {
                let worse = |v: CertVerdict| match v {
                    CertVerdict::Violated => 2,
                    CertVerdict::Inconclusive => 1,
                    CertVerdict::Holds => 0,
                };
                if worse(r.verdict) > worse(acc.verdict) {
                    CertReport { detail: format!("{}; {}", acc.detail, r.detail), ..r }
                } else {
                    CertReport { detail: format!("{}; {}", acc.detail, r.detail), ..acc }
                }
            }
        });
    }
    out.expect("at least one report")
}

/// Validates a certificate against a trace.
///
/// Cycle certificates require an exact (zero-error) trace and a fixed
/// point certifying `d(x_0, u) <= b`; they check steps from the bound and
/// residual columns from the companion bound. The minimization
/// certificate checks both step sequences from its bound and, when a
/// solution pair is supplied, objective values `Phi(x_n, y_n)` from
/// `1 + theta_min(eps * lambda / d(x_0, x*), b, m, lambda)`.
pub fn validate_certificate(
    cert: &RateCertificate,
    trace: &IterationTrace,
    ctx: &CertContext,
) -> Result<CertReport> {
    let converged = trace.termination == Termination::StepTol;
    match (&cert.kind, ctx) {
        (CertKind::Theta2 { eps, b, c, p }, CertContext::FixedPoint(u)) => {
            require_exact(trace)?;
            require_b(trace, u, *b)?;
            let steps = check_column(&trace.steps, cert.bound, *eps, "steps", converged);
            let til = theta_tilde2(*eps, *b, *c, *p)?;
            let mut parts = vec![steps];
            for (i, col) in trace.residuals.iter().enumerate() {
                parts.push(check_column(col, til, *eps, &format!("residual {}", i + 1), converged));
            }
            Ok(merge(parts))
        }
        (CertKind::ThetaTilde2 { eps, .. }, CertContext::FixedPoint(u)) => {
            require_exact(trace)?;
            require_b(trace, u, b_of(cert))?;
            let mut parts = Vec::new();
            for (i, col) in trace.residuals.iter().enumerate() {
                parts.push(check_column(
                    col,
                    cert.bound,
                    *eps,
                    &format!("residual {}", i + 1),
                    converged,
                ));
            }
            Ok(merge(parts))
        }
        (CertKind::ThetaR { eps, b, c, p, r }, CertContext::FixedPoint(u)) => {
            require_exact(trace)?;
            require_b(trace, u, *b)?;
            let steps = check_column(&trace.steps, cert.bound, *eps, "steps", converged);
            let til = theta_tilde_r(*eps, *b, *c, *p, *r)?;
            let mut parts = vec![steps];
            for (i, col) in trace.residuals.iter().enumerate() {
                parts.push(check_column(col, til, *eps, &format!("residual {}", i + 1), converged));
            }
            Ok(merge(parts))
        }
        (CertKind::ThetaTildeR { eps, .. }, CertContext::FixedPoint(u)) => {
            require_exact(trace)?;
            require_b(trace, u, b_of(cert))?;
            let mut parts = Vec::new();
            for (i, col) in trace.residuals.iter().enumerate() {
                parts.push(check_column(
                    col,
                    cert.bound,
                    *eps,
                    &format!("residual {}", i + 1),
                    converged,
                ));
            }
            Ok(merge(parts))
        }
        (
            CertKind::ThetaMin { eps, b, m, lambda },
            CertContext::Minimization { prob, solution },
        ) => {
            require_exact(trace)?;
            if (prob.lambda - lambda).abs() > 1e-12 {
                return Err(Error::Precondition(
                    "certificate lambda differs from the problem's".into(),
                ));
            }
            // b hypothesis: objective after the first full round from x_0.
            let x0 = &trace.points[0];
            let y0 = resolve(&prob.g, prob.lambda, x0)?;
            let x1 = resolve(&prob.f, prob.lambda, &y0)?;
            let first = phi(prob, &x1, &y0)?;
            if !(first <= *b + 1e-12) {
                return Err(Error::Precondition(format!(
                    "b = {b} does not dominate the first-round objective {first}"
                )));
            }
            let mut parts =
                vec![check_column(&trace.steps, cert.bound, *eps, "steps", converged)];
            if let Some(ys) = &trace.y_steps {
                parts.push(check_column(ys, cert.bound, *eps, "companion steps", converged));
            }
            if let Some((xs, ysol)) = solution {
                let d0 = distance(x0, xs)?;
                let from = if d0 == 0.0 {
                    1
                } else {
                    theta_min(eps * lambda / d0, *b, *m, *lambda)?.saturating_add(1)
                };
                let phi_star = phi(prob, xs, ysol)?;
                let ys = trace
                    .ys
                    .as_ref()
                    .ok_or_else(|| Error::domain("trace has no companion sequence"))?;
                if trace.points.len() != trace.steps.len() + 1 {
                    return Err(Error::Inconclusive(
                        "objective-value check needs an unthinned trace".into(),
                    ));
                }
                // y_n is produced from x_n, so the value sequence pairs
                // points[n] with ys[n].
                let rounds = ys.len().min(trace.points.len());
                let mut values = Vec::with_capacity(rounds);
                for n in 0..rounds {
                    values.push(phi(prob, &trace.points[n], &ys[n])?);
                }
                parts.push(check_column(
                    &values,
                    from,
                    phi_star + eps,
                    "objective values",
                    converged,
                ));
            }
            Ok(merge(parts))
        }
        _ => Err(Error::Precondition(
            "certificate kind does not match the supplied context".into(),
        )),
    }
}

fn b_of(cert: &RateCertificate) -> f64 {
    match cert.kind {
        CertKind::Theta2 { b, .. }
        | CertKind::ThetaTilde2 { b, .. }
        | CertKind::ThetaR { b, .. }
        | CertKind::ThetaTildeR { b, .. }
        | CertKind::ThetaMin { b, .. } => b,
    }
}

fn require_exact(trace: &IterationTrace) -> Result<()> {
    if !trace.exact {
        return Err(Error::Precondition(
            "this certificate only covers exact (zero-error) runs".into(),
        ));
    }
    Ok(())
}

fn require_b(trace: &IterationTrace, u: &Point, b: f64) -> Result<()> {
    let d = distance(&trace.points[0], u)?;
    if d > b {
        return Err(Error::Precondition(format!(
            "b = {b} does not dominate d(x_0, u) = {d}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::iteration::{run_alternating, run_cyclic, AlternatingProblem, CyclicProblem};
    use crate::operators::{FunctionSpec, Mapping};
    use crate::sets::ConvexSet;

    #[test]
    fn two_mapping_bound_hand_evaluations() {
        // (2/c) (4 p b^p / (c eps^p))^p = 1 * (32/2)^2 = 256; doubled = 512.
        assert_eq!(theta2(1.0, 2.0, 2.0, 2.0).unwrap(), 512);
        assert_eq!(theta_tilde2(1.0, 2.0, 2.0, 2.0).unwrap(), 513);
        // Quartering eps^p: (32/0.5)^2 * 2 = 8192.
        assert_eq!(theta2(0.5, 2.0, 2.0, 2.0).unwrap(), 8192);
        // eps >= 2b collapses the bound.
        assert_eq!(theta2(4.0, 2.0, 2.0, 2.0).unwrap(), 0);
        assert_eq!(theta2(4.1, 2.0, 2.0, 2.0).unwrap(), 0);
        assert_eq!(theta_tilde2(4.0, 2.0, 2.0, 2.0).unwrap(), 1);
        // Bad inputs.
        assert!(theta2(0.0, 2.0, 2.0, 2.0).is_err());
        assert!(theta2(1.0, -1.0, 2.0, 2.0).is_err());
        assert!(theta2(1.0, 2.0, 0.0, 2.0).is_err());
        assert!(theta2(1.0, 2.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn cycle_bound_hand_evaluations_and_the_r_equals_2_identity() {
        // r = 3, eps = 1, b = 1, c = 2, p = 2: 3 * [(2/2) (12/2)^2] = 108.
        assert_eq!(theta_r(1.0, 1.0, 2.0, 2.0, 3).unwrap(), 108);
        assert_eq!(theta_r(4.0, 1.0, 2.0, 2.0, 3).unwrap(), 0);
        for eps in [0.05, 0.3, 1.0, 2.7] {
            for b in [0.4, 1.0, 3.0] {
                assert_eq!(
                    theta_r(eps, b, 2.0, 2.0, 2).unwrap(),
                    theta2(eps, b, 2.0, 2.0).unwrap(),
                    "eps {eps} b {b}"
                );
                assert_eq!(
                    theta_tilde_r(eps, b, 2.0, 2.0, 2).unwrap(),
                    theta_tilde2(eps, b, 2.0, 2.0).unwrap(),
                );
            }
        }
        assert!(theta_r(1.0, 1.0, 2.0, 2.0, 0).is_err());
    }

    #[test]
    fn minimization_bound_hand_evaluations() {
        // [2 * 0.5 * 1 / 0.01] + 1 = 101.
        assert_eq!(theta_min(0.1, 1.0, 0.0, 0.5).unwrap(), 101);
        // Objective already at its lower bound.
        assert_eq!(theta_min(0.1, 1.0, 1.0, 0.5).unwrap(), 1);
        // Halving eps quadruples the bound up to flooring.
        let a = theta_min(0.2, 2.0, 0.0, 1.0).unwrap();
        let b = theta_min(0.1, 2.0, 0.0, 1.0).unwrap();
        assert!(b >= 4 * (a - 1) && b <= 4 * a);
        assert!(theta_min(0.1, 0.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn theta2_monotonicity_over_grids() {
        let grid = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0];
        for w in grid.windows(2) {
            assert!(
                theta2(w[0], 2.0, 2.0, 2.0).unwrap() >= theta2(w[1], 2.0, 2.0, 2.0).unwrap()
            );
        }
        let bs = [0.3, 0.7, 1.5, 3.0];
        for w in bs.windows(2) {
            assert!(
                theta2(0.25, w[0], 2.0, 2.0).unwrap() <= theta2(0.25, w[1], 2.0, 2.0).unwrap()
            );
        }
    }

    #[test]
    fn saturation_instead_of_overflow() {
        let huge = theta2(1e-9, 10.0, 2.0, 2.0).unwrap();
        assert_eq!(huge, u64::MAX);
    }

    fn two_projection_run(
        start: (f64, f64),
        max_steps: usize,
    ) -> (CyclicProblem, crate::iteration::IterationTrace, Point) {
        let h = Space::half_plane();
        let a = ConvexSet::vertical_line(&h, 0.0).unwrap();
        let b = ConvexSet::semicircle(&h, 1.0, 2f64.sqrt()).unwrap();
        let u = Point::half_plane(&h, 0.0, 1.0).unwrap(); // the crossing
        let mut prob = CyclicProblem::new(
            vec![Mapping::projection(a), Mapping::projection(b)],
            Point::half_plane(&h, start.0, start.1).unwrap(),
        );
        prob.stop_tol = 1e-13;
        prob.max_steps = max_steps;
        let trace = run_cyclic(&prob).unwrap();
        (prob, trace, u)
    }

    #[test]
    fn validated_two_mapping_certificate_holds() {
        let (prob, trace, u) = two_projection_run((0.35, 0.9), 60_000);
        let b = distance(&prob.start, &u).unwrap() * 1.01;
        for eps in [0.1, 0.05] {
            let cert = RateCertificate::theta2(eps, b, 2.0, 2.0).unwrap();
            let rep =
                validate_certificate(&cert, &trace, &CertContext::FixedPoint(&u)).unwrap();
            assert!(rep.holds(), "eps {eps}: {}", rep.detail);
        }
        // Residual-only companion certificate.
        let cert = RateCertificate::theta_tilde2(0.1, b, 2.0, 2.0).unwrap();
        let rep = validate_certificate(&cert, &trace, &CertContext::FixedPoint(&u)).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn short_traces_are_inconclusive_and_converged_ones_hold() {
        let (prob, trace, u) = two_projection_run((0.35, 0.9), 60_000);
        let b = distance(&prob.start, &u).unwrap() * 1.01;
        // Tiny eps: bound far beyond the (converged) trace. Convergence
        // lets the verdict stand.
        let cert = RateCertificate::theta2(1e-4, b, 2.0, 2.0).unwrap();
        assert!(cert.bound as usize > trace.len());
        let rep = validate_certificate(&cert, &trace, &CertContext::FixedPoint(&u)).unwrap();
        assert!(rep.holds(), "{}", rep.detail);

        // Same bound on a trace cut off before convergence: inconclusive.
        let (_, short, u2) = two_projection_run((0.35, 0.9), 7);
        let rep2 =
            validate_certificate(&cert, &short, &CertContext::FixedPoint(&u2)).unwrap();
        assert_eq!(rep2.verdict, CertVerdict::Inconclusive);
    }

    #[test]
    fn preconditions_are_enforced() {
        let (prob, _, u) = two_projection_run((0.35, 0.9), 1000);
        // Inexact run: rejected.
        let mut noisy = prob.clone();
        noisy.errors = crate::iteration::ErrorSchedule::geometric(0.1, 0.5).unwrap();
        noisy.stop_tol = 0.0;
        noisy.max_steps = 50;
        let trace = run_cyclic(&noisy).unwrap();
        let cert = RateCertificate::theta2(0.1, 5.0, 2.0, 2.0).unwrap();
        assert!(matches!(
            validate_certificate(&cert, &trace, &CertContext::FixedPoint(&u)),
            Err(Error::Precondition(_))
        ));
        // b below d(x_0, u): rejected.
        let exact = run_cyclic(&prob).unwrap();
        let small_b = RateCertificate::theta2(0.1, 1e-6, 2.0, 2.0).unwrap();
        assert!(matches!(
            validate_certificate(&small_b, &exact, &CertContext::FixedPoint(&u)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn minimization_certificate_on_the_line() {
        let e = Space::euclidean(1).unwrap();
        let p = |v: f64| Point::euclidean(&e, vec![v]).unwrap();
        let prob = MinProblem::new(
            FunctionSpec::HalfSqDistTo(p(0.0)),
            FunctionSpec::HalfSqDistTo(p(1.0)),
            1.0,
        )
        .unwrap();
        let t1 = Mapping::resolvent(prob.g.clone(), prob.lambda).unwrap();
        let t2 = Mapping::resolvent(prob.f.clone(), prob.lambda).unwrap();
        let start = p(4.0);
        let mut run = AlternatingProblem::new(t1, t2, start.clone());
        run.stop_tol = 1e-14;
        run.max_steps = 5_000;
        let trace = run_alternating(&run).unwrap();

        // b from the first full round, m = 0 a valid lower bound.
        let y0 = resolve(&prob.g, 1.0, &start).unwrap();
        let x1 = resolve(&prob.f, 1.0, &y0).unwrap();
        let b = phi(&prob, &x1, &y0).unwrap() * 1.001;
        let (xs, ys) = (p(1.0 / 3.0), p(2.0 / 3.0));
        for eps in [0.1, 0.01] {
            let cert = RateCertificate::theta_min(eps, b, 0.0, 1.0).unwrap();
            let rep = validate_certificate(
                &cert,
                &trace,
                &CertContext::Minimization { prob: &prob, solution: Some((&xs, &ys)) },
            )
            .unwrap();
            assert!(rep.holds(), "eps {eps}: {}", rep.detail);
        }
        // A mismatched context errors out.
        let cert = RateCertificate::theta_min(0.1, b, 0.0, 1.0).unwrap();
        assert!(validate_certificate(&cert, &trace, &CertContext::FixedPoint(&xs)).is_err());
    }
}
