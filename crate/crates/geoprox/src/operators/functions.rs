//! Convex lower semi-continuous functions and their resolvents
//! (proximal maps).
//!
//! Resolvents have closed forms for indicators (projection), half squared
//! distance and plain distance to an anchor; scaling folds into the step
//! size. Sums fall back to a derivative-free minimizer over the model's
//! coordinate chart.

use crate::error::{Error, Result};
use crate::geometry::{self, distance, interpolate_unchecked, Point, Space};
use crate::sets::ConvexSet;

/// Symbolic convex function on a model space.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// 0 on the set, +inf outside.
    Indicator(ConvexSet),
    /// `d(., anchor)`.
    DistTo(Point),
    /// `d(., anchor)^2 / 2`.
    HalfSqDistTo(Point),
    /// `weight * inner`, weight > 0.
    Scaled { inner: Box<FunctionSpec>, weight: f64 },
    Sum(Vec<FunctionSpec>),
}

impl FunctionSpec {
    pub fn scaled(inner: FunctionSpec, weight: f64) -> Result<FunctionSpec> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::domain("scale weight must be positive"));
        }
        Ok(FunctionSpec::Scaled { inner: Box::new(inner), weight })
    }

    pub fn space(&self) -> &Space {
        match self {
            FunctionSpec::Indicator(set) => set.space(),
            FunctionSpec::DistTo(a) | FunctionSpec::HalfSqDistTo(a) => a.space(),
            FunctionSpec::Scaled { inner, .. } => inner.space(),
            FunctionSpec::Sum(list) => list.first().expect("sums are nonempty").space(),
        }
    }

    /// Extended-real evaluation; +inf exactly when an indicator constraint
    /// is violated.
    pub fn eval(&self, z: &Point) -> Result<f64> {
        Ok(match self {
            FunctionSpec::Indicator(set) => {
                if set.contains(z, 1e-9)? {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            FunctionSpec::DistTo(a) => distance(z, a)?,
            FunctionSpec::HalfSqDistTo(a) => 0.5 * distance(z, a)?.powi(2),
            FunctionSpec::Scaled { inner, weight } => weight * inner.eval(z)?,
            FunctionSpec::Sum(list) => {
                let mut acc = 0.0;
                for f in list {
                    acc += f.eval(z)?;
                    if acc.is_infinite() {
                        return Ok(f64::INFINITY);
                    }
                }
                acc
            }
        })
    }

    /// Whether the function is finite on the whole space.
    fn finite_everywhere(&self) -> bool {
        match self {
            FunctionSpec::Indicator(_) => false,
            FunctionSpec::DistTo(_) | FunctionSpec::HalfSqDistTo(_) => true,
            FunctionSpec::Scaled { inner, .. } => inner.finite_everywhere(),
            FunctionSpec::Sum(list) => list.iter().all(|f| f.finite_everywhere()),
        }
    }
}

/// The resolvent `J_lambda(z)`: the unique minimizer of
/// `f(.) + d(z, .)^2 / (2 lambda)`.
pub fn resolve(f: &FunctionSpec, lambda: f64, z: &Point) -> Result<Point> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("resolvent step lambda must be positive"));
    }
    if *f.space() != *z.space() {
        return Err(Error::mismatch("function and point live in different spaces"));
    }
    match f {
        FunctionSpec::Indicator(set) => set.project(z),
        FunctionSpec::HalfSqDistTo(a) => {
            interpolate_unchecked(z, a, lambda / (1.0 + lambda))
        }
        FunctionSpec::DistTo(a) => {
            let d = distance(z, a)?;
            if d == 0.0 {
                Ok(a.clone())
            } else {
                interpolate_unchecked(z, a, (lambda / d).min(1.0))
            }
        }
        // argmin of w f + d^2/(2 lambda) equals argmin of f + d^2/(2 w lambda).
        FunctionSpec::Scaled { inner, weight } => resolve(inner, lambda * weight, z),
        FunctionSpec::Sum(list) => {
            if list.is_empty() {
                return Err(Error::domain("sum of zero functions is not proper"));
            }
            if list.len() == 1 {
                return resolve(&list[0], lambda, z);
            }
            if !f.finite_everywhere() {
                return Err(Error::Unsupported(
                    "numeric resolvent needs a finite objective; fold indicators into a \
                     single Indicator term"
                        .into(),
                ));
            }
            let objective = |u: &Point| {
                let fu = f.eval(u).unwrap_or(f64::INFINITY);
                let du = distance(z, u).unwrap_or(f64::INFINITY);
                fu + du * du / (2.0 * lambda)
            };
            argmin_over_space(z.space(), &objective, z, 1e-8)
        }
    }
}

/// Derivative-free minimizer over a model space: coordinate-wise golden
/// section in the chart, trust region doubled until the minimum is
/// bracketed, sweeps repeated until the iterate stalls. Trees run a
/// golden section along every edge instead.
pub(crate) fn argmin_over_space(
    space: &Space,
    objective: &dyn Fn(&Point) -> f64,
    start: &Point,
    tol: f64,
) -> Result<Point> {
    if let Some(tree) = space.tree() {
        let mut best: Option<(Point, f64)> = None;
        for (e, &(_, _, len)) in tree.edges().iter().enumerate() {
            let eval = |off: f64| {
                Point::tree(space, crate::geometry::TreePos { edge: e, offset: off })
                    .expect("offset stays in range")
            };
            let g = |off: f64| objective(&eval(off));
            let off = golden_section(&g, 0.0, len, tol);
            let p = eval(off);
            let v = objective(&p);
            if best.as_ref().map_or(true, |(_, bv)| v < *bv) {
                best = Some((p, v));
            }
        }
        return best
            .map(|(p, _)| p)
            .ok_or_else(|| Error::Unsupported("tree has no edges".into()));
    }

    let dim = geometry::chart_dim(space).expect("non-tree models have a chart");
    let mut chart = geometry::to_chart(start).expect("non-tree models have a chart");
    let eval = |c: &[f64]| {
        geometry::from_chart(space, c).map(|p| objective(&p)).unwrap_or(f64::INFINITY)
    };
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..dim {
            let g = |t: f64| {
                let mut c = chart.clone();
                c[i] = t;
                eval(&c)
            };
            let x0 = chart[i];
            // Double the trust region until both ends rise above the center.
            let mut h = 0.25;
            let (mut lo, mut hi) = (x0 - h, x0 + h);
            let g0 = g(x0);
            for _ in 0..60 {
                let expanded_lo = g(lo) < g0 && h < 1e6;
                let expanded_hi = g(hi) < g0 && h < 1e6;
                if !expanded_lo && !expanded_hi {
                    break;
                }
                h *= 2.0;
                lo = x0 - h;
                hi = x0 + h;
            }
            let t = golden_section(&g, lo, hi, tol * 1e-2);
            if g(t) < g0 {
                moved = moved.max((t - x0).abs());
                chart[i] = t;
            }
        }
        if moved < tol {
            break;
        }
    }
    geometry::from_chart(space, &chart)
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
pub(crate) fn golden_section(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut m1 = hi - phi * (hi - lo);
    let mut m2 = lo + phi * (hi - lo);
    let (mut g1, mut g2) = (g(m1), g(m2));
    for _ in 0..300 {
        if hi - lo < tol {
            break;
        }
        if g1 <= g2 {
            hi = m2;
            m2 = m1;
            g2 = g1;
            m1 = hi - phi * (hi - lo);
            g1 = g(m1);
        } else {
            lo = m1;
            m1 = m2;
            g1 = g2;
            m2 = lo + phi * (hi - lo);
            g2 = g(m2);
        }
    }
    let mid = 0.5 * (lo + hi);
    if g(mid) <= g1.min(g2) {
        mid
    } else if g1 <= g2 {
        m1
    } else {
        m2
    }
}
