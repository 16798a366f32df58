//! Firmly-nonexpansive-type mappings (projections, resolvents,
//! compositions, error-wrapped evaluations) and sample-based falsifiers
//! for the defining inequalities.
//!
//! The checkers are falsifiers, not verifiers: they certify "no violation
//! found over N samples" and report the worst residual seen, producing a
//! witness whenever a residual drops below the tolerance.

mod functions;

pub use functions::{resolve, FunctionSpec};
pub(crate) use functions::argmin_over_space;
#[cfg(test)]
pub(crate) use functions::golden_section;

use crate::error::{Error, Result};
use crate::geometry::{
    self, distance, geodesic_point, sample_with_rng, Point, SampleBounds, Space,
};
use crate::iteration::ErrorSchedule;
use crate::sets::ConvexSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A point-to-point operator on a model space.
#[derive(Debug, Clone, PartialEq)]
pub enum Mapping {
    /// Metric projection onto a closed convex set.
    Projection(ConvexSet),
    /// Resolvent of a convex function with step `lambda > 0`.
    Resolvent { f: FunctionSpec, lambda: f64 },
    /// Right-to-left composition: the last mapping in the list is applied
    /// first, so `[T1, T2, T3]` evaluates `T1(T2(T3(x)))`.
    Composition(Vec<Mapping>),
    /// Evaluation of `inner` perturbed at step `n` by a displacement of
    /// magnitude exactly `schedule.value(n)` along a pseudo-random
    /// geodesic direction derived from `(seed, n)`.
    WithError { inner: Box<Mapping>, schedule: ErrorSchedule, seed: u64 },
}

impl Mapping {
    pub fn projection(set: ConvexSet) -> Mapping {
        Mapping::Projection(set)
    }

    pub fn resolvent(f: FunctionSpec, lambda: f64) -> Result<Mapping> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain("resolvent step lambda must be positive"));
        }
        Ok(Mapping::Resolvent { f, lambda })
    }

    pub fn composition(list: Vec<Mapping>) -> Result<Mapping> {
        if list.is_empty() {
            return Err(Error::domain("composition of zero mappings"));
        }
        let space = list[0].space().clone();
        if list.iter().any(|m| *m.space() != space) {
            return Err(Error::mismatch("composed mappings live in different spaces"));
        }
        Ok(Mapping::Composition(list))
    }

    pub fn with_error(inner: Mapping, schedule: ErrorSchedule, seed: u64) -> Mapping {
        Mapping::WithError { inner: Box::new(inner), schedule, seed }
    }

    pub fn space(&self) -> &Space {
        match self {
            Mapping::Projection(set) => set.space(),
            Mapping::Resolvent { f, .. } => f.space(),
            Mapping::Composition(list) => list[0].space(),
            Mapping::WithError { inner, .. } => inner.space(),
        }
    }

    /// Exact evaluation (step index 0 for error wrappers).
    pub fn apply(&self, z: &Point) -> Result<Point> {
        self.apply_at(z, 0)
    }

    /// Evaluation at step `n`; only error wrappers depend on `n`, so the
    /// result is a pure function of `(mapping, point, n)`.
    pub fn apply_at(&self, z: &Point, n: usize) -> Result<Point> {
        match self {
            Mapping::Projection(set) => set.project(z),
            Mapping::Resolvent { f, lambda } => resolve(f, *lambda, z),
            Mapping::Composition(list) => {
                let mut x = z.clone();
                for m in list.iter().rev() {
                    x = m.apply_at(&x, n)?;
                }
                Ok(x)
            }
            Mapping::WithError { inner, schedule, seed } => {
                let exact = inner.apply_at(z, n)?;
                geometry::displace(&exact, schedule.value(n), *seed, n as u64)
            }
        }
    }
}

/// Anything that maps points to points; lets the checkers run against both
/// [`Mapping`] values and ad-hoc closures (e.g. counterexample maps).
pub trait PointMap {
    fn map_point(&self, z: &Point) -> Result<Point>;
}

impl PointMap for Mapping {
    fn map_point(&self, z: &Point) -> Result<Point> {
        self.apply(z)
    }
}

/// Closure adapter for [`PointMap`].
pub struct FnMap<F: Fn(&Point) -> Result<Point>>(pub F);

impl<F: Fn(&Point) -> Result<Point>> PointMap for FnMap<F> {
    fn map_point(&self, z: &Point) -> Result<Point> {
        (self.0)(z)
    }
}

/// Which inequality a report is about.
#[derive(Debug, Clone, PartialEq)]
pub enum PropertyKind {
    FirmlyNonexpansive,
    QuasiContraction { l: f64, beta: f64 },
    TwoPointContraction,
    ResolventInequality,
    PUniformConvexity,
    FourPoint,
}

impl std::fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PropertyKind::FirmlyNonexpansive => write!(f, "firmly-nonexpansive"),
            PropertyKind::QuasiContraction { l, beta } => {
                write!(f, "quasi-contraction(l={l}, beta={beta})")
            }
            PropertyKind::TwoPointContraction => write!(f, "two-point-contraction"),
            PropertyKind::ResolventInequality => write!(f, "resolvent-inequality"),
            PropertyKind::PUniformConvexity => write!(f, "p-uniform-convexity"),
            PropertyKind::FourPoint => write!(f, "four-point"),
        }
    }
}

/// A violating configuration, kept only when a residual fell below the
/// falsifier's tolerance.
#[derive(Debug, Clone)]
pub struct Witness {
    pub points: Vec<Point>,
    pub lambda: Option<f64>,
    pub residual: f64,
}

/// Outcome of a sample-based falsification run.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub samples: usize,
    pub worst_residual: f64,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Residual of the firmly-nonexpansive inequality at one `(x, y, lambda)`:
/// `d((1-l)x + l Tx, (1-l)y + l Ty) - d(Tx, Ty)`.
pub fn firm_nonexpansive_residual(
    map: &dyn PointMap,
    x: &Point,
    y: &Point,
    lambda: f64,
) -> Result<f64> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::domain("lambda grid points must lie in [0, 1)"));
    }
    let tx = map.map_point(x)?;
    let ty = map.map_point(y)?;
    let mx = geodesic_point(x, &tx, lambda)?;
    let my = geodesic_point(y, &ty, lambda)?;
    Ok(distance(&mx, &my)? - distance(&tx, &ty)?)
}

/// Worst firmly-nonexpansive residual over a lambda grid for one pair.
pub fn check_firm_nonexpansive(
    map: &dyn PointMap,
    x: &Point,
    y: &Point,
    lambdas: &[f64],
    tol: f64,
) -> Result<PropertyReport> {
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for &l in lambdas {
        let r = firm_nonexpansive_residual(map, x, y, l)?;
        if r < worst {
            worst = r;
            if r < -tol {
                witness = Some(Witness {
                    points: vec![x.clone(), y.clone()],
                    lambda: Some(l),
                    residual: r,
                });
            }
        }
    }
    Ok(PropertyReport {
        property: PropertyKind::FirmlyNonexpansive,
        samples: lambdas.len(),
        worst_residual: worst,
        witness,
    })
}

/// Residual of the quasi-contraction inequality toward a fixed point `u`:
/// `d(x,u)^l - beta d(Tx,x)^l - d(Tx,u)^l`. Errors unless `u` is fixed by
/// the mapping to within 1e-10.
pub fn check_p1(
    map: &dyn PointMap,
    u: &Point,
    x: &Point,
    l: f64,
    beta: f64,
) -> Result<f64> {
    let tu = map.map_point(u)?;
    if distance(&tu, u)? > 1e-10 {
        return Err(Error::Precondition(format!(
            "supplied point is not fixed: moved by {}",
            distance(&tu, u)?
        )));
    }
    let tx = map.map_point(x)?;
    Ok(distance(x, u)?.powf(l) - beta * distance(&tx, x)?.powf(l) - distance(&tx, u)?.powf(l))
}

/// Residual of the two-point contraction inequality:
/// `d(x,Ty)^2 + d(y,Tx)^2 - d(x,Tx)^2 - d(y,Ty)^2 - 2 d(Tx,Ty)^2`.
pub fn check_p2(map: &dyn PointMap, x: &Point, y: &Point) -> Result<f64> {
    let tx = map.map_point(x)?;
    let ty = map.map_point(y)?;
    Ok(distance(x, &ty)?.powi(2) + distance(y, &tx)?.powi(2)
        - distance(x, &tx)?.powi(2)
        - distance(y, &ty)?.powi(2)
        - 2.0 * distance(&tx, &ty)?.powi(2))
}

/// Residual of the resolvent descent inequality at `(x, y)`:
///
/// `f(y) + d(x,y)^2/(2L) - d(J,y)^2/(2L) - f(J) - d(J,x)^2/(2L)`
///
/// with `J = resolve(f, L, x)`; nonnegative on nonpositively curved models.
pub fn check_resolvent_inequality(
    f: &FunctionSpec,
    lambda: f64,
    x: &Point,
    y: &Point,
) -> Result<f64> {
    let j = resolve(f, lambda, x)?;
    let fy = f.eval(y)?;
    if fy.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let half = 1.0 / (2.0 * lambda);
    Ok(fy + half * distance(x, y)?.powi(2)
        - half * distance(&j, y)?.powi(2)
        - f.eval(&j)?
        - half * distance(&j, x)?.powi(2))
}

/// Tests whether `candidate` is fixed (within `tol`) by the right-to-left
/// composition of `maps` and by every individual mapping. The `witness`
/// must be a common fixed point of all mappings; with that hypothesis the
/// two booleans agree on every candidate.
pub fn check_fix_equivalence(
    maps: &[Mapping],
    witness: &Point,
    candidate: &Point,
    tol: f64,
) -> Result<(bool, bool)> {
    if maps.is_empty() {
        return Err(Error::domain("no mappings given"));
    }
    for m in maps {
        let moved = distance(&m.apply(witness)?, witness)?;
        if moved > 1e-8 {
            return Err(Error::Precondition(format!(
                "witness is not a common fixed point: one mapping moves it by {moved}"
            )));
        }
    }
    let mut x = candidate.clone();
    for m in maps.iter().rev() {
        x = m.apply(&x)?;
    }
    let fixes_composition = distance(&x, candidate)? <= tol;
    let mut fixes_each = true;
    for m in maps {
        if distance(&m.apply(candidate)?, candidate)? > tol {
            fixes_each = false;
            break;
        }
    }
    Ok((fixes_composition, fixes_each))
}

/// Options shared by the sample-based falsifier suites.
#[derive(Debug, Clone)]
pub struct FalsifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub bounds: SampleBounds,
    /// Averaging grid for the firmly-nonexpansive check.
    pub lambdas: Vec<f64>,
}

impl FalsifyOptions {
    pub fn new(space: &Space) -> FalsifyOptions {
        FalsifyOptions {
            samples: 1000,
            seed: 0,
            tol: 1e-8,
            bounds: SampleBounds::default_for(space),
            lambdas: vec![0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99],
        }
    }
}

fn fold_report(
    property: PropertyKind,
    samples: usize,
    results: impl Iterator<Item = Result<(f64, Vec<Point>, Option<f64>)>>,
    tol: f64,
) -> Result<PropertyReport> {
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for r in results {
        let (res, pts, lambda) = r?;
        if res < worst {
            worst = res;
            if res < -tol {
                witness = Some(Witness { points: pts, lambda, residual: res });
            }
        }
    }
    Ok(PropertyReport { property, samples, worst_residual: worst, witness })
}

/// p-uniform-convexity falsifier over random triples and interpolation
/// parameters.
pub fn falsify_puc(space: &Space, opts: &FalsifyOptions) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut results = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let y = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let z = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let t = rand::Rng::gen_range(&mut rng, 0.0..1.0);
        let r = geometry::check_puc(&x, &y, &z, t)?;
        results.push(Ok((r, vec![x, y, z], Some(t))));
    }
    fold_report(PropertyKind::PUniformConvexity, opts.samples, results.into_iter(), opts.tol)
}

/// Four-point inequality falsifier over random quadruples (CAT(0) models).
pub fn falsify_reshetnyak(space: &Space, opts: &FalsifyOptions) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut results = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let y = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let u = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let v = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let r = geometry::check_reshetnyak(&x, &y, &u, &v)?;
        results.push(Ok((r, vec![x, y, u, v], None)));
    }
    fold_report(PropertyKind::FourPoint, opts.samples, results.into_iter(), opts.tol)
}

/// Firmly-nonexpansive falsifier over random pairs and the lambda grid.
pub fn falsify_firm_nonexpansive(
    map: &dyn PointMap,
    space: &Space,
    opts: &FalsifyOptions,
) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let y = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let rep = check_firm_nonexpansive(map, &x, &y, &opts.lambdas, opts.tol)?;
        if rep.worst_residual < worst {
            worst = rep.worst_residual;
            witness = rep.witness;
        }
    }
    Ok(PropertyReport {
        property: PropertyKind::FirmlyNonexpansive,
        samples: opts.samples,
        worst_residual: worst,
        witness,
    })
}

/// Quasi-contraction falsifier toward a supplied fixed point.
pub fn falsify_p1(
    map: &dyn PointMap,
    space: &Space,
    u: &Point,
    l: f64,
    beta: f64,
    opts: &FalsifyOptions,
) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut results = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let r = check_p1(map, u, &x, l, beta)?;
        results.push(Ok((r, vec![u.clone(), x], None)));
    }
    fold_report(
        PropertyKind::QuasiContraction { l, beta },
        opts.samples,
        results.into_iter(),
        opts.tol,
    )
}

/// Two-point contraction falsifier over random pairs.
pub fn falsify_p2(
    map: &dyn PointMap,
    space: &Space,
    opts: &FalsifyOptions,
) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut results = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let y = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let r = check_p2(map, &x, &y)?;
        results.push(Ok((r, vec![x, y], None)));
    }
    fold_report(PropertyKind::TwoPointContraction, opts.samples, results.into_iter(), opts.tol)
}

/// Resolvent descent inequality falsifier over random pairs.
pub fn falsify_resolvent_inequality(
    f: &FunctionSpec,
    lambda: f64,
    space: &Space,
    opts: &FalsifyOptions,
) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut results = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let y = sample_with_rng(space, &mut rng, &opts.bounds)?;
        let r = check_resolvent_inequality(f, lambda, &x, &y)?;
        results.push(Ok((r, vec![x, y], None)));
    }
    fold_report(
        PropertyKind::ResolventInequality,
        opts.samples,
        results.into_iter(),
        opts.tol,
    )
}
