//! Grid-plus-refinement minimizers used as independent oracles against the
//! closed-form projections. Deliberately derivative-free and slow: these
//! exist to cross-check `project` and `set_distance`, not to be fast.

use crate::error::{Error, Result};
use crate::geometry::sphere;
use crate::geometry::{self, distance, Coords, Point};

use super::{ConvexSet, LineRepr, SetKind};

/// A bounded 1-D parameterization of a set (complete geodesics get a
/// window wide enough to contain the nearest point to the reference).
struct Curve<'a> {
    eval: Box<dyn Fn(f64) -> Option<Point> + 'a>,
    lo: f64,
    hi: f64,
}

fn curve_of<'a>(set: &'a ConvexSet, reference: &Point) -> Result<Option<Curve<'a>>> {
    let space = set.space().clone();
    match set.kind() {
        SetKind::Line(LineRepr::Euclidean { base, dir }) => {
            let w = 2.0 * distance(reference, &set.witness())? + 1.0;
            let base = base.clone();
            let dir = dir.clone();
            Ok(Some(Curve {
                eval: Box::new(move |u| {
                    let coords = base.iter().zip(&dir).map(|(b, d)| b + u * d).collect();
                    Point::euclidean(&space, coords).ok()
                }),
                lo: -w,
                hi: w,
            }))
        }
        SetKind::Line(LineRepr::HalfPlane(carrier)) => {
            let w = 2.0 * distance(reference, &set.witness())? + 1.0;
            let carrier = *carrier;
            Ok(Some(Curve {
                eval: Box::new(move |u| {
                    let (x, y) = carrier.point_at(u);
                    Point::half_plane(&space, x, y).ok()
                }),
                lo: -w,
                hi: w,
            }))
        }
        SetKind::Line(LineRepr::SphereArc { anchor, tangent }) => {
            let rho = space.cap_angular_radius().unwrap();
            let a = sphere::dot(&sphere::POLE, anchor);
            let b = sphere::dot(&sphere::POLE, tangent);
            let half = (rho.cos() / a.hypot(b)).min(1.0).acos();
            let mid = b.atan2(a);
            let anchor = *anchor;
            let tangent = *tangent;
            Ok(Some(Curve {
                eval: Box::new(move |theta| {
                    let p = sphere::add(
                        &sphere::scale(&anchor, theta.cos()),
                        &sphere::scale(&tangent, theta.sin()),
                    );
                    Point::spherical(&space, sphere::normalize(&p)).ok()
                }),
                lo: mid - half,
                hi: mid + half,
            }))
        }
        SetKind::Segment { a, b } => {
            let a = a.clone();
            let b = b.clone();
            Ok(Some(Curve {
                eval: Box::new(move |t| geometry::geodesic_point(&a, &b, t).ok()),
                lo: 0.0,
                hi: 1.0,
            }))
        }
        _ => Ok(None),
    }
}

/// Minimize `objective` over a 1-D window by iterated grid refinement.
fn refine_1d(
    eval: &dyn Fn(f64) -> Option<Point>,
    objective: &dyn Fn(&Point) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Option<(Point, f64)> {
    const N: usize = 48;
    let mut best: Option<(f64, Point, f64)> = None; // (param, point, value)
    for _ in 0..200 {
        let step = (hi - lo) / N as f64;
        for k in 0..=N {
            let u = lo + step * k as f64;
            if let Some(p) = eval(u) {
                let v = objective(&p);
                if best.as_ref().map_or(true, |(_, _, bv)| v < *bv) {
                    best = Some((u, p, v));
                }
            }
        }
        let (u, _, _) = best.as_ref()?;
        let (nlo, nhi) = (u - 2.5 * step, u + 2.5 * step);
        lo = nlo.max(lo);
        hi = nhi.min(hi);
        if hi - lo < tol {
            break;
        }
    }
    best.map(|(_, p, v)| (p, v))
}



/// Independent nearest-point oracle: minimizes `d(z, .)` over a bounded
/// parameterization of the set, accurate to `tol` in distance value.
pub fn numeric_project(set: &ConvexSet, z: &Point, tol: f64) -> Result<Point> {
    if *z.space() != *set.space() {
        return Err(Error::mismatch("point and set belong to different spaces"));
    }
    let objective = |p: &Point| distance(z, p).unwrap_or(f64::INFINITY);
    let param_tol = (tol * 1e-2).max(1e-12);

    if let Some(curve) = curve_of(set, z)? {
        let best = refine_1d(&curve.eval, &objective, curve.lo, curve.hi, param_tol)
            .ok_or_else(|| Error::Unsupported("empty parameterization".into()))?;
        return Ok(best.0);
    }

    let space = set.space().clone();
    match set.kind() {
        SetKind::Ball { center, radius } => {
            if distance(center, z)? <= *radius {
                return Ok(z.clone());
            }
            // The nearest point of a ball to an outside query lies on the
            // sphere bounding it; minimize over that boundary directly.
            match space.model() {
                crate::geometry::Model::MetricTree(tree) => {
                    // Per-edge 1-D grids restricted to the ball.
                    let inside = |p: &Point| {
                        distance(center, p).map_or(false, |d| d <= *radius)
                    };
                    let mut best: Option<(Point, f64)> = None;
                    for (e, &(_, _, len)) in tree.edges().iter().enumerate() {
                        let sp = space.clone();
                        let eval = move |off: f64| {
                            Point::tree(&sp, crate::geometry::TreePos { edge: e, offset: off })
                                .ok()
                        };
                        let filtered = |p: &Point| {
                            if inside(p) {
                                objective(p)
                            } else {
                                f64::INFINITY
                            }
                        };
                        if let Some((p, v)) = refine_1d(&eval, &filtered, 0.0, len, param_tol) {
                            if v.is_finite()
                                && best.as_ref().map_or(true, |(_, bv)| v < *bv)
                            {
                                best = Some((p, v));
                            }
                        }
                    }
                    best.map(|(p, _)| p)
                        .ok_or_else(|| Error::Unsupported("ball misses the tree grid".into()))
                }
                _ => {
                    let eval = ball_boundary_curve(&space, center, *radius)?;
                    match eval {
                        Boundary::OneD(f) => {
                            let best = refine_1d(
                                &f,
                                &objective,
                                0.0,
                                2.0 * std::f64::consts::PI,
                                param_tol,
                            )
                            .ok_or_else(|| {
                                Error::Unsupported("empty boundary parameterization".into())
                            })?;
                            Ok(best.0)
                        }
                        Boundary::TwoD(f) => {
                            let lo = vec![0.0, 0.0];
                            let hi = vec![std::f64::consts::PI, 2.0 * std::f64::consts::PI];
                            let best = refine_coeffs(&f, &objective, lo, hi, param_tol)
                                .ok_or_else(|| {
                                    Error::Unsupported("empty boundary parameterization".into())
                                })?;
                            Ok(best.0)
                        }
                    }
                }
            }
        }
        SetKind::HalfSpace { normal, offset } => {
            let v = z.as_euclidean().unwrap();
            let slack: f64 = v.iter().zip(normal).map(|(a, b)| a * b).sum::<f64>() - offset;
            if slack <= 0.0 {
                return Ok(z.clone());
            }
            if v.len() > 4 {
                return Err(Error::Unsupported(
                    "half-space oracle grids are limited to low dimensions".into(),
                ));
            }
            // Query outside: the nearest admissible point is on the boundary
            // hyperplane `<n, x> = offset`; grid over an orthonormal frame
            // of that hyperplane around a fixed anchor.
            let frame = hyperplane_frame(normal);
            let anchor: Vec<f64> = normal.iter().map(|n| n * offset).collect();
            if frame.is_empty() {
                return Point::euclidean(&space, anchor);
            }
            let w = distance(z, &Point::euclidean(&space, anchor.clone())?)? + 1.0;
            let sp = space.clone();
            let eval = move |c: &[f64]| {
                let mut out = anchor.clone();
                for (ci, e) in c.iter().zip(&frame) {
                    for (oi, ei) in out.iter_mut().zip(e) {
                        *oi += ci * ei;
                    }
                }
                Point::euclidean(&sp, out).ok()
            };
            let k = v.len() - 1;
            let best = refine_coeffs(&eval, &objective, vec![-w; k], vec![w; k], param_tol)
                .ok_or_else(|| Error::Unsupported("empty hyperplane grid".into()))?;
            Ok(best.0)
        }
        SetKind::Affine { base, basis } => {
            if basis.len() > 3 {
                return Err(Error::Unsupported(
                    "affine oracle grids are limited to 3 basis vectors".into(),
                ));
            }
            if basis.is_empty() {
                return Ok(base.clone());
            }
            let w = distance(z, base)? + 1.0;
            let k = basis.len();
            let b = base.as_euclidean().unwrap().to_vec();
            let basis = basis.clone();
            let sp = space.clone();
            let eval_coeff = move |c: &[f64]| {
                let mut out = b.clone();
                for (ci, e) in c.iter().zip(&basis) {
                    for (oi, ei) in out.iter_mut().zip(e) {
                        *oi += ci * ei;
                    }
                }
                Point::euclidean(&sp, out).ok()
            };
            let best = refine_coeffs(&eval_coeff, &objective, vec![-w; k], vec![w; k], param_tol)
                .ok_or_else(|| Error::Unsupported("empty coefficient grid".into()))?;
            Ok(best.0)
        }
        SetKind::Subtree { vertices } => {
            let tree = space.tree().unwrap();
            let inset: std::collections::HashSet<usize> = vertices.iter().copied().collect();
            let mut best: Option<(Point, f64)> = None;
            for v in vertices {
                let p = Point::tree_vertex(&space, *v)?;
                let d = objective(&p);
                if best.as_ref().map_or(true, |(_, bv)| d < *bv) {
                    best = Some((p, d));
                }
            }
            for (e, &(a, b, len)) in tree.edges().iter().enumerate() {
                if !(inset.contains(&a) && inset.contains(&b)) {
                    continue;
                }
                let sp = space.clone();
                let eval = move |off: f64| {
                    Point::tree(&sp, crate::geometry::TreePos { edge: e, offset: off }).ok()
                };
                if let Some((p, vv)) = refine_1d(&eval, &objective, 0.0, len, param_tol) {
                    if best.as_ref().map_or(true, |(_, bv)| vv < *bv) {
                        best = Some((p, vv));
                    }
                }
            }
            best.map(|(p, _)| p)
                .ok_or_else(|| Error::Unsupported("empty subtree".into()))
        }
        _ => unreachable!("1-D kinds handled above"),
    }
}

enum Boundary<'a> {
    OneD(Box<dyn Fn(f64) -> Option<Point> + 'a>),
    TwoD(Box<dyn Fn(&[f64]) -> Option<Point> + 'a>),
}

/// Parameterization of the sphere bounding a metric ball, per model.
fn ball_boundary_curve<'a>(
    space: &crate::geometry::Space,
    center: &'a Point,
    radius: f64,
) -> Result<Boundary<'a>> {
    let sp = space.clone();
    match center.coords() {
        Coords::Euclidean(c) => match c.len() {
            1 => {
                let c0 = c[0];
                Ok(Boundary::OneD(Box::new(move |theta| {
                    Point::euclidean(&sp, vec![c0 + radius * theta.cos().signum()]).ok()
                })))
            }
            2 => {
                let c = c.clone();
                Ok(Boundary::OneD(Box::new(move |theta| {
                    Point::euclidean(
                        &sp,
                        vec![c[0] + radius * theta.cos(), c[1] + radius * theta.sin()],
                    )
                    .ok()
                })))
            }
            3 => {
                let c = c.clone();
                Ok(Boundary::TwoD(Box::new(move |ang: &[f64]| {
                    let (t, ph) = (ang[0], ang[1]);
                    Point::euclidean(
                        &sp,
                        vec![
                            c[0] + radius * t.sin() * ph.cos(),
                            c[1] + radius * t.sin() * ph.sin(),
                            c[2] + radius * t.cos(),
                        ],
                    )
                    .ok()
                })))
            }
            _ => Err(Error::Unsupported(
                "ball oracle boundaries are limited to dimension 3".into(),
            )),
        },
        Coords::HalfPlane { x, y } => {
            // A hyperbolic circle of radius r about (x, y) is the euclidean
            // circle centered (x, y cosh r) with radius y sinh r.
            let (cx, cy, r) = (*x, y * radius.cosh(), y * radius.sinh());
            Ok(Boundary::OneD(Box::new(move |theta| {
                Point::half_plane(&sp, cx + r * theta.cos(), cy + r * theta.sin()).ok()
            })))
        }
        Coords::Sphere(u) => {
            let crate::geometry::Model::SphericalCap { kappa, .. } = space.model() else {
                unreachable!()
            };
            let ang = radius * kappa.sqrt();
            let e1 = sphere::any_tangent(u);
            let e2 = sphere::cross(u, &e1);
            let u = *u;
            Ok(Boundary::OneD(Box::new(move |theta| {
                let dir = sphere::normalize(&sphere::add(
                    &sphere::scale(&e1, theta.cos()),
                    &sphere::scale(&e2, theta.sin()),
                ));
                Point::spherical(&sp, sphere::advance(&u, &dir, ang)).ok()
            })))
        }
        Coords::Tree(_) => Err(Error::Unsupported("trees use per-edge grids".into())),
    }
}

/// Orthonormal basis of the hyperplane orthogonal to the unit `normal`.
fn hyperplane_frame(normal: &[f64]) -> Vec<Vec<f64>> {
    let dim = normal.len();
    let mut frame: Vec<Vec<f64>> = Vec::new();
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        let dn: f64 = v.iter().zip(normal).map(|(a, b)| a * b).sum();
        for (vi, ni) in v.iter_mut().zip(normal) {
            *vi -= dn * ni;
        }
        for e in &frame {
            let de: f64 = v.iter().zip(e).map(|(a, b)| a * b).sum();
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= de * ei;
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            for vi in &mut v {
                *vi /= n;
            }
            frame.push(v);
        }
        if frame.len() == dim - 1 {
            break;
        }
    }
    frame
}

fn refine_coeffs(
    eval: &dyn Fn(&[f64]) -> Option<Point>,
    objective: &dyn Fn(&Point) -> f64,
    mut lo: Vec<f64>,
    mut hi: Vec<f64>,
    tol: f64,
) -> Option<(Point, f64)> {
    let dim = lo.len();
    let n = match dim {
        1 => 64,
        2 => 32,
        _ => 12,
    };
    let mut best: Option<(Vec<f64>, Point, f64)> = None;
    for _ in 0..200 {
        let steps: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| (b - a) / n as f64).collect();
        let mut idx = vec![0usize; dim];
        loop {
            let c: Vec<f64> =
                idx.iter().zip(&lo).zip(&steps).map(|((&k, a), s)| a + s * k as f64).collect();
            if let Some(p) = eval(&c) {
                let v = objective(&p);
                if best.as_ref().map_or(true, |(_, _, bv)| v < *bv) {
                    best = Some((c.clone(), p, v));
                }
            }
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] <= n {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == dim {
                    break;
                }
            }
            if d == dim {
                break;
            }
        }
        let (bc, _, _) = best.as_ref()?;
        let mut width = 0.0f64;
        for i in 0..dim {
            let nlo = (bc[i] - 2.5 * steps[i]).max(lo[i]);
            let nhi = (bc[i] + 2.5 * steps[i]).min(hi[i]);
            lo[i] = nlo;
            hi[i] = nhi;
            width = width.max(nhi - nlo);
        }
        if width < tol {
            break;
        }
    }
    best.map(|(_, p, v)| (p, v))
}

/// Independent two-set distance oracle: a 2-D grid over both sets'
/// parameterizations, refined around the best pair. Only sets with a 1-D
/// parameterization (geodesics and segments) are supported.
pub fn grid_set_distance(
    a: &ConvexSet,
    b: &ConvexSet,
    tol: f64,
) -> Result<(f64, (Point, Point))> {
    let wa = a.witness();
    let wb = b.witness();
    let ca = curve_of(a, &wb)?
        .ok_or_else(|| Error::Unsupported("first set has no 1-D parameterization".into()))?;
    let cb = curve_of(b, &wa)?
        .ok_or_else(|| Error::Unsupported("second set has no 1-D parameterization".into()))?;

    const N: usize = 32;
    let (mut alo, mut ahi) = (ca.lo, ca.hi);
    let (mut blo, mut bhi) = (cb.lo, cb.hi);
    let mut best: Option<(f64, f64, f64, Point, Point)> = None;
    for _ in 0..220 {
        let astep = (ahi - alo) / N as f64;
        let bstep = (bhi - blo) / N as f64;
        for i in 0..=N {
            let u = alo + astep * i as f64;
            let Some(pa) = (ca.eval)(u) else { continue };
            for j in 0..=N {
                let v = blo + bstep * j as f64;
                let Some(pb) = (cb.eval)(v) else { continue };
                let d = distance(&pa, &pb)?;
                if best.as_ref().map_or(true, |(_, _, bd, _, _)| d < *bd) {
                    best = Some((u, v, d, pa.clone(), pb.clone()));
                }
            }
        }
        let Some((u, v)) = best.as_ref().map(|(u, v, _, _, _)| (*u, *v)) else {
            return Err(Error::Unsupported("empty parameterizations".into()));
        };
        alo = (u - 2.5 * astep).max(alo);
        ahi = (u + 2.5 * astep).min(ahi);
        blo = (v - 2.5 * bstep).max(blo);
        bhi = (v + 2.5 * bstep).min(bhi);
        if (ahi - alo).max(bhi - blo) < tol {
            break;
        }
    }
    let (_, _, d, pa, pb) = best.expect("grid visited at least one pair");
    Ok((d, (pa, pb)))
}
