//! Symbolic closed convex sets with membership, distance and metric
//! projection in each model space.
//!
//! Every variant stores a canonical representation chosen so that the
//! projection has a closed form: half-plane geodesics become a vertical
//! or semicircle carrier, Euclidean lines a base point plus unit
//! direction, spherical arcs an anchor plus unit tangent. Balls project
//! radially in every model; subtrees project to their gate vertex.

pub mod oracle;

use crate::error::{Error, Result};
use crate::geometry::sphere;
use crate::geometry::{
    self, distance, interpolate_unchecked, Carrier, Coords, Model, Point, Space, TreePos,
};

/// Canonical description of a closed convex set.
#[derive(Debug, Clone, PartialEq)]
pub enum SetKind {
    /// Complete geodesic: a Euclidean line, a half-plane carrier, or a
    /// great-circle arc clipped to the spherical cap.
    Line(LineRepr),
    /// Geodesic segment between two points (any model).
    Segment { a: Point, b: Point },
    /// Closed metric ball (any model).
    Ball { center: Point, radius: f64 },
    /// `{ x : <normal, x> <= offset }` with unit normal (Euclidean only).
    HalfSpace { normal: Vec<f64>, offset: f64 },
    /// Affine subspace: base point plus orthonormal basis (Euclidean only).
    Affine { base: Point, basis: Vec<Vec<f64>> },
    /// Induced subtree of a metric tree, given by its vertex set.
    Subtree { vertices: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineRepr {
    Euclidean { base: Vec<f64>, dir: Vec<f64> },
    HalfPlane(Carrier),
    /// Great circle through `anchor` with unit tangent `tangent`, clipped
    /// to the admissible cap.
    SphereArc { anchor: [f64; 3], tangent: [f64; 3] },
}

/// A closed convex subset of a model space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSet {
    space: Space,
    kind: SetKind,
}

fn unit(v: &[f64]) -> Result<Vec<f64>> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n < 1e-14 {
        return Err(Error::domain("zero direction vector"));
    }
    Ok(v.iter().map(|x| x / n).collect())
}

impl ConvexSet {
    /// The complete geodesic through two distinct points.
    pub fn geodesic_line(a: &Point, b: &Point) -> Result<ConvexSet> {
        geometry::require_same_space(a, b)?;
        if distance(a, b)? == 0.0 {
            return Err(Error::domain("geodesic line needs two distinct anchors"));
        }
        let space = a.space().clone();
        let kind = match (a.coords(), b.coords()) {
            (Coords::Euclidean(u), Coords::Euclidean(v)) => {
                let dir: Vec<f64> = v.iter().zip(u).map(|(x, y)| x - y).collect();
                SetKind::Line(LineRepr::Euclidean { base: u.clone(), dir: unit(&dir)? })
            }
            (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
                SetKind::Line(LineRepr::HalfPlane(Carrier::through(*x1, *y1, *x2, *y2)))
            }
            (Coords::Sphere(u), Coords::Sphere(v)) => {
                let tangent = sphere::tangent_toward(u, v)
                    .ok_or_else(|| Error::domain("anchors are parallel on the sphere"))?;
                SetKind::Line(LineRepr::SphereArc { anchor: *u, tangent })
            }
            (Coords::Tree(_), Coords::Tree(_)) => {
                return Err(Error::Unsupported(
                    "complete geodesics do not extend in trees; use a segment or subtree".into(),
                ))
            }
            _ => return Err(Error::mismatch("mixed coordinate kinds")),
        };
        Ok(ConvexSet { space, kind })
    }

    /// Half-plane vertical geodesic `x = a`.
    pub fn vertical_line(space: &Space, x: f64) -> Result<ConvexSet> {
        match space.model() {
            Model::HalfPlane => Ok(ConvexSet {
                space: space.clone(),
                kind: SetKind::Line(LineRepr::HalfPlane(Carrier::Vertical { x })),
            }),
            _ => Err(Error::mismatch("vertical lines live in the half-plane")),
        }
    }

    /// Half-plane semicircle geodesic centered at `center` on the real axis.
    pub fn semicircle(space: &Space, center: f64, radius: f64) -> Result<ConvexSet> {
        if !(radius > 0.0) {
            return Err(Error::domain("semicircle radius must be positive"));
        }
        match space.model() {
            Model::HalfPlane => Ok(ConvexSet {
                space: space.clone(),
                kind: SetKind::Line(LineRepr::HalfPlane(Carrier::Semicircle { center, radius })),
            }),
            _ => Err(Error::mismatch("semicircles live in the half-plane")),
        }
    }

    pub fn segment(a: &Point, b: &Point) -> Result<ConvexSet> {
        geometry::require_same_space(a, b)?;
        Ok(ConvexSet {
            space: a.space().clone(),
            kind: SetKind::Segment { a: a.clone(), b: b.clone() },
        })
    }

    pub fn ball(center: &Point, radius: f64) -> Result<ConvexSet> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("ball radius must be positive"));
        }
        Ok(ConvexSet {
            space: center.space().clone(),
            kind: SetKind::Ball { center: center.clone(), radius },
        })
    }

    /// Euclidean half-space `{ x : <normal, x> <= offset }`.
    pub fn half_space(space: &Space, normal: Vec<f64>, offset: f64) -> Result<ConvexSet> {
        let Model::Euclidean { dim } = space.model() else {
            return Err(Error::mismatch("half-spaces live in euclidean space"));
        };
        if normal.len() != *dim {
            return Err(Error::domain("normal dimension mismatch"));
        }
        let scale = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        let n = unit(&normal)?;
        Ok(ConvexSet {
            space: space.clone(),
            kind: SetKind::HalfSpace { normal: n, offset: offset / scale },
        })
    }

    /// Euclidean affine subspace through `base` spanned by `basis`
    /// (orthonormalized here; an empty basis gives the singleton).
    pub fn affine(base: &Point, basis: Vec<Vec<f64>>) -> Result<ConvexSet> {
        let Model::Euclidean { dim } = base.space().model() else {
            return Err(Error::mismatch("affine sets live in euclidean space"));
        };
        let mut ortho: Vec<Vec<f64>> = Vec::new();
        for v in basis {
            if v.len() != *dim {
                return Err(Error::domain("basis vector dimension mismatch"));
            }
            let mut w = v;
            for e in &ortho {
                let dot: f64 = w.iter().zip(e).map(|(a, b)| a * b).sum();
                for (wi, ei) in w.iter_mut().zip(e) {
                    *wi -= dot * ei;
                }
            }
            let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                ortho.push(w.iter().map(|x| x / n).collect());
            }
        }
        Ok(ConvexSet {
            space: base.space().clone(),
            kind: SetKind::Affine { base: base.clone(), basis: ortho },
        })
    }

    /// Induced subtree of a metric tree: the given vertices plus every edge
    /// joining two of them. The vertex set must induce a connected subtree.
    pub fn subtree(space: &Space, mut vertices: Vec<usize>) -> Result<ConvexSet> {
        let Model::MetricTree(tree) = space.model() else {
            return Err(Error::mismatch("subtrees live in metric trees"));
        };
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::domain("subtree needs at least one vertex"));
        }
        if vertices.iter().any(|&v| v >= tree.n_vertices()) {
            return Err(Error::domain("subtree vertex out of range"));
        }
        // Connectivity of the induced subgraph.
        let inset: std::collections::HashSet<usize> = vertices.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![vertices[0]];
        seen.insert(vertices[0]);
        while let Some(u) = stack.pop() {
            for &(a, b, _) in tree.edges() {
                let next = if a == u { b } else if b == u { a } else { continue };
                if inset.contains(&next) && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        if seen.len() != vertices.len() {
            return Err(Error::domain("vertex set does not induce a connected subtree"));
        }
        Ok(ConvexSet { space: space.clone(), kind: SetKind::Subtree { vertices } })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    /// Some point of the set.
    pub fn witness(&self) -> Point {
        match &self.kind {
            SetKind::Line(LineRepr::Euclidean { base, .. }) => {
                Point::euclidean(&self.space, base.clone()).expect("canonical base is valid")
            }
            SetKind::Line(LineRepr::HalfPlane(c)) => {
                let (x, y) = c.point_at(0.0);
                Point::half_plane(&self.space, x, y).expect("carrier point is valid")
            }
            SetKind::Line(LineRepr::SphereArc { anchor, .. }) => {
                Point::spherical(&self.space, *anchor).expect("anchor is valid")
            }
            SetKind::Segment { a, .. } => a.clone(),
            SetKind::Ball { center, .. } => center.clone(),
            SetKind::HalfSpace { normal, offset } => {
                let coords = normal.iter().map(|n| n * offset).collect();
                Point::euclidean(&self.space, coords).expect("boundary point is valid")
            }
            SetKind::Affine { base, .. } => base.clone(),
            SetKind::Subtree { vertices } => {
                Point::tree_vertex(&self.space, vertices[0]).expect("vertex is valid")
            }
        }
    }

    fn check_space(&self, z: &Point) -> Result<()> {
        if *z.space() == self.space {
            Ok(())
        } else {
            Err(Error::mismatch("point and set belong to different spaces"))
        }
    }

    /// Metric projection: the nearest point of the set.
    pub fn project(&self, z: &Point) -> Result<Point> {
        self.check_space(z)?;
        match &self.kind {
            SetKind::Line(repr) => project_line(&self.space, repr, z, None),
            SetKind::Segment { a, b } => project_segment(&self.space, a, b, z),
            SetKind::Ball { center, radius } => {
                let d = distance(center, z)?;
                if d <= *radius {
                    Ok(z.clone())
                } else {
                    interpolate_unchecked(center, z, radius / d)
                }
            }
            SetKind::HalfSpace { normal, offset } => {
                let v = z.as_euclidean().expect("half-space implies euclidean model");
                let slack: f64 = v.iter().zip(normal).map(|(a, b)| a * b).sum::<f64>() - offset;
                if slack <= 0.0 {
                    Ok(z.clone())
                } else {
                    let coords = v.iter().zip(normal).map(|(a, n)| a - slack * n).collect();
                    Point::euclidean(&self.space, coords)
                }
            }
            SetKind::Affine { base, basis } => {
                let v = z.as_euclidean().expect("affine implies euclidean model");
                let b = base.as_euclidean().unwrap();
                let mut out: Vec<f64> = b.to_vec();
                for e in basis {
                    let dot: f64 =
                        v.iter().zip(b).zip(e).map(|((zi, bi), ei)| (zi - bi) * ei).sum();
                    for (oi, ei) in out.iter_mut().zip(e) {
                        *oi += dot * ei;
                    }
                }
                Point::euclidean(&self.space, out)
            }
            SetKind::Subtree { vertices } => {
                let tree = self.space.tree().unwrap();
                let pos = z.as_tree().expect("subtree implies tree model");
                if subtree_contains(tree, vertices, pos) {
                    return Ok(z.clone());
                }
                let (gate, _) = tree
                    .nearest_vertex(pos, vertices)
                    .expect("subtree has at least one vertex");
                Point::tree_vertex(&self.space, gate)
            }
        }
    }

    /// Distance from `z` to the set.
    pub fn dist_to_point(&self, z: &Point) -> Result<f64> {
        distance(z, &self.project(z)?)
    }

    /// Membership up to tolerance: `dist(z, set) <= tol`.
    pub fn contains(&self, z: &Point, tol: f64) -> Result<bool> {
        Ok(self.dist_to_point(z)? <= tol)
    }
}

fn subtree_contains(tree: &crate::geometry::TreeSpec, vertices: &[usize], pos: TreePos) -> bool {
    let (a, b, len) = tree.edges()[pos.edge];
    let has = |v: usize| vertices.binary_search(&v).is_ok();
    if pos.offset == 0.0 {
        return has(a);
    }
    if pos.offset == len {
        return has(b);
    }
    has(a) && has(b)
}

/// Projection onto a complete geodesic; `clamp` restricts the arc-length
/// parameter window (used for segments sharing the same code path).
fn project_line(
    space: &Space,
    repr: &LineRepr,
    z: &Point,
    clamp: Option<(f64, f64)>,
) -> Result<Point> {
    match repr {
        LineRepr::Euclidean { base, dir } => {
            let v = z.as_euclidean().expect("euclidean line implies euclidean model");
            let mut t: f64 = v.iter().zip(base).zip(dir).map(|((zi, bi), di)| (zi - bi) * di).sum();
            if let Some((lo, hi)) = clamp {
                t = t.clamp(lo, hi);
            }
            let coords = base.iter().zip(dir).map(|(b, d)| b + t * d).collect();
            Point::euclidean(space, coords)
        }
        LineRepr::HalfPlane(carrier) => {
            let (x, y) = z.as_half_plane().expect("carrier implies half-plane model");
            let (fx, fy) = carrier.project(x, y);
            match clamp {
                None => Point::half_plane(space, fx, fy),
                Some((lo, hi)) => {
                    let u = carrier.param(fx, fy).clamp(lo, hi);
                    let (cx, cy) = carrier.point_at(u);
                    Point::half_plane(space, cx, cy)
                }
            }
        }
        LineRepr::SphereArc { anchor, tangent } => {
            let u = z.as_sphere().expect("arc implies spherical model");
            let rho = space.cap_angular_radius().unwrap();
            // Foot on the full great circle in the (anchor, tangent) frame.
            let ca = sphere::dot(&u, anchor);
            let ct = sphere::dot(&u, tangent);
            let theta_foot = if ca.abs() < 1e-15 && ct.abs() < 1e-15 {
                0.0 // z is orthogonal to the circle's plane: every point ties
            } else {
                ct.atan2(ca)
            };
            // The in-cap (or in-window) portion of the circle is the angular
            // interval [mid - half, mid + half]; clamp the foot into it.
            let (mid, half) = match clamp {
                Some((lo, hi)) => (0.5 * (lo + hi), 0.5 * (hi - lo)),
                None => {
                    let a = sphere::dot(&sphere::POLE, anchor);
                    let b = sphere::dot(&sphere::POLE, tangent);
                    let c = a.hypot(b);
                    let phi0 = b.atan2(a);
                    let half = (rho.cos() / c).min(1.0).acos();
                    (phi0, half)
                }
            };
            let wrapped =
                (theta_foot - mid + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
                    - std::f64::consts::PI;
            let theta = mid + wrapped.clamp(-half, half);
            let point = sphere::add(
                &sphere::scale(anchor, theta.cos()),
                &sphere::scale(tangent, theta.sin()),
            );
            Point::spherical(space, sphere::normalize(&point))
        }
    }
}

fn project_segment(space: &Space, a: &Point, b: &Point, z: &Point) -> Result<Point> {
    if distance(a, b)? == 0.0 {
        return Ok(a.clone());
    }
    match (a.coords(), b.coords()) {
        (Coords::Euclidean(u), Coords::Euclidean(v)) => {
            let dir: Vec<f64> = v.iter().zip(u).map(|(x, y)| x - y).collect();
            let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            let dir = unit(&dir)?;
            project_line(
                space,
                &LineRepr::Euclidean { base: u.clone(), dir },
                z,
                Some((0.0, len)),
            )
        }
        (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
            let carrier = Carrier::through(*x1, *y1, *x2, *y2);
            let ua = carrier.param(*x1, *y1);
            let ub = carrier.param(*x2, *y2);
            let (lo, hi) = if ua <= ub { (ua, ub) } else { (ub, ua) };
            project_line(space, &LineRepr::HalfPlane(carrier), z, Some((lo, hi)))
        }
        (Coords::Sphere(u), Coords::Sphere(v)) => {
            let tangent = sphere::tangent_toward(u, v)
                .ok_or_else(|| Error::domain("segment endpoints are parallel on the sphere"))?;
            let span = sphere::angle(u, v);
            project_line(
                space,
                &LineRepr::SphereArc { anchor: *u, tangent },
                z,
                Some((0.0, span)),
            )
        }
        (Coords::Tree(pa), Coords::Tree(pb)) => {
            let tree = space.tree().unwrap();
            let pz = z.as_tree().unwrap();
            // Median of (z, a, b): the unique meeting point of the three
            // pairwise paths, at the Gromov product distance from a.
            let dza = tree.distance(pz, *pa);
            let dzb = tree.distance(pz, *pb);
            let dab = tree.distance(*pa, *pb);
            let s = 0.5 * (dza + dab - dzb);
            let pos = tree.walk(*pa, *pb, s.clamp(0.0, dab));
            Point::tree(space, pos)
        }
        _ => Err(Error::mismatch("mixed coordinate kinds")),
    }
}

/// Result of [`set_distance`].
#[derive(Debug, Clone)]
pub struct SetDistance {
    /// Best gap found; the infimum when `attained`.
    pub value: f64,
    /// Realizing pair `(a in A, b in B)` at the reported gap.
    pub pair: (Point, Point),
    /// False when the alternating sequence escaped or stalled, which
    /// happens exactly when no nearest pair exists.
    pub attained: bool,
}

/// Distance between two convex sets by alternating projections, with
/// escape detection for the asymptotic (non-attained) case.
pub fn set_distance(a: &ConvexSet, b: &ConvexSet, tol: f64) -> Result<SetDistance> {
    set_distance_with(a, b, tol, 50.0, 200_000)
}

pub fn set_distance_with(
    a: &ConvexSet,
    b: &ConvexSet,
    tol: f64,
    escape_radius: f64,
    max_iter: usize,
) -> Result<SetDistance> {
    if *a.space() != *b.space() {
        return Err(Error::mismatch("sets belong to different spaces"));
    }
    let start = a.witness();
    let mut x = start.clone();
    let mut y = b.project(&x)?;
    for _ in 0..max_iter {
        let xn = a.project(&y)?;
        let step = distance(&x, &xn)?;
        x = xn;
        y = b.project(&x)?;
        if step < tol / 10.0 {
            return Ok(SetDistance { value: distance(&x, &y)?, pair: (x, y), attained: true });
        }
        if distance(&start, &x)? > escape_radius {
            return Ok(SetDistance { value: distance(&x, &y)?, pair: (x, y), attained: false });
        }
    }
    Ok(SetDistance { value: distance(&x, &y)?, pair: (x, y), attained: false })
}
