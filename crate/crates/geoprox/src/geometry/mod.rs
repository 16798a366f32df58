//! Model geodesic spaces: distance, geodesic interpolation, convexity
//! parameters, samplers, and verifiers for the defining inequalities.
//!
//! Four models are provided:
//!
//! * `Euclidean(dim)` — flat space, the baseline CAT(0) model;
//! * `HalfPlane` — the Poincaré upper half-plane (curvature -1);
//! * `MetricTree` — a finite metric tree (CAT(0), branching);
//! * `SphericalCap` — a cap of the round sphere of curvature `kappa`,
//!   the positively curved CAT(kappa) model.
//!
//! The first three are 2-uniformly convex with parameter `c = 2`; the cap
//! carries the constant `c = (pi - 2 sqrt(kappa) eps) * tan(sqrt(kappa) eps)`
//! with `eps = pi / (2 sqrt(kappa)) - D`, the largest admissible choice for
//! a diameter bound `D`.

mod halfplane;
pub(crate) mod sphere;
mod tree;

pub use tree::{TreePos, TreeSpec};

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use halfplane::Carrier;

/// Which model space, plus any model parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Euclidean { dim: usize },
    HalfPlane,
    MetricTree(TreeSpec),
    SphericalCap { kappa: f64, diameter: f64 },
}

#[derive(Debug)]
struct SpaceData {
    model: Model,
    p: f64,
    c: f64,
}

/// A model space together with its uniform-convexity exponent `p` and
/// parameter `c`. Cheap to clone; all state is immutable and shared.
#[derive(Debug, Clone)]
pub struct Space(Arc<SpaceData>);

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.model == other.0.model
                && self.0.p == other.0.p
                && self.0.c == other.0.c)
    }
}

/// The convexity parameter of a spherical cap of curvature `kappa` with
/// diameter bound `diameter`, using the largest admissible margin
/// `eps = pi/(2 sqrt(kappa)) - diameter`.
pub fn cap_convexity_parameter(kappa: f64, diameter: f64) -> f64 {
    let sk = kappa.sqrt();
    let eps = PI / (2.0 * sk) - diameter;
    (PI - 2.0 * sk * eps) * (sk * eps).tan()
}

impl Space {
    pub fn euclidean(dim: usize) -> Result<Space> {
        if dim == 0 {
            return Err(Error::domain("euclidean dimension must be positive"));
        }
        Ok(Space(Arc::new(SpaceData { model: Model::Euclidean { dim }, p: 2.0, c: 2.0 })))
    }

    pub fn half_plane() -> Space {
        Space(Arc::new(SpaceData { model: Model::HalfPlane, p: 2.0, c: 2.0 }))
    }

    pub fn metric_tree(tree: TreeSpec) -> Space {
        Space(Arc::new(SpaceData { model: Model::MetricTree(tree), p: 2.0, c: 2.0 }))
    }

    /// A cap of the sphere of curvature `kappa > 0`, admitting points within
    /// metric distance `diameter / 2` of the cap center so that the region's
    /// diameter stays below `diameter < pi / (2 sqrt(kappa))`.
    pub fn spherical_cap(kappa: f64, diameter: f64) -> Result<Space> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::domain("curvature kappa must be positive"));
        }
        let limit = PI / (2.0 * kappa.sqrt());
        if !(diameter > 0.0) || diameter >= limit {
            return Err(Error::domain(format!(
                "diameter bound must lie in (0, {limit}) for kappa = {kappa}"
            )));
        }
        let c = cap_convexity_parameter(kappa, diameter);
        Ok(Space(Arc::new(SpaceData {
            model: Model::SphericalCap { kappa, diameter },
            p: 2.0,
            c,
        })))
    }

    pub fn model(&self) -> &Model {
        &self.0.model
    }

    /// Uniform-convexity exponent.
    pub fn p(&self) -> f64 {
        self.0.p
    }

    /// Uniform-convexity parameter.
    pub fn c(&self) -> f64 {
        self.0.c
    }

    /// Whether the model has curvature bounded above by zero.
    pub fn is_cat0(&self) -> bool {
        !matches!(self.0.model, Model::SphericalCap { .. })
    }

    /// Angular radius of the admissible cap (spherical model only).
    pub(crate) fn cap_angular_radius(&self) -> Option<f64> {
        match self.0.model {
            Model::SphericalCap { kappa, diameter } => Some(kappa.sqrt() * diameter / 2.0),
            _ => None,
        }
    }

    pub(crate) fn tree(&self) -> Option<&TreeSpec> {
        match &self.0.model {
            Model::MetricTree(t) => Some(t),
            _ => None,
        }
    }
}

/// Coordinates of a point in its model space.
#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Euclidean(Vec<f64>),
    HalfPlane { x: f64, y: f64 },
    Tree(TreePos),
    Sphere([f64; 3]),
}

/// A point tagged with the space it lives in.
#[derive(Debug, Clone)]
pub struct Point {
    space: Space,
    coords: Coords,
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.coords == other.coords
    }
}

impl Point {
    pub fn euclidean(space: &Space, coords: Vec<f64>) -> Result<Point> {
        match space.model() {
            Model::Euclidean { dim } => {
                if coords.len() != *dim {
                    return Err(Error::domain(format!(
                        "expected {dim} coordinates, got {}",
                        coords.len()
                    )));
                }
                if coords.iter().any(|v| !v.is_finite()) {
                    return Err(Error::domain("coordinates must be finite"));
                }
                Ok(Point { space: space.clone(), coords: Coords::Euclidean(coords) })
            }
            _ => Err(Error::mismatch("euclidean coordinates in a non-euclidean space")),
        }
    }

    pub fn half_plane(space: &Space, x: f64, y: f64) -> Result<Point> {
        match space.model() {
            Model::HalfPlane => {
                if !x.is_finite() || !y.is_finite() || !(y > 0.0) {
                    return Err(Error::domain(
                        "half-plane points need finite x and strictly positive y",
                    ));
                }
                Ok(Point { space: space.clone(), coords: Coords::HalfPlane { x, y } })
            }
            _ => Err(Error::mismatch("half-plane coordinates in a different space")),
        }
    }

    pub fn tree(space: &Space, pos: TreePos) -> Result<Point> {
        match space.model() {
            Model::MetricTree(t) => {
                t.validate_pos(pos)?;
                Ok(Point { space: space.clone(), coords: Coords::Tree(pos) })
            }
            _ => Err(Error::mismatch("tree coordinates in a different space")),
        }
    }

    pub fn tree_vertex(space: &Space, v: usize) -> Result<Point> {
        match space.model() {
            Model::MetricTree(t) => {
                if v >= t.n_vertices() {
                    return Err(Error::domain(format!("vertex {v} out of range")));
                }
                Ok(Point { space: space.clone(), coords: Coords::Tree(t.vertex_pos(v)) })
            }
            _ => Err(Error::mismatch("tree coordinates in a different space")),
        }
    }

    pub fn spherical(space: &Space, coords: [f64; 3]) -> Result<Point> {
        match space.model() {
            Model::SphericalCap { .. } => {
                let n = sphere::norm(&coords);
                if (n - 1.0).abs() > 1e-12 {
                    return Err(Error::domain(format!(
                        "spherical points must be unit vectors (norm {n})"
                    )));
                }
                let rho = space.cap_angular_radius().unwrap();
                let theta = sphere::angle(&coords, &sphere::POLE);
                if theta > rho + 1e-9 {
                    return Err(Error::domain(format!(
                        "point at angle {theta} from the cap center exceeds the cap radius {rho}"
                    )));
                }
                Ok(Point { space: space.clone(), coords: Coords::Sphere(coords) })
            }
            _ => Err(Error::mismatch("spherical coordinates in a different space")),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    /// Flat coordinate vector, used for CSV export and plotting.
    pub fn coord_vec(&self) -> Vec<f64> {
        match &self.coords {
            Coords::Euclidean(v) => v.clone(),
            Coords::HalfPlane { x, y } => vec![*x, *y],
            Coords::Tree(pos) => vec![pos.edge as f64, pos.offset],
            Coords::Sphere(v) => v.to_vec(),
        }
    }

    pub fn as_euclidean(&self) -> Option<&[f64]> {
        match &self.coords {
            Coords::Euclidean(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_half_plane(&self) -> Option<(f64, f64)> {
        match self.coords {
            Coords::HalfPlane { x, y } => Some((x, y)),
            _ => None,
        }
    }

    pub fn as_tree(&self) -> Option<TreePos> {
        match self.coords {
            Coords::Tree(pos) => Some(pos),
            _ => None,
        }
    }

    pub fn as_sphere(&self) -> Option<[f64; 3]> {
        match self.coords {
            Coords::Sphere(v) => Some(v),
            _ => None,
        }
    }
}

pub(crate) fn require_same_space(a: &Point, b: &Point) -> Result<()> {
    if a.space == b.space {
        Ok(())
    } else {
        Err(Error::mismatch("points belong to different spaces"))
    }
}

/// Geodesic distance between two points of the same space.
pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    require_same_space(a, b)?;
    Ok(match (&a.coords, &b.coords) {
        (Coords::Euclidean(u), Coords::Euclidean(v)) => {
            u.iter().zip(v).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        }
        (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
            halfplane::distance(*x1, *y1, *x2, *y2)
        }
        (Coords::Tree(p), Coords::Tree(q)) => a.space.tree().unwrap().distance(*p, *q),
        (Coords::Sphere(u), Coords::Sphere(v)) => {
            let Model::SphericalCap { kappa, .. } = a.space.model() else { unreachable!() };
            sphere::angle(u, v) / kappa.sqrt()
        }
        _ => return Err(Error::mismatch("mixed coordinate kinds")),
    })
}

/// Interpolation along the unique geodesic without the `[0,1]` check;
/// callers guarantee `t` keeps the point inside the model's domain.
pub(crate) fn interpolate_unchecked(a: &Point, b: &Point, t: f64) -> Result<Point> {
    require_same_space(a, b)?;
    let space = a.space.clone();
    let coords = match (&a.coords, &b.coords) {
        (Coords::Euclidean(u), Coords::Euclidean(v)) => Coords::Euclidean(
            u.iter().zip(v).map(|(x, y)| (1.0 - t) * x + t * y).collect(),
        ),
        (Coords::HalfPlane { x: x1, y: y1 }, Coords::HalfPlane { x: x2, y: y2 }) => {
            let (x, y) = halfplane::interpolate(*x1, *y1, *x2, *y2, t);
            Coords::HalfPlane { x, y }
        }
        (Coords::Tree(p), Coords::Tree(q)) => {
            Coords::Tree(space.tree().unwrap().interpolate(*p, *q, t))
        }
        (Coords::Sphere(u), Coords::Sphere(v)) => Coords::Sphere(sphere::slerp(u, v, t)),
        _ => return Err(Error::mismatch("mixed coordinate kinds")),
    };
    Ok(Point { space, coords })
}

/// The point `z` on the geodesic from `a` to `b` with
/// `d(a, z) = t * d(a, b)`, for `t` in `[0, 1]`.
pub fn geodesic_point(a: &Point, b: &Point, t: f64) -> Result<Point> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("interpolation parameter t = {t} outside [0, 1]")));
    }
    interpolate_unchecked(a, b, t)
}

/// Residual of the p-uniform-convexity inequality at `(x, y, z, t)`:
///
/// `(1-t) d(z,x)^p + t d(z,y)^p - (c/2) t (1-t) d(x,y)^p - d(z, (1-t)x + ty)^p`
///
/// Nonnegative (up to rounding) when the space really is p-uniformly convex
/// with its declared parameter.
pub fn check_puc(x: &Point, y: &Point, z: &Point, t: f64) -> Result<f64> {
    require_same_space(x, y)?;
    require_same_space(x, z)?;
    let space = x.space();
    let p = space.p();
    let c = space.c();
    let mid = geodesic_point(x, y, t)?;
    Ok((1.0 - t) * distance(z, x)?.powf(p) + t * distance(z, y)?.powf(p)
        - 0.5 * c * t * (1.0 - t) * distance(x, y)?.powf(p)
        - distance(z, &mid)?.powf(p))
}

/// Residual of the four-point (Reshetnyak) inequality
///
/// `d(x,v)^2 + d(y,u)^2 + 2 d(x,u) d(y,v) - d(x,y)^2 - d(u,v)^2`
///
/// for CAT(0) models only.
pub fn check_reshetnyak(x: &Point, y: &Point, u: &Point, v: &Point) -> Result<f64> {
    require_same_space(x, y)?;
    require_same_space(x, u)?;
    require_same_space(x, v)?;
    if !x.space().is_cat0() {
        return Err(Error::UnsupportedSpace(
            "the four-point inequality is asserted only on nonpositively curved models".into(),
        ));
    }
    Ok(distance(x, v)?.powi(2) + distance(y, u)?.powi(2)
        + 2.0 * distance(x, u)? * distance(y, v)?
        - distance(x, y)?.powi(2)
        - distance(u, v)?.powi(2))
}

/// Sampling region for [`sample_point`].
#[derive(Debug, Clone, PartialEq)]
pub enum SampleBounds {
    /// Axis-aligned box in Euclidean coordinates.
    EuclideanBox { lo: Vec<f64>, hi: Vec<f64> },
    /// Rectangle in the half-plane chart; the y-range must be positive.
    HalfPlaneBox { x: (f64, f64), y: (f64, f64) },
    /// Uniform (by length) over the whole tree.
    TreeWhole,
    /// Uniform-in-chart over the whole admissible cap.
    CapWhole,
}

impl SampleBounds {
    /// A reasonable default region for each model.
    pub fn default_for(space: &Space) -> SampleBounds {
        match space.model() {
            Model::Euclidean { dim } => SampleBounds::EuclideanBox {
                lo: vec![-1.0; *dim],
                hi: vec![1.0; *dim],
            },
            Model::HalfPlane => SampleBounds::HalfPlaneBox { x: (-2.0, 2.0), y: (0.25, 3.0) },
            Model::MetricTree(_) => SampleBounds::TreeWhole,
            Model::SphericalCap { .. } => SampleBounds::CapWhole,
        }
    }
}

pub(crate) fn sample_with_rng(
    space: &Space,
    rng: &mut ChaCha8Rng,
    bounds: &SampleBounds,
) -> Result<Point> {
    match (space.model(), bounds) {
        (Model::Euclidean { dim }, SampleBounds::EuclideanBox { lo, hi }) => {
            if lo.len() != *dim || hi.len() != *dim {
                return Err(Error::domain("bounds dimension mismatch"));
            }
            if lo.iter().zip(hi).any(|(a, b)| a > b) {
                return Err(Error::domain("empty sampling box"));
            }
            let coords = lo
                .iter()
                .zip(hi)
                .map(|(&a, &b)| if a == b { a } else { rng.gen_range(a..b) })
                .collect();
            Point::euclidean(space, coords)
        }
        (Model::HalfPlane, SampleBounds::HalfPlaneBox { x, y }) => {
            if x.0 > x.1 || y.0 > y.1 || y.0 <= 0.0 {
                return Err(Error::domain("empty or invalid half-plane sampling box"));
            }
            let px = if x.0 == x.1 { x.0 } else { rng.gen_range(x.0..x.1) };
            let py = if y.0 == y.1 { y.0 } else { rng.gen_range(y.0..y.1) };
            Point::half_plane(space, px, py)
        }
        (Model::MetricTree(tree), SampleBounds::TreeWhole) => {
            let total: f64 = tree.edges().iter().map(|e| e.2).sum();
            let mut pick = rng.gen_range(0.0..total);
            for (i, &(_, _, len)) in tree.edges().iter().enumerate() {
                if pick <= len {
                    return Point::tree(space, TreePos { edge: i, offset: pick });
                }
                pick -= len;
            }
            let last = tree.edges().len() - 1;
            Point::tree(space, TreePos { edge: last, offset: tree.edge_len(last) })
        }
        (Model::SphericalCap { .. }, SampleBounds::CapWhole) => {
            let rho = space.cap_angular_radius().unwrap();
            let theta = rng.gen_range(0.0..rho);
            let psi = rng.gen_range(0.0..(2.0 * PI));
            let dir = [psi.cos(), psi.sin(), 0.0];
            Point::spherical(space, sphere::advance(&sphere::POLE, &dir, theta))
        }
        _ => Err(Error::domain("sampling bounds do not match the space's model")),
    }
}

/// Deterministic sample: the same `(space, seed, bounds)` triple always
/// yields the same point.
pub fn sample_point(space: &Space, seed: u64, bounds: &SampleBounds) -> Result<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(space, &mut rng, bounds)
}

/// Deterministic displacement of `p` by arc length exactly `magnitude`
/// (best effort on bounded models) in a pseudo-random geodesic direction
/// drawn from `(seed, stream)`.
pub(crate) fn displace(p: &Point, magnitude: f64, seed: u64, stream: u64) -> Result<Point> {
    if magnitude <= 0.0 {
        return Ok(p.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    match &p.coords {
        Coords::Euclidean(v) => {
            let mut dir: Vec<f64> = (0..v.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let n = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
            if n < 1e-12 {
                dir = vec![0.0; v.len()];
                dir[0] = 1.0;
            } else {
                for d in &mut dir {
                    *d /= n;
                }
            }
            let coords = v.iter().zip(&dir).map(|(x, d)| x + magnitude * d).collect();
            Point::euclidean(&p.space, coords)
        }
        Coords::HalfPlane { x, y } => {
            // Pick a random Euclidean direction, follow the geodesic through
            // it by exact arc length via the carrier parameter.
            let psi = rng.gen_range(0.0..(2.0 * PI));
            let (tx, ty) = (x + 0.5 * y * psi.cos(), y + 0.5 * y * psi.sin());
            let carrier = Carrier::through(*x, *y, tx, ty);
            let u0 = carrier.param(*x, *y);
            let sign = if carrier.param(tx, ty) >= u0 { 1.0 } else { -1.0 };
            let (nx, ny) = carrier.point_at(u0 + sign * magnitude);
            Point::half_plane(&p.space, nx, ny)
        }
        Coords::Tree(pos) => {
            let tree = p.space.tree().unwrap();
            // Aim for sampled targets until one is far enough to realize the
            // magnitude; otherwise move as far as the tree allows.
            let mut best: Option<TreePos> = None;
            for _ in 0..8 {
                let target = sample_with_rng(&p.space, &mut rng, &SampleBounds::TreeWhole)?;
                let tpos = target.as_tree().unwrap();
                let d = tree.distance(*pos, tpos);
                if d >= magnitude {
                    return Point::tree(&p.space, tree.walk(*pos, tpos, magnitude));
                }
                if best.map_or(true, |b| tree.distance(*pos, b) < d) {
                    best = Some(tpos);
                }
            }
            match best {
                Some(b) => Point::tree(&p.space, b),
                None => Ok(p.clone()),
            }
        }
        Coords::Sphere(u) => {
            let Model::SphericalCap { kappa, .. } = p.space.model() else { unreachable!() };
            let rho = p.space.cap_angular_radius().unwrap();
            let step = magnitude * kappa.sqrt();
            for _ in 0..16 {
                let psi = rng.gen_range(0.0..(2.0 * PI));
                let e1 = sphere::any_tangent(u);
                let e2 = sphere::cross(u, &e1);
                let dir = sphere::normalize(&sphere::add(
                    &sphere::scale(&e1, psi.cos()),
                    &sphere::scale(&e2, psi.sin()),
                ));
                let cand = sphere::advance(u, &dir, step);
                if sphere::angle(&cand, &sphere::POLE) <= rho {
                    return Point::spherical(&p.space, cand);
                }
            }
            // Fall back to moving toward the cap center.
            match sphere::tangent_toward(u, &sphere::POLE) {
                Some(dir) => Point::spherical(&p.space, sphere::advance(u, &dir, step)),
                None => Ok(p.clone()),
            }
        }
    }
}

/// Dimension of the smooth coordinate chart used by numeric minimizers,
/// or `None` when the model is combinatorial (trees).
pub(crate) fn chart_dim(space: &Space) -> Option<usize> {
    match space.model() {
        Model::Euclidean { dim } => Some(*dim),
        Model::HalfPlane => Some(2),
        Model::MetricTree(_) => None,
        Model::SphericalCap { .. } => Some(2),
    }
}

pub(crate) fn to_chart(p: &Point) -> Option<Vec<f64>> {
    match &p.coords {
        Coords::Euclidean(v) => Some(v.clone()),
        Coords::HalfPlane { x, y } => Some(vec![*x, y.ln()]),
        Coords::Tree(_) => None,
        Coords::Sphere(u) => {
            let theta = sphere::angle(u, &sphere::POLE);
            if theta < 1e-14 {
                return Some(vec![0.0, 0.0]);
            }
            let psi = u[1].atan2(u[0]);
            Some(vec![theta * psi.cos(), theta * psi.sin()])
        }
    }
}

pub(crate) fn from_chart(space: &Space, chart: &[f64]) -> Result<Point> {
    match space.model() {
        Model::Euclidean { .. } => Point::euclidean(space, chart.to_vec()),
        Model::HalfPlane => Point::half_plane(space, chart[0], chart[1].exp()),
        Model::MetricTree(_) => Err(Error::Unsupported("trees have no smooth chart".into())),
        Model::SphericalCap { .. } => {
            let theta = chart[0].hypot(chart[1]);
            let rho = space.cap_angular_radius().unwrap();
            if theta > rho {
                return Err(Error::domain("chart point outside the cap"));
            }
            if theta < 1e-14 {
                return Point::spherical(space, sphere::POLE);
            }
            let dir = [chart[0] / theta, chart[1] / theta, 0.0];
            Point::spherical(space, sphere::advance(&sphere::POLE, &dir, theta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_tree_space() -> Space {
        let tree = TreeSpec::new(
            5,
            vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.5), (1, 4, 0.5)],
        )
        .unwrap();
        Space::metric_tree(tree)
    }

    fn all_spaces() -> Vec<Space> {
        vec![
            Space::euclidean(2).unwrap(),
            Space::half_plane(),
            sample_tree_space(),
            Space::spherical_cap(1.0, 1.2).unwrap(),
        ]
    }

    #[test]
    fn half_plane_distance_examples() {
        let h = Space::half_plane();
        let a = Point::half_plane(&h, 0.0, 1.0).unwrap();
        assert_eq!(distance(&a, &a).unwrap(), 0.0);

        let b = Point::half_plane(&h, 0.0, std::f64::consts::E).unwrap();
        assert!((distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);

        let l = Point::half_plane(&h, -1.0, 1.0).unwrap();
        let r = Point::half_plane(&h, 1.0, 1.0).unwrap();
        let acosh3 = (3.0 + 8f64.sqrt()).ln();
        assert!((distance(&l, &r).unwrap() - acosh3).abs() < 1e-12);
    }

    #[test]
    fn space_mismatch_is_reported() {
        let h = Space::half_plane();
        let e = Space::euclidean(2).unwrap();
        let a = Point::half_plane(&h, 0.0, 1.0).unwrap();
        let b = Point::euclidean(&e, vec![0.0, 1.0]).unwrap();
        assert!(matches!(distance(&a, &b), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn geodesic_endpoints_and_parameter_domain() {
        let h = Space::half_plane();
        let a = Point::half_plane(&h, 0.0, 1.0).unwrap();
        let b = Point::half_plane(&h, 0.0, (2.0f64).exp().powi(1)).unwrap();
        assert_eq!(geodesic_point(&a, &b, 0.0).unwrap(), a);
        assert!(geodesic_point(&a, &b, 1.3).is_err());
        assert!(geodesic_point(&a, &b, -0.1).is_err());
    }

    #[test]
    fn vertical_geodesic_is_log_linear() {
        let h = Space::half_plane();
        let a = Point::half_plane(&h, 0.0, 1.0).unwrap();
        let b = Point::half_plane(&h, 0.0, (2.0f64).exp()).unwrap();
        let m = geodesic_point(&a, &b, 0.5).unwrap();
        let (x, y) = m.as_half_plane().unwrap();
        assert!(x.abs() < 1e-15);
        assert!((y - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn symmetric_arc_midpoint_minimizes_the_maximum_endpoint_distance() {
        let h = Space::half_plane();
        let a = Point::half_plane(&h, -1.0, 1.0).unwrap();
        let b = Point::half_plane(&h, 1.0, 1.0).unwrap();
        let m = geodesic_point(&a, &b, 0.5).unwrap();
        let (x, y) = m.as_half_plane().unwrap();
        assert!(x.abs() < 1e-12);
        assert!((y - 2f64.sqrt()).abs() < 1e-12);

        // Oracle: minimize max(d(z,a), d(z,b)) along the connecting geodesic.
        let mut best = f64::INFINITY;
        let mut best_t = 0.0;
        for k in 0..=10_000 {
            let t = k as f64 / 10_000.0;
            let z = geodesic_point(&a, &b, t).unwrap();
            let v = distance(&z, &a).unwrap().max(distance(&z, &b).unwrap());
            if v < best {
                best = v;
                best_t = t;
            }
        }
        assert!((best_t - 0.5).abs() < 1e-3);
        let at_mid = distance(&m, &a).unwrap().max(distance(&m, &b).unwrap());
        assert!(at_mid <= best + 1e-9);
    }

    #[test]
    fn geodesic_reversal_symmetry() {
        for space in all_spaces() {
            let a = sample_point(&space, 11, &SampleBounds::default_for(&space)).unwrap();
            let b = sample_point(&space, 12, &SampleBounds::default_for(&space)).unwrap();
            for &t in &[0.0, 0.25, 0.5, 0.8, 1.0] {
                let z1 = geodesic_point(&a, &b, t).unwrap();
                let z2 = geodesic_point(&b, &a, 1.0 - t).unwrap();
                assert!(distance(&z1, &z2).unwrap() < 1e-9, "space {:?}", space.model());
            }
        }
    }

    #[test]
    fn geodesic_speed_is_constant() {
        for space in all_spaces() {
            let a = sample_point(&space, 21, &SampleBounds::default_for(&space)).unwrap();
            let b = sample_point(&space, 22, &SampleBounds::default_for(&space)).unwrap();
            let d = distance(&a, &b).unwrap();
            for &(t, s) in &[(0.0, 1.0), (0.2, 0.7), (0.5, 0.55), (0.9, 0.1)] {
                let zt = geodesic_point(&a, &b, t).unwrap();
                let zs = geodesic_point(&a, &b, s).unwrap();
                let dd = distance(&zt, &zs).unwrap();
                assert!(
                    (dd - (t - s).abs() * d).abs() < 1e-9,
                    "space {:?}: |t-s| d = {} vs {}",
                    space.model(),
                    (t - s).abs() * d,
                    dd
                );
            }
        }
    }

    #[test]
    fn puc_residual_vanishes_in_degenerate_configurations() {
        let h = Space::half_plane();
        let x = Point::half_plane(&h, -0.3, 0.8).unwrap();
        let y = Point::half_plane(&h, 0.7, 1.4).unwrap();
        let z = Point::half_plane(&h, 0.1, 2.0).unwrap();
        // t = 0: the comparison point is x itself.
        let r = check_puc(&x, &y, &z, 0.0).unwrap();
        assert!(r.abs() < 1e-12);
        // x = y: the geodesic collapses.
        let r = check_puc(&x, &x, &z, 0.37).unwrap();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn puc_residual_nonnegative_on_random_triples() {
        for space in all_spaces() {
            let bounds = SampleBounds::default_for(&space);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..500 {
                let x = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let y = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let z = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let t = rng.gen_range(0.0..1.0);
                let r = check_puc(&x, &y, &z, t).unwrap();
                assert!(r >= -1e-9, "space {:?}: residual {r}", space.model());
            }
        }
    }

    #[test]
    fn reshetnyak_examples_and_random_quadruples() {
        let e = Space::euclidean(1).unwrap();
        let pt = |v: f64| Point::euclidean(&e, vec![v]).unwrap();
        // Collinear quadruple: 9 + 1 + 2*2*2 - 1 - 1 = 16.
        let r = check_reshetnyak(&pt(0.0), &pt(1.0), &pt(2.0), &pt(3.0)).unwrap();
        assert!((r - 16.0).abs() < 1e-12);
        // All points equal.
        let r = check_reshetnyak(&pt(0.5), &pt(0.5), &pt(0.5), &pt(0.5)).unwrap();
        assert_eq!(r, 0.0);

        for space in [Space::euclidean(2).unwrap(), Space::half_plane(), sample_tree_space()] {
            let bounds = SampleBounds::default_for(&space);
            let mut rng = ChaCha8Rng::seed_from_u64(13);
            for _ in 0..500 {
                let x = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let y = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let u = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let v = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let r = check_reshetnyak(&x, &y, &u, &v).unwrap();
                assert!(r >= -1e-9, "space {:?}: residual {r}", space.model());
            }
        }

        let cap = Space::spherical_cap(1.0, 1.2).unwrap();
        let p = sample_point(&cap, 1, &SampleBounds::CapWhole).unwrap();
        assert!(matches!(
            check_reshetnyak(&p, &p, &p, &p),
            Err(Error::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn triangle_inequality_on_random_triples() {
        for space in all_spaces() {
            let bounds = SampleBounds::default_for(&space);
            let mut rng = ChaCha8Rng::seed_from_u64(31);
            for _ in 0..500 {
                let a = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let b = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let c = sample_with_rng(&space, &mut rng, &bounds).unwrap();
                let ab = distance(&a, &b).unwrap();
                let bc = distance(&b, &c).unwrap();
                let ac = distance(&a, &c).unwrap();
                assert!(ac <= ab + bc + 1e-12, "space {:?}", space.model());
                assert!((ab - distance(&b, &a).unwrap()).abs() == 0.0);
            }
        }
    }

    #[test]
    fn cap_parameter_matches_the_formula() {
        let kappa = 2.0;
        let diameter = 0.5;
        let space = Space::spherical_cap(kappa, diameter).unwrap();
        let sk = kappa.sqrt();
        let eps = PI / (2.0 * sk) - diameter;
        let expect = (PI - 2.0 * sk * eps) * (sk * eps).tan();
        assert_eq!(space.c(), expect);
        assert!(space.c() > 0.0);
        assert_eq!(space.p(), 2.0);

        // Diameter at or past the CAT(kappa) threshold is rejected.
        assert!(Space::spherical_cap(1.0, PI / 2.0).is_err());
        assert!(Space::spherical_cap(1.0, 2.0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_bounds() {
        let e = Space::euclidean(2).unwrap();
        let bounds = SampleBounds::EuclideanBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0] };
        let p = sample_point(&e, 0, &bounds).unwrap();
        let q = sample_point(&e, 0, &bounds).unwrap();
        assert_eq!(p, q);
        let v = p.as_euclidean().unwrap();
        assert!(v.iter().all(|&c| (0.0..=1.0).contains(&c)));

        let h = Space::half_plane();
        for seed in 0..20 {
            let p = sample_point(&h, seed, &SampleBounds::default_for(&h)).unwrap();
            assert!(p.as_half_plane().unwrap().1 > 0.0);
        }

        let bad = SampleBounds::EuclideanBox { lo: vec![1.0, 0.0], hi: vec![0.0, 1.0] };
        assert!(sample_point(&e, 0, &bad).is_err());
    }

    #[test]
    fn displacement_has_exact_magnitude_on_unbounded_models() {
        let h = Space::half_plane();
        let p = Point::half_plane(&h, 0.3, 1.7).unwrap();
        for stream in 0..32 {
            let q = displace(&p, 0.05, 9, stream).unwrap();
            assert!((distance(&p, &q).unwrap() - 0.05).abs() < 1e-10);
        }
        let e = Space::euclidean(3).unwrap();
        let p = Point::euclidean(&e, vec![0.0, 1.0, -2.0]).unwrap();
        let q = displace(&p, 0.25, 9, 4).unwrap();
        assert!((distance(&p, &q).unwrap() - 0.25).abs() < 1e-12);
        // Determinism in (seed, stream).
        assert_eq!(q, displace(&p, 0.25, 9, 4).unwrap());
    }

    #[test]
    fn chart_round_trip() {
        for space in all_spaces() {
            if chart_dim(&space).is_none() {
                continue;
            }
            for seed in 40..48 {
                let p = sample_point(&space, seed, &SampleBounds::default_for(&space)).unwrap();
                let chart = to_chart(&p).unwrap();
                let q = from_chart(&space, &chart).unwrap();
                assert!(distance(&p, &q).unwrap() < 1e-9, "space {:?}", space.model());
            }
        }
    }
}
