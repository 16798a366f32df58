//! Closed-form primitives for the Poincaré upper half-plane.
//!
//! Geodesics are vertical rays and semicircles centered on the real axis.
//! Every geodesic carries a hyperbolic arc-length parameter: `ln y` on a
//! vertical ray, `ln tan(phi/2)` on a semicircle (`phi` the polar angle at
//! the center). Interpolation, projection and clamping all go through that
//! parameter, so distances along a carrier are exact differences.

use num_complex::Complex64;

/// Two x-coordinates closer than this are treated as a vertical geodesic.
pub(crate) const VERTICAL_EPS: f64 = 1e-12;

/// Hyperbolic distance. Written via `asinh` so nearby points do not lose
/// precision the way `arccosh(1 + small)` does.
pub(crate) fn distance(x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let dx = x1 - x2;
    let dy = y1 - y2;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (y1 * y2).sqrt())).asinh()
}

/// Canonical form of a complete half-plane geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    Vertical { x: f64 },
    Semicircle { center: f64, radius: f64 },
}

impl Carrier {
    /// The unique complete geodesic through two distinct points.
    pub(crate) fn through(x1: f64, y1: f64, x2: f64, y2: f64) -> Carrier {
        if (x1 - x2).abs() <= VERTICAL_EPS {
            Carrier::Vertical { x: 0.5 * (x1 + x2) }
        } else {
            let center =
                (x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1) / (2.0 * (x2 - x1));
            let radius = (x1 - center).hypot(y1);
            Carrier::Semicircle { center, radius }
        }
    }

    /// Arc-length coordinate of a point assumed to lie on the carrier.
    pub(crate) fn param(&self, x: f64, y: f64) -> f64 {
        match *self {
            Carrier::Vertical { .. } => y.ln(),
            Carrier::Semicircle { center, .. } => {
                let phi = y.atan2(x - center);
                (phi * 0.5).tan().ln()
            }
        }
    }

    /// Point at a given arc-length coordinate.
    pub(crate) fn point_at(&self, u: f64) -> (f64, f64) {
        match *self {
            Carrier::Vertical { x } => (x, u.exp()),
            Carrier::Semicircle { center, radius } => {
                let phi = 2.0 * u.exp().atan();
                (center + radius * phi.cos(), radius * phi.sin())
            }
        }
    }

    /// Foot of the metric projection of `(x, y)` onto the carrier.
    pub(crate) fn project(&self, x: f64, y: f64) -> (f64, f64) {
        match *self {
            Carrier::Vertical { x: a } => (a, (x - a).hypot(y)),
            Carrier::Semicircle { center, radius } => {
                // Conjugate by the Möbius map sending the semicircle's ideal
                // endpoints to 0 and infinity; the carrier becomes the
                // imaginary axis, where the foot is i|w|.
                let p = Complex64::new(center + radius, 0.0);
                let q = Complex64::new(center - radius, 0.0);
                let z = Complex64::new(x, y);
                let w = (z - p) / (z - q);
                let foot = Complex64::new(0.0, w.norm());
                let back = (q * foot - p) / (foot - Complex64::new(1.0, 0.0));
                (back.re, back.im)
            }
        }
    }
}

/// Geodesic interpolation: the point at fraction `t` of the way from
/// `(x1,y1)` to `(x2,y2)` in arc length. `t` may lie outside `[0,1]`, in
/// which case the geodesic is extended.
pub(crate) fn interpolate(x1: f64, y1: f64, x2: f64, y2: f64, t: f64) -> (f64, f64) {
    if x1 == x2 && y1 == y2 {
        return (x1, y1);
    }
    let carrier = Carrier::through(x1, y1, x2, y2);
    let u1 = carrier.param(x1, y1);
    let u2 = carrier.param(x2, y2);
    carrier.point_at(u1 + t * (u2 - u1))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Simpson quadrature of the length element ds = d(phi)/sin(phi) along a
    // semicircular carrier (the radius cancels): an oracle independent of
    // the closed form.
    fn arc_length_quadrature(center: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
        let phi1 = y1.atan2(x1 - center);
        let phi2 = y2.atan2(x2 - center);
        let (lo, hi) = if phi1 < phi2 { (phi1, phi2) } else { (phi2, phi1) };
        let n = 20_000;
        let h = (hi - lo) / n as f64;
        let f = |phi: f64| 1.0 / phi.sin();
        let mut acc = f(lo) + f(hi);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(lo + k as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn distance_matches_semicircle_quadrature() {
        // (-1,1) -- (1,1): carrier is the semicircle centered 0, radius sqrt(2).
        let d = distance(-1.0, 1.0, 1.0, 1.0);
        let oracle = arc_length_quadrature(0.0, -1.0, 1.0, 1.0, 1.0);
        assert!((d - oracle).abs() < 1e-9, "closed form {d} vs quadrature {oracle}");
        // Same value as arccosh(3).
        let acosh3 = (3.0 + 8f64.sqrt()).ln();
        assert!((d - acosh3).abs() < 1e-12);
    }

    #[test]
    fn vertical_distance_is_log_ratio() {
        assert_eq!(distance(0.0, 1.0, 0.0, 1.0), 0.0);
        let d = distance(0.0, 1.0, 0.0, std::f64::consts::E);
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interpolation_bisects_the_symmetric_arc() {
        let (x, y) = interpolate(-1.0, 1.0, 1.0, 1.0, 0.5);
        assert!(x.abs() < 1e-12);
        assert!((y - 2f64.sqrt()).abs() < 1e-12);
        // Midpoint is equidistant from both ends.
        let da = distance(x, y, -1.0, 1.0);
        let db = distance(x, y, 1.0, 1.0);
        assert!((da - db).abs() < 1e-12);
    }

    #[test]
    fn projection_onto_semicircle_is_nearest_on_a_fine_grid() {
        let carrier = Carrier::Semicircle { center: 0.0, radius: 1.0 };
        let (px, py) = carrier.project(0.0, 2.0);
        assert!((px - 0.0).abs() < 1e-10 && (py - 1.0).abs() < 1e-10);

        // Grid oracle along the carrier for an asymmetric point.
        let (qx, qy) = carrier.project(0.7, 1.9);
        let dq = distance(0.7, 1.9, qx, qy);
        let mut best = f64::INFINITY;
        for k in 0..200_000 {
            let u = -8.0 + 16.0 * k as f64 / 199_999.0;
            let (cx, cy) = carrier.point_at(u);
            best = best.min(distance(0.7, 1.9, cx, cy));
        }
        assert!(dq <= best + 1e-8, "foot {dq} vs grid {best}");
    }
}
