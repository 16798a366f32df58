//! Round-sphere primitives for the CAT(kappa) spherical-cap model.
//!
//! Points are unit vectors in R^3; the metric is the great-circle angle
//! scaled by 1/sqrt(kappa). The admissible region is a cap about the north
//! pole whose metric diameter is bounded by the space's diameter bound, so
//! the cap's angular radius is `sqrt(kappa) * diameter / 2`.

pub(crate) type Vec3 = [f64; 3];

pub(crate) const POLE: Vec3 = [0.0, 0.0, 1.0];

pub(crate) fn dot(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn norm(u: &Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub(crate) fn scale(u: &Vec3, s: f64) -> Vec3 {
    [u[0] * s, u[1] * s, u[2] * s]
}

pub(crate) fn add(u: &Vec3, v: &Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub(crate) fn normalize(u: &Vec3) -> Vec3 {
    scale(u, 1.0 / norm(u))
}

/// Angle between unit vectors, robust near 0 and pi.
pub(crate) fn angle(u: &Vec3, v: &Vec3) -> f64 {
    norm(&cross(u, v)).atan2(dot(u, v))
}

/// Spherical linear interpolation between unit vectors (`t` in [0,1]).
pub(crate) fn slerp(u: &Vec3, v: &Vec3, t: f64) -> Vec3 {
    let theta = angle(u, v);
    if theta < 1e-15 {
        return *u;
    }
    let s = theta.sin();
    let a = ((1.0 - t) * theta).sin() / s;
    let b = (t * theta).sin() / s;
    normalize(&add(&scale(u, a), &scale(v, b)))
}

/// Point at angle `step` from `u` in the tangent direction of unit vector
/// `dir` (assumed orthogonal to `u`). Stays on the sphere for any step.
pub(crate) fn advance(u: &Vec3, dir: &Vec3, step: f64) -> Vec3 {
    normalize(&add(&scale(u, step.cos()), &scale(dir, step.sin())))
}

/// Some unit tangent at `u` (orthogonal to `u`).
pub(crate) fn any_tangent(u: &Vec3) -> Vec3 {
    let probe = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let c = cross(u, &probe);
    normalize(&c)
}

/// Unit tangent at `u` pointing toward `v`, if the two are not parallel.
pub(crate) fn tangent_toward(u: &Vec3, v: &Vec3) -> Option<Vec3> {
    let w = add(v, &scale(u, -dot(u, v)));
    let n = norm(&w);
    if n < 1e-14 {
        None
    } else {
        Some(scale(&w, 1.0 / n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slerp_moves_at_constant_angular_speed() {
        let u = normalize(&[0.2, -0.1, 1.0]);
        let v = normalize(&[-0.3, 0.25, 1.0]);
        let total = angle(&u, &v);
        for k in 0..=8 {
            let t = k as f64 / 8.0;
            let z = slerp(&u, &v, t);
            assert!((angle(&u, &z) - t * total).abs() < 1e-12);
        }
    }

    #[test]
    fn advance_by_known_angle() {
        let u = POLE;
        let dir = [1.0, 0.0, 0.0];
        let z = advance(&u, &dir, 0.3);
        assert!((angle(&u, &z) - 0.3).abs() < 1e-14);
    }
}
