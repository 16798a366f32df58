//! A-priori rate bounds for asymptotic regularity, checked against an
//! actual run: past the bound index, consecutive steps stay below eps.
//!
//! ```bash
//! cargo run --example rate_certificates
//! ```

use geoprox::certificates::{theta2, theta_min, theta_r, validate_certificate};
use geoprox::certificates::{CertContext, RateCertificate};
use geoprox::geometry::distance;
use geoprox::iteration::{run_cyclic, CyclicProblem};
use geoprox::operators::Mapping;
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space};

fn main() -> geoprox::Result<()> {
    // The bound formulas at a glance.
    println!("two-mapping step bound, eps=0.1, b=1, c=2, p=2: {}", theta2(0.1, 1.0, 2.0, 2.0)?);
    println!("three-mapping step bound, same inputs:          {}", theta_r(0.1, 1.0, 2.0, 2.0, 3)?);
    println!("alternating-resolvent bound, lambda=0.5, b=1:   {}", theta_min(0.1, 1.0, 0.0, 0.5)?);

    // Two geodesics meeting at a shallow angle: convergence is slow enough
    // that the bound window is genuinely exercised.
    let h = Space::half_plane();
    let q = Point::half_plane(&h, 0.0, 1.0)?;
    let far = Point::half_plane(&h, 3.0, 1.2)?;
    let nudged = Point::half_plane(&h, 3.0, 1.28)?;
    let a = ConvexSet::geodesic_line(&q, &far)?;
    let b = ConvexSet::geodesic_line(&q, &nudged)?;

    let start = Point::half_plane(&h, 0.21, 1.12)?;
    let bval = distance(&start, &q)? * 1.01;
    let mut prob = CyclicProblem::new(
        vec![Mapping::projection(a), Mapping::projection(b)],
        start,
    );
    prob.stop_tol = 1e-13;
    prob.max_steps = 200_000;

    let trace = run_cyclic(&prob)?;
    println!("\nshallow-angle pair: {} iterations, d(x0, q) <= b = {bval:.4}", trace.len() - 1);
    for eps in [0.2, 0.1, 0.05] {
        let cert = RateCertificate::theta2(eps, bval, h.c(), h.p())?;
        let rep = validate_certificate(&cert, &trace, &CertContext::FixedPoint(&q))?;
        let observed = trace.max_step_from(cert.bound as usize);
        println!(
            "  eps = {eps:<5} bound = {:<7} verdict = {:?}   max step past bound = {}",
            cert.bound,
            rep.verdict,
            observed.map_or("n/a (converged)".into(), |v| format!("{v:.3e}")),
        );
    }
    Ok(())
}
