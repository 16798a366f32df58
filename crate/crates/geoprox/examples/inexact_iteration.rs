//! Inexact cyclic iteration under a summable error schedule: every
//! evaluation is displaced by exactly eps_n in a random direction, yet
//! distances to a common fixed point stay almost monotone and the steps
//! still die out. The tail's asymptotic center recovers the limit.
//!
//! ```bash
//! cargo run --example inexact_iteration
//! ```

use geoprox::analysis::asymptotic_center_estimate;
use geoprox::geometry::distance;
use geoprox::iteration::{run_cyclic, CyclicProblem};
use geoprox::operators::Mapping;
use geoprox::sets::ConvexSet;
use geoprox::{ErrorSchedule, Point, Space};

fn main() -> geoprox::Result<()> {
    let h = Space::half_plane();
    let a = ConvexSet::vertical_line(&h, 0.0)?;
    let b = ConvexSet::semicircle(&h, 1.0, 2f64.sqrt())?;
    let q = Point::half_plane(&h, 0.0, 1.0)?; // the crossing

    let mut prob = CyclicProblem::new(
        vec![Mapping::projection(a), Mapping::projection(b)],
        Point::half_plane(&h, 2.0, 0.5)?,
    );
    prob.errors = ErrorSchedule::power_law(0.5, 2.0)?;
    prob.max_steps = 4_000;
    prob.stop_tol = 0.0; // run the whole budget
    prob.seed = 7;
    prob.reference = Some(q.clone());

    let trace = run_cyclic(&prob)?;
    let fejer = trace.fejer.as_ref().unwrap();

    println!("n        eps_n        step          d(q, x_n)");
    for n in [0usize, 1, 2, 4, 8, 16, 64, 256, 1024, 3999] {
        println!(
            "{n:<8} {:<12.3e} {:<13.3e} {:.6e}",
            prob.errors.value(n),
            trace.steps[n.min(trace.steps.len() - 1)],
            fejer[n.min(fejer.len() - 1)],
        );
    }

    // Almost-monotonicity: d(q, x_{n+1}) <= d(q, x_n) + eps_n.
    let mut worst_excess = f64::NEG_INFINITY;
    for n in 0..trace.steps.len() {
        worst_excess = worst_excess.max(fejer[n + 1] - fejer[n] - prob.errors.value(n));
    }
    println!("\nworst fejer excess over the eps_n allowance: {worst_excess:.3e}");
    println!("late-step maximum (last quarter): {:.3e}", trace.max_step_from(3_000).unwrap());

    let tail = &trace.points[trace.points.len() - 200..];
    let (center, radius) = asymptotic_center_estimate(tail, 1e-8)?;
    println!(
        "asymptotic center of the tail: {:?} (radius {radius:.3e}, {:.3e} from the crossing)",
        center.coord_vec(),
        distance(&center, &q)?
    );
    Ok(())
}
