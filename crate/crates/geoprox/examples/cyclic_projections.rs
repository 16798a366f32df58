//! Cyclic projections onto finitely many convex sets with a common point:
//! the iterates converge into the intersection, and the per-mapping
//! residuals decay along the way.
//!
//! ```bash
//! cargo run --example cyclic_projections
//! ```

use geoprox::geometry::distance;
use geoprox::iteration::{run_cyclic, CyclicProblem};
use geoprox::operators::Mapping;
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space};

fn main() -> geoprox::Result<()> {
    // Three sets in the plane sharing the origin: a line, a half-space
    // boundary and a ball.
    let e = Space::euclidean(2)?;
    let p = |x: f64, y: f64| Point::euclidean(&e, vec![x, y]).unwrap();
    let sets = vec![
        ConvexSet::geodesic_line(&p(0.0, 0.0), &p(1.0, 0.4))?,
        ConvexSet::half_space(&e, vec![1.0, 1.0], 0.0)?,
        ConvexSet::ball(&p(0.1, -0.1), 0.5)?,
    ];
    let mut prob = CyclicProblem::new(
        sets.iter().cloned().map(Mapping::projection).collect(),
        p(2.0, 1.5),
    );
    prob.stop_tol = 1e-12;
    prob.max_steps = 10_000;

    let trace = run_cyclic(&prob)?;
    println!("euclidean plane, 3 sets: terminated {:?}", trace.termination);
    println!("  iterations: {}", trace.len() - 1);
    println!("  final point: {:?}", trace.final_point().coord_vec());
    for (i, set) in sets.iter().enumerate() {
        println!("  dist to set {i}: {:.3e}", set.dist_to_point(trace.final_point())?);
    }

    // The same story on the hyperbolic half-plane: two geodesics crossing
    // at (0, 1).
    let h = Space::half_plane();
    let a = ConvexSet::vertical_line(&h, 0.0)?;
    let b = ConvexSet::semicircle(&h, 1.0, 2f64.sqrt())?;
    let crossing = Point::half_plane(&h, 0.0, 1.0)?;
    let mut prob = CyclicProblem::new(
        vec![Mapping::projection(a), Mapping::projection(b)],
        Point::half_plane(&h, 2.5, 0.4)?,
    );
    prob.stop_tol = 1e-12;
    prob.reference = Some(crossing.clone());

    let trace = run_cyclic(&prob)?;
    println!("\nhalf-plane, 2 geodesics: terminated {:?}", trace.termination);
    println!("  step sizes every 4 cycles:");
    for n in (0..trace.steps.len().min(40)).step_by(8) {
        println!("    n = {n:3}   d(x_n, x_n+1) = {:.3e}", trace.steps[n]);
    }
    println!(
        "  distance to the crossing: {:.3e}",
        distance(trace.final_point(), &crossing)?
    );
    Ok(())
}
