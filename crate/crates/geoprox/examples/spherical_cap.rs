//! The positively curved model: a cap of the round sphere, 2-uniformly
//! convex with a curvature- and diameter-dependent parameter c < 2.
//! Projections stop being firmly nonexpansive here, but keep the
//! quasi-contraction property with beta = c/2, which is what the cyclic
//! convergence theory actually needs.
//!
//! ```bash
//! cargo run --example spherical_cap
//! ```

use geoprox::geometry::{cap_convexity_parameter, distance, sample_point, SampleBounds};
use geoprox::iteration::{run_cyclic, CyclicProblem};
use geoprox::operators::{
    falsify_firm_nonexpansive, falsify_p1, falsify_puc, FalsifyOptions, Mapping,
};
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space};

fn main() -> geoprox::Result<()> {
    let kappa = 1.0;
    let diameter = 1.2;
    let space = Space::spherical_cap(kappa, diameter)?;
    println!(
        "cap of curvature {kappa}, diameter bound {diameter}: convexity parameter c = {:.6}",
        space.c()
    );
    assert_eq!(space.c(), cap_convexity_parameter(kappa, diameter));

    let opts = FalsifyOptions { samples: 2_000, ..FalsifyOptions::new(&space) };
    let rep = falsify_puc(&space, &opts)?;
    println!(
        "2-uniform convexity with that c: worst residual {:+.3e} over {} samples",
        rep.worst_residual, rep.samples
    );

    // Two sets through the cap center: a ball and a great-circle arc.
    let pole = Point::spherical(&space, [0.0, 0.0, 1.0])?;
    let tilt = Point::spherical(&space, [0.3f64.sin(), 0.0, 0.3f64.cos()])?;
    let ball = ConvexSet::ball(&tilt, 0.35)?;
    let arc = ConvexSet::geodesic_line(&pole, &Point::spherical(&space, [0.0, 0.25f64.sin(), 0.25f64.cos()])?)?;

    let onto_ball = Mapping::projection(ball.clone());
    let p1 = falsify_p1(&onto_ball, &space, &tilt, 2.0, space.c() / 2.0, &opts)?;
    println!(
        "ball projection quasi-contraction (l=2, beta=c/2): worst residual {:+.3e}",
        p1.worst_residual
    );
    let onto_arc = Mapping::projection(arc.clone());
    let p1 = falsify_p1(&onto_arc, &space, &pole, 2.0, space.c() / 2.0, &opts)?;
    println!(
        "arc projection quasi-contraction (l=2, beta=c/2):  worst residual {:+.3e}",
        p1.worst_residual
    );
    let fne = falsify_firm_nonexpansive(&onto_arc, &space, &opts)?;
    println!(
        "arc projection firm nonexpansivity: {} (worst residual {:+.3e})",
        if fne.passed() { "no witness found" } else { "REFUTED, witness found" },
        fne.worst_residual
    );

    // Cyclic projections still settle on a common point.
    let start = sample_point(&space, 3, &SampleBounds::default_for(&space))?;
    let mut prob = CyclicProblem::new(
        vec![Mapping::projection(ball.clone()), Mapping::projection(arc.clone())],
        start,
    );
    prob.stop_tol = 1e-12;
    let trace = run_cyclic(&prob)?;
    let end = trace.final_point();
    println!(
        "\ncyclic run: {:?} after {} steps, dist to ball {:.2e}, dist to arc {:.2e}",
        trace.termination,
        trace.len() - 1,
        ball.dist_to_point(end)?,
        arc.dist_to_point(end)?
    );
    println!("final point at angle {:.4} from the cap center", distance(end, &pole)?);
    Ok(())
}
