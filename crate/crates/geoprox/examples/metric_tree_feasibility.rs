//! Feasibility on a metric tree: projections onto subtrees, balls and
//! path segments, run cyclically. Trees are nonpositively curved, so the
//! whole convergence story applies verbatim.
//!
//! ```bash
//! cargo run --example metric_tree_feasibility
//! ```

use geoprox::geometry::distance;
use geoprox::iteration::{run_cyclic, CyclicProblem};
use geoprox::operators::Mapping;
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space, TreePos, TreeSpec};

fn main() -> geoprox::Result<()> {
    //        0 --1.0-- 1 --2.0-- 2 --1.5-- 3
    //                  |         |
    //                 0.5       0.8
    //                  |         |
    //                  4         5
    let tree = TreeSpec::new(
        6,
        vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.5), (1, 4, 0.5), (2, 5, 0.8)],
    )?;
    let space = Space::metric_tree(tree);

    // Both sets contain vertex 1's side of the long edge.
    let spine = ConvexSet::subtree(&space, vec![0, 1, 2])?;
    let ball = ConvexSet::ball(&Point::tree(&space, TreePos { edge: 1, offset: 0.4 })?, 0.9)?;
    let seg = ConvexSet::segment(
        &Point::tree_vertex(&space, 4)?,
        &Point::tree(&space, TreePos { edge: 1, offset: 1.1 })?,
    )?;

    let start = Point::tree_vertex(&space, 3)?; // far leaf
    let mut prob = CyclicProblem::new(
        vec![
            Mapping::projection(spine.clone()),
            Mapping::projection(ball.clone()),
            Mapping::projection(seg.clone()),
        ],
        start,
    );
    prob.stop_tol = 1e-12;

    let trace = run_cyclic(&prob)?;
    let end = trace.final_point();
    println!("terminated {:?} after {} steps", trace.termination, trace.len() - 1);
    println!("final position: edge/offset {:?}", end.coord_vec());
    println!("  dist to subtree:  {:.3e}", spine.dist_to_point(end)?);
    println!("  dist to ball:     {:.3e}", ball.dist_to_point(end)?);
    println!("  dist to segment:  {:.3e}", seg.dist_to_point(end)?);

    // Projection onto a subtree is the gate vertex on the way in.
    let deep = Point::tree(&space, TreePos { edge: 2, offset: 1.2 })?;
    let gate = spine.project(&deep)?;
    println!(
        "\nprojection of a point on the far edge lands on the gate: {:?} at distance {:.3}",
        gate.coord_vec(),
        distance(&deep, &gate)?
    );
    Ok(())
}
