//! Alternating resolvents for the coupled objective
//! `f(x) + g(y) + d(x,y)^2 / (2 lambda)`: convergence to a solution pair,
//! with the explicit rate bound on both the steps and the objective
//! values. The inconsistent two-set feasibility problem is the indicator
//! special case.
//!
//! ```bash
//! cargo run --example resolvent_splitting
//! ```

use geoprox::analysis::{check_solution_pair, phi, MinProblem};
use geoprox::certificates::{validate_certificate, CertContext, RateCertificate};
use geoprox::iteration::{run_alternating, AlternatingProblem};
use geoprox::operators::{resolve, FunctionSpec, Mapping};
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space};

fn main() -> geoprox::Result<()> {
    // Quadratic pair on the line: stationarity gives x* = 1/3, y* = 2/3.
    let e = Space::euclidean(1)?;
    let p = |v: f64| Point::euclidean(&e, vec![v]).unwrap();
    let prob = MinProblem::new(
        FunctionSpec::HalfSqDistTo(p(0.0)),
        FunctionSpec::HalfSqDistTo(p(1.0)),
        1.0,
    )?;
    let (xs, ys) = check_solution_pair(&prob, &p(1.0 / 3.0), 1e-10)?
        .expect("1/3 is fixed by the composed resolvents");
    println!(
        "quadratic pair: solution x* = {:?}, y* = {:?}, objective {}",
        xs.coord_vec(),
        ys.coord_vec(),
        phi(&prob, &xs, &ys)?
    );

    let start = p(4.0);
    let t1 = Mapping::resolvent(prob.g.clone(), prob.lambda)?;
    let t2 = Mapping::resolvent(prob.f.clone(), prob.lambda)?;
    let mut run = AlternatingProblem::new(t1, t2, start.clone());
    run.stop_tol = 1e-14;
    let trace = run_alternating(&run)?;
    println!("  {} rounds to convergence", trace.len() - 1);

    // Rate bound with b the objective after the first full round.
    let y0 = resolve(&prob.g, prob.lambda, &start)?;
    let x1 = resolve(&prob.f, prob.lambda, &y0)?;
    let b = phi(&prob, &x1, &y0)?;
    for eps in [0.5, 0.1, 0.02] {
        let cert = RateCertificate::theta_min(eps, b, 0.0, prob.lambda)?;
        let rep = validate_certificate(
            &cert,
            &trace,
            &CertContext::Minimization { prob: &prob, solution: Some((&xs, &ys)) },
        )?;
        println!("  eps = {eps:<5} step bound = {:<6} verdict = {:?}", cert.bound, rep.verdict);
    }

    // Indicator pair over disjoint half-plane geodesics: the alternating
    // projection method for the inconsistent feasibility problem.
    let h = Space::half_plane();
    let a = ConvexSet::vertical_line(&h, 0.0)?;
    let b_set = ConvexSet::semicircle(&h, 5.0, 1.0)?;
    let prob = MinProblem::new(
        FunctionSpec::Indicator(a),
        FunctionSpec::Indicator(b_set),
        0.5,
    )?;
    let xs = Point::half_plane(&h, 0.0, 24f64.sqrt())?;
    let (xs, ys) = check_solution_pair(&prob, &xs, 1e-9)?
        .expect("the common perpendicular feet solve the indicator problem");
    let gap = geoprox::geometry::distance(&xs, &ys)?;
    println!("\nindicator pair (disjoint sets): nearest-pair gap {gap:.12}");
    println!("  objective at the solution: {} ( = gap^2 / (2 lambda))", phi(&prob, &xs, &ys)?);

    let t1 = Mapping::resolvent(prob.g.clone(), prob.lambda)?;
    let t2 = Mapping::resolvent(prob.f.clone(), prob.lambda)?;
    let mut run = AlternatingProblem::new(t1, t2, Point::half_plane(&h, 2.0, 0.3)?);
    run.stop_tol = 1e-13;
    let trace = run_alternating(&run)?;
    let fx = trace.final_point();
    let fy = trace.final_y().unwrap();
    println!(
        "  converged in {} rounds to gap {:.12}",
        trace.len() - 1,
        geoprox::geometry::distance(fx, fy)?
    );
    Ok(())
}
