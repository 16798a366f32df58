//! Sample-based falsifiers for the defining inequalities. They certify
//! "no violation over N samples" with the worst residual seen, and they
//! produce witnesses when an inequality genuinely fails: the doubling
//! square map satisfies the quasi-contraction property with beta = 1/3
//! but not the two-point inequality.
//!
//! ```bash
//! cargo run --example falsifiers
//! ```

use geoprox::operators::{
    check_p1, check_p2, falsify_firm_nonexpansive, falsify_p2, falsify_puc, falsify_reshetnyak,
    FalsifyOptions, FnMap, FunctionSpec, Mapping, PropertyReport,
};
use geoprox::sets::ConvexSet;
use geoprox::{Point, Space};

fn show(label: &str, rep: &PropertyReport) {
    println!(
        "{:44} {} worst residual {:+.3e} over {} samples",
        label,
        if rep.passed() { "ok       " } else { "VIOLATION" },
        rep.worst_residual,
        rep.samples
    );
}

fn main() -> geoprox::Result<()> {
    let h = Space::half_plane();
    let opts = FalsifyOptions { samples: 2_000, ..FalsifyOptions::new(&h) };

    show("half-plane: 2-uniform convexity (c = 2)", &falsify_puc(&h, &opts)?);
    show("half-plane: four-point inequality", &falsify_reshetnyak(&h, &opts)?);

    let geodesic = Mapping::projection(ConvexSet::semicircle(&h, 0.3, 1.3)?);
    show(
        "half-plane: projection firmly nonexpansive",
        &falsify_firm_nonexpansive(&geodesic, &h, &opts)?,
    );
    show("half-plane: projection two-point bound", &falsify_p2(&geodesic, &h, &opts)?);

    let anchor = Point::half_plane(&h, 0.4, 1.5)?;
    let res = Mapping::resolvent(FunctionSpec::HalfSqDistTo(anchor), 0.8)?;
    show(
        "half-plane: resolvent firmly nonexpansive",
        &falsify_firm_nonexpansive(&res, &h, &opts)?,
    );

    // And a mapping where one property holds and the other fails.
    println!("\ndoubling square map T x = 2 x^2 on [-1/4, 1/3]:");
    let e = Space::euclidean(1)?;
    let t = FnMap(|z: &Point| {
        let x = z.as_euclidean().unwrap()[0];
        Point::euclidean(z.space(), vec![2.0 * x * x])
    });
    let p = |v: f64| Point::euclidean(&e, vec![v]).unwrap();
    let zero = p(0.0); // fixed point of T
    let mut worst = f64::INFINITY;
    for k in 0..1000 {
        let x = -0.25 + (0.25 + 1.0 / 3.0) * k as f64 / 999.0;
        worst = worst.min(check_p1(&t, &zero, &p(x), 2.0, 1.0 / 3.0)?);
    }
    println!("  quasi-contraction (l=2, beta=1/3) on a 1000-point grid: worst {worst:+.3e}");
    let violation = check_p2(&t, &p(-0.25), &p(0.0))?;
    println!("  two-point inequality at (-1/4, 0): residual {violation:+.6} -- a witness");
    Ok(())
}
