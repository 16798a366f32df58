//! The three outcomes of alternating projections between two half-plane
//! geodesics: a common point, a best-approximation pair, or divergence.
//! Runs the bundled configs and writes an SVG for each regime.
//!
//! ```bash
//! cargo run --example three_regimes
//! ```

use geoprox::analysis::Regime;
use geoprox::config::ExperimentConfig;
use geoprox::runner;

fn main() -> geoprox::Result<()> {
    let configs = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let out_root = std::path::Path::new("target/three_regimes");
    for name in ["halfplane-intersecting", "halfplane-gap", "halfplane-asymptotic"] {
        let cfg = ExperimentConfig::load(&configs.join(format!("{name}.conf")))?;
        let out = runner::execute(&cfg, Some(&out_root.join(name)))?;
        let regime = match out.verdict.as_ref().map(|v| &v.regime) {
            Some(Regime::CommonFixedPoint) => "common fixed point".to_string(),
            Some(Regime::BestApproximationPair { value, .. }) => {
                format!("best approximation pair, gap {value:.12}")
            }
            Some(Regime::Divergent) => "divergent (unbounded iterates)".to_string(),
            None => "unclassified".to_string(),
        };
        println!("{name:28} -> {regime}");
        println!(
            "    {} iterations, termination {:?}",
            out.trace.len() - 1,
            out.trace.termination
        );
        for path in &out.written {
            println!("    wrote {}", path.display());
        }
    }
    println!("\nopen the run.svg files under target/three_regimes/ to see the paths");
    Ok(())
}
