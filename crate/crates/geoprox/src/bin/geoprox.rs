//! Command-line front end: run experiment configs, print rate bounds,
//! render trace plots, and run the inequality falsifier suites.
//!
//! Exit codes: 0 on success, 1 when a property violation is found
//! (a violated certificate or a falsifier witness), 2 on usage or
//! config errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use geoprox::certificates;
use geoprox::config::ExperimentConfig;
use geoprox::error::Error;
use geoprox::operators::{
    falsify_firm_nonexpansive, falsify_p1, falsify_p2, falsify_puc, falsify_reshetnyak,
    falsify_resolvent_inequality, FalsifyOptions, FunctionSpec, Mapping, PropertyReport,
};
use geoprox::sets::ConvexSet;
use geoprox::{plot, runner, SampleBounds, Space, TreeSpec};

#[derive(Parser)]
#[command(
    name = "geoprox",
    version,
    about = "Iterations of firmly nonexpansive mappings on model geodesic spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment config: writes the trace CSV, a summary, and an
    /// optional SVG. A directory runs every *.conf inside it, dispatched
    /// in parallel. GEOPROX_SEED overrides the config seed.
    Run {
        /// Path to an experiment config file or a directory of them
        config: PathBuf,
        /// Redirect all outputs into this directory (defaults apply when
        /// the config has no [output] section)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Suppress the summary on stdout
        #[arg(long)]
        quiet: bool,
    },
    /// Print a rate-certificate bound.
    ///
    /// Kinds and positional inputs: theta2 EPS B C P; theta-tilde2 EPS B C P;
    /// theta-r EPS B C P R; theta-tilde-r EPS B C P R; theta-min EPS B M LAMBDA
    Rate {
        kind: String,
        #[arg(required = true)]
        inputs: Vec<f64>,
    },
    /// Render a trace CSV over the sets of its experiment config.
    Plot {
        /// Experiment config describing the space and the sets
        #[arg(long)]
        config: PathBuf,
        /// Trace CSV (defaults to the config's trace output path)
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the inequality falsifier suites over random samples.
    Check {
        /// all | euclidean | half-plane | tree | spherical-cap
        #[arg(long, default_value = "all")]
        space: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(violation) => {
            if violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, Error> {
    match cli.cmd {
        Cmd::Run { config, out_dir, quiet } => {
            if config.is_dir() {
                return run_directory(&config, out_dir.as_deref(), quiet);
            }
            let cfg = ExperimentConfig::load(&config)?;
            let outcome = runner::execute(&cfg, out_dir.as_deref())?;
            if !quiet {
                print!("{}", outcome.summary);
            }
            for path in &outcome.written {
                eprintln!("wrote {}", path.display());
            }
            Ok(outcome.violation)
        }
        Cmd::Rate { kind, inputs } => {
            let need = |n: usize| -> Result<(), Error> {
                if inputs.len() == n {
                    Ok(())
                } else {
                    Err(Error::Config(format!(
                        "rate {kind} takes {n} inputs, got {}",
                        inputs.len()
                    )))
                }
            };
            let bound = match kind.as_str() {
                "theta2" => {
                    need(4)?;
                    certificates::theta2(inputs[0], inputs[1], inputs[2], inputs[3])?
                }
                "theta-tilde2" => {
                    need(4)?;
                    certificates::theta_tilde2(inputs[0], inputs[1], inputs[2], inputs[3])?
                }
                "theta-r" => {
                    need(5)?;
                    certificates::theta_r(
                        inputs[0],
                        inputs[1],
                        inputs[2],
                        inputs[3],
                        inputs[4] as u32,
                    )?
                }
                "theta-tilde-r" => {
                    need(5)?;
                    certificates::theta_tilde_r(
                        inputs[0],
                        inputs[1],
                        inputs[2],
                        inputs[3],
                        inputs[4] as u32,
                    )?
                }
                "theta-min" => {
                    need(4)?;
                    certificates::theta_min(inputs[0], inputs[1], inputs[2], inputs[3])?
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown rate kind `{other}` (expected theta2 | theta-tilde2 | \
                         theta-r | theta-tilde-r | theta-min)"
                    )))
                }
            };
            let labels: &[&str] = match kind.as_str() {
                "theta-min" => &["eps", "b", "m", "lambda"],
                "theta-r" | "theta-tilde-r" => &["eps", "b", "c", "p", "r"],
                _ => &["eps", "b", "c", "p"],
            };
            let echo: Vec<String> =
                labels.iter().zip(&inputs).map(|(l, v)| format!("{l}={v}")).collect();
            println!("{kind} {} -> {bound}", echo.join(" "));
            Ok(false)
        }
        Cmd::Plot { config, trace, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let trace_path = trace
                .or_else(|| cfg.output.trace.clone())
                .ok_or_else(|| Error::Config("no trace path given or configured".into()))?;
            let text = std::fs::read_to_string(&trace_path)?;
            let polyline = plot::polyline_from_csv(&text)?;
            let sets = runner::drawable_sets(&cfg);
            let svg = plot::render_polyline(
                &cfg.space,
                &polyline,
                &sets.iter().collect::<Vec<_>>(),
                None,
            )?;
            if let Some(dir) = out.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)?;
                }
            }
            std::fs::write(&out, svg)?;
            eprintln!("wrote {}", out.display());
            Ok(false)
        }
        Cmd::Check { space, samples, seed, tol } => check_suites(&space, samples, seed, tol),
    }
}

/// Runs every `*.conf` under `dir` concurrently; each run is sequential
/// internally and writes under its own subdirectory.
fn run_directory(
    dir: &std::path::Path,
    out_dir: Option<&std::path::Path>,
    quiet: bool,
) -> Result<bool, Error> {
    let mut configs: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    configs.sort();
    if configs.is_empty() {
        return Err(Error::Config(format!("no *.conf files under {}", dir.display())));
    }
    let root = out_dir.unwrap_or_else(|| std::path::Path::new("geoprox-out")).to_path_buf();
    let mut violation = false;
    std::thread::scope(|scope| -> Result<(), Error> {
        let mut handles = Vec::new();
        for path in &configs {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".into());
            let sub = root.join(&stem);
            handles.push((
                stem,
                scope.spawn(move || -> Result<runner::RunOutcome, Error> {
                    let cfg = ExperimentConfig::load(path)?;
                    runner::execute(&cfg, Some(&sub))
                }),
            ));
        }
        for (stem, handle) in handles {
            let outcome = handle.join().expect("run thread panicked")?;
            violation |= outcome.violation;
            if !quiet {
                println!("# {stem}");
                print!("{}", outcome.summary);
                println!();
            }
        }
        Ok(())
    })?;
    Ok(violation)
}

fn report_line(space_name: &str, what: &str, rep: &PropertyReport) -> bool {
    let status = if rep.passed() { "ok       " } else { "VIOLATION" };
    println!(
        "{status} {space_name:13} {what:44} samples={:5} worst_residual={:+.3e}",
        rep.samples, rep.worst_residual
    );
    !rep.passed()
}

fn check_suites(which: &str, samples: usize, seed: u64, tol: f64) -> Result<bool, Error> {
    let tree = || -> Result<Space, Error> {
        Ok(Space::metric_tree(TreeSpec::new(
            6,
            vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.5), (1, 4, 0.5), (2, 5, 0.8)],
        )?))
    };
    let mut spaces: Vec<(&str, Space)> = Vec::new();
    match which {
        "all" => {
            spaces.push(("euclidean", Space::euclidean(2)?));
            spaces.push(("half-plane", Space::half_plane()));
            spaces.push(("tree", tree()?));
            spaces.push(("spherical-cap", Space::spherical_cap(1.0, 1.2)?));
        }
        "euclidean" => spaces.push(("euclidean", Space::euclidean(2)?)),
        "half-plane" => spaces.push(("half-plane", Space::half_plane())),
        "tree" => spaces.push(("tree", tree()?)),
        "spherical-cap" => spaces.push(("spherical-cap", Space::spherical_cap(1.0, 1.2)?)),
        other => return Err(Error::Config(format!("unknown space `{other}`"))),
    }

    let mut violated = false;
    for (name, space) in &spaces {
        let opts = FalsifyOptions { samples, seed, tol, ..FalsifyOptions::new(space) };
        violated |= report_line(name, "p-uniform convexity", &falsify_puc(space, &opts)?);
        if space.is_cat0() {
            violated |=
                report_line(name, "four-point inequality", &falsify_reshetnyak(space, &opts)?);
        }

        // A projection and a resolvent anchored at a sampled point.
        let bounds = SampleBounds::default_for(space);
        let anchor = geoprox::geometry::sample_point(space, seed ^ 0x9e37, &bounds)?;
        let ball = ConvexSet::ball(&anchor, 0.4)?;
        let proj = Mapping::projection(ball.clone());
        violated |= report_line(
            name,
            "projection quasi-contraction (l=2, beta=c/2)",
            &falsify_p1(&proj, space, &anchor, 2.0, space.c() / 2.0, &opts)?,
        );
        if space.is_cat0() {
            // Firm nonexpansivity and the two-point inequality are asserted
            // on nonpositively curved models only.
            violated |= report_line(
                name,
                "projection firmly nonexpansive",
                &falsify_firm_nonexpansive(&proj, space, &opts)?,
            );
            violated |= report_line(
                name,
                "projection two-point contraction",
                &falsify_p2(&proj, space, &opts)?,
            );
            let f = FunctionSpec::HalfSqDistTo(anchor.clone());
            let res = Mapping::resolvent(f.clone(), 0.7)?;
            violated |= report_line(
                name,
                "resolvent firmly nonexpansive",
                &falsify_firm_nonexpansive(&res, space, &opts)?,
            );
            violated |= report_line(
                name,
                "resolvent quasi-contraction (l=2, beta=1)",
                &falsify_p1(&res, space, &anchor, 2.0, 1.0, &opts)?,
            );
            violated |= report_line(
                name,
                "resolvent two-point contraction",
                &falsify_p2(&res, space, &opts)?,
            );
            violated |= report_line(
                name,
                "resolvent descent inequality",
                &falsify_resolvent_inequality(&f, 0.7, space, &opts)?,
            );
        }
    }
    if violated {
        println!("violations found");
    } else {
        println!("all falsifier suites passed");
    }
    Ok(violated)
}
