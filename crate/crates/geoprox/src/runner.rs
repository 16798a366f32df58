//! End-to-end execution of parsed experiment configs: run the iteration,
//! classify when applicable, validate requested certificates, and write
//! the trace/summary/SVG artifacts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::analysis::{classify_alternating, phi, Regime, RegimeVerdict};
use crate::certificates::{CertContext, CertReport, RateCertificate};
use crate::config::{CertRequest, ExperimentConfig, OutputConfig, ProblemConfig};
use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::iteration::{run_alternating, run_cyclic, IterationTrace, Termination};
use crate::operators::{resolve, Mapping};
use crate::plot;
use crate::sets::ConvexSet;

/// Environment variable overriding the config seed.
pub const SEED_ENV: &str = "GEOPROX_SEED";

#[derive(Debug)]
pub struct RunOutcome {
    pub trace: IterationTrace,
    pub verdict: Option<RegimeVerdict>,
    pub cert_reports: Vec<(String, CertReport)>,
    pub summary: String,
    /// True when some certificate check came back violated.
    pub violation: bool,
    pub written: Vec<PathBuf>,
}

fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn projection_sets(t1: &Mapping, t2: &Mapping) -> Option<(ConvexSet, ConvexSet)> {
    match (t1, t2) {
        (Mapping::Projection(a), Mapping::Projection(b)) => Some((a.clone(), b.clone())),
        _ => None,
    }
}

/// Runs a config. Output paths are taken from the config's `[output]`
/// section; `out_dir` redirects them (keeping file names) and provides
/// defaults (`trace.csv`, `summary.txt`) when the section is absent.
pub fn execute(cfg: &ExperimentConfig, out_dir: Option<&Path>) -> Result<RunOutcome> {
    let mut cfg = cfg.clone();
    if let Some(seed) = seed_override()? {
        match &mut cfg.problem {
            ProblemConfig::Cyclic(p) => p.seed = seed,
            ProblemConfig::Alternating(p) => p.seed = seed,
            ProblemConfig::Min { run, .. } => run.seed = seed,
        }
    }

    let trace = match &cfg.problem {
        ProblemConfig::Cyclic(p) => run_cyclic(p)?,
        ProblemConfig::Alternating(p) => run_alternating(p)?,
        ProblemConfig::Min { run, .. } => run_alternating(run)?,
    };

    // Regime classification for alternating projection runs.
    let (verdict, verdict_note) = match &cfg.problem {
        ProblemConfig::Alternating(p) => {
            if let Some((a, b)) = projection_sets(&p.t1, &p.t2) {
                let tol = (10.0 * p.stop_tol).max(1e-5);
                match classify_alternating(&trace, &b, &a, tol) {
                    Ok(v) => (Some(v), None),
                    Err(Error::Inconclusive(msg)) => (None, Some(format!("inconclusive: {msg}"))),
                    Err(e) => return Err(e),
                }
            } else {
                (None, None)
            }
        }
        _ => (None, None),
    };

    let mut cert_reports = Vec::new();
    for req in &cfg.certificates {
        let (label, report) = validate_request(&cfg, req, &trace)?;
        cert_reports.push((label, report));
    }
    let violation = cert_reports
        .iter()
        .any(|(_, r)| r.verdict == crate::certificates::CertVerdict::Violated);

    let summary = render_summary(&cfg, &trace, &verdict, verdict_note.as_deref(), &cert_reports)?;

    let output = resolved_output(&cfg.output, out_dir);
    let mut written = Vec::new();
    if let Some(path) = &output.trace {
        trace.write_csv(path)?;
        written.push(path.clone());
    }
    if let Some(path) = &output.trace_y {
        if let Some(ys) = &trace.ys {
            write_companion_csv(path, ys, trace.y_steps.as_deref().unwrap_or(&[]))?;
            written.push(path.clone());
        }
    }
    if let Some(path) = &output.summary {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        std::fs::write(path, &summary)?;
        written.push(path.clone());
    }
    if let Some(path) = &output.svg {
        let sets = drawable_sets(&cfg);
        let svg = plot::render_trace(&trace, &sets.iter().collect::<Vec<_>>(), None)?;
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        std::fs::write(path, svg)?;
        written.push(path.clone());
    }

    Ok(RunOutcome { trace, verdict, cert_reports, summary, violation, written })
}

fn resolved_output(output: &OutputConfig, out_dir: Option<&Path>) -> OutputConfig {
    let Some(dir) = out_dir else { return output.clone() };
    let redirect = |p: &Option<PathBuf>, default: &str, keep_none: bool| -> Option<PathBuf> {
        match p {
            Some(path) => {
                let name = path.file_name().map(PathBuf::from).unwrap_or_else(|| default.into());
                Some(dir.join(name))
            }
            None if !keep_none => Some(dir.join(default)),
            None => None,
        }
    };
    OutputConfig {
        trace: redirect(&output.trace, "trace.csv", false),
        trace_y: redirect(&output.trace_y, "trace_y.csv", true),
        summary: redirect(&output.summary, "summary.txt", false),
        svg: redirect(&output.svg, "run.svg", true),
    }
}

/// Sets worth drawing: the projection targets of the run's mappings.
pub fn drawable_sets(cfg: &ExperimentConfig) -> Vec<ConvexSet> {
    let mut out = Vec::new();
    let mut push = |m: &Mapping| {
        if let Mapping::Projection(set) = m {
            out.push(set.clone());
        } else if let Mapping::Resolvent { f: crate::operators::FunctionSpec::Indicator(set), .. } = m
        {
            out.push(set.clone());
        }
    };
    match &cfg.problem {
        ProblemConfig::Cyclic(p) => p.mappings.iter().for_each(&mut push),
        ProblemConfig::Alternating(p) => {
            push(&p.t1);
            push(&p.t2);
        }
        ProblemConfig::Min { run, .. } => {
            push(&run.t1);
            push(&run.t2);
        }
    }
    out
}

fn validate_request(
    cfg: &ExperimentConfig,
    req: &CertRequest,
    trace: &IterationTrace,
) -> Result<(String, CertReport)> {
    let space = &cfg.space;
    let (c, p) = (space.c(), space.p());
    let x0 = &trace.points[0];
    match req.kind.as_str() {
        "theta2" | "theta-tilde2" | "theta-r" | "theta-tilde-r" => {
            let u = req.fixed_point.as_ref().ok_or_else(|| {
                Error::Config(format!("certificate {} needs key `fixed_point`", req.kind))
            })?;
            let b = match req.b {
                Some(b) => b,
                None => distance(x0, u)? * 1.01,
            };
            let r = match &cfg.problem {
                ProblemConfig::Cyclic(prob) => prob.mappings.len() as u32,
                _ => 2,
            };
            let cert = match req.kind.as_str() {
                "theta2" => RateCertificate::theta2(req.eps, b, c, p)?,
                "theta-tilde2" => RateCertificate::theta_tilde2(req.eps, b, c, p)?,
                "theta-r" => RateCertificate::theta_r(req.eps, b, c, p, r)?,
                _ => RateCertificate::theta_tilde_r(req.eps, b, c, p, r)?,
            };
            let label = format!("{} eps={} b={b} bound={}", req.kind, req.eps, cert.bound);
            let report = validate_certificate(&cert, trace, &CertContext::FixedPoint(u))?;
            Ok((label, report))
        }
        "theta-min" => {
            let ProblemConfig::Min { min, .. } = &cfg.problem else {
                return Err(Error::Config(
                    "certificate theta-min applies to `kind = min` problems".into(),
                ));
            };
            let m = req.m.or(min.lower_bound).ok_or_else(|| {
                Error::Config("certificate theta-min needs `m` or a problem lower_bound".into())
            })?;
            let b = match req.b {
                Some(b) => b,
                None => {
                    let y0 = resolve(&min.g, min.lambda, x0)?;
                    let x1 = resolve(&min.f, min.lambda, &y0)?;
                    phi(min, &x1, &y0)?
                }
            };
            let cert = RateCertificate::theta_min(req.eps, b, m, min.lambda)?;
            let label = format!("theta-min eps={} b={b} m={m} bound={}", req.eps, cert.bound);
            let solution = req.solution.as_ref().map(|(x, y)| (x, y));
            let report = validate_certificate(
                &cert,
                trace,
                &CertContext::Minimization { prob: min, solution },
            )?;
            Ok((label, report))
        }
        other => Err(Error::Config(format!("unknown certificate kind `{other}`"))),
    }
}

use crate::certificates::validate_certificate;

fn render_summary(
    cfg: &ExperimentConfig,
    trace: &IterationTrace,
    verdict: &Option<RegimeVerdict>,
    verdict_note: Option<&str>,
    certs: &[(String, CertReport)],
) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "termination = {}",
        match trace.termination {
            Termination::StepTol => "step-tol".to_string(),
            Termination::MaxSteps => "max-steps".to_string(),
            Termination::Escaped(r) => format!("escaped {r}"),
        }
    );
    let _ = writeln!(out, "iterations = {}", trace.len() - 1);
    if let Some(s) = trace.final_step() {
        let _ = writeln!(out, "final_step = {s}");
    }
    let _ = writeln!(out, "final_point = {}", fmt_coords(trace.final_point()));
    if let Some(y) = trace.final_y() {
        let _ = writeln!(out, "final_y = {}", fmt_coords(y));
        let _ = writeln!(out, "pair_gap = {}", distance(trace.final_point(), y)?);
    }
    let _ = writeln!(
        out,
        "spread = {}",
        distance(&trace.points[0], trace.final_point())?
    );
    match (verdict, verdict_note) {
        (Some(v), _) => {
            let line = match &v.regime {
                Regime::CommonFixedPoint => "common-fixed-point".to_string(),
                Regime::BestApproximationPair { value, .. } => {
                    format!("best-approximation-pair {value}")
                }
                Regime::Divergent => "divergent".to_string(),
            };
            let _ = writeln!(out, "regime = {line}");
        }
        (None, Some(note)) => {
            let _ = writeln!(out, "regime = {note}");
        }
        (None, None) => {}
    }
    if let ProblemConfig::Min { min, .. } = &cfg.problem {
        if let (x, Some(ys)) = (trace.final_point(), trace.ys.as_ref().and_then(|v| v.last())) {
            let _ = writeln!(out, "phi_final = {}", phi(min, x, ys)?);
        }
    }
    for (label, rep) in certs {
        let _ = writeln!(
            out,
            "certificate {label} verdict={} {}",
            match rep.verdict {
                crate::certificates::CertVerdict::Holds => "holds",
                crate::certificates::CertVerdict::Violated => "violated",
                crate::certificates::CertVerdict::Inconclusive => "inconclusive",
            },
            rep.detail
        );
    }
    Ok(out)
}

fn fmt_coords(p: &crate::geometry::Point) -> String {
    p.coord_vec().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_companion_csv(path: &Path, ys: &[crate::geometry::Point], y_steps: &[f64]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let dim = ys.first().map_or(0, |p| p.coord_vec().len());
    let mut out = String::from("n");
    for i in 0..dim {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",step\n");
    for (n, y) in ys.iter().enumerate() {
        let _ = write!(out, "{n}");
        for c in y.coord_vec() {
            let _ = write!(out, ",{c}");
        }
        match y_steps.get(n) {
            Some(s) => {
                let _ = writeln!(out, ",{s}");
            }
            None => {
                let _ = writeln!(out, ",");
            }
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}
