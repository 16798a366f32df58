//! Experiment configuration files.
//!
//! The format is line oriented: `[section]` headers group `key = value`
//! pairs, `#` starts a comment, blank lines are ignored. Sections and
//! repeated keys are ordered. The full grammar, the section vocabulary
//! and every key are documented in the project README; `to_string`
//! emits the canonical form, which re-parses to an equal configuration.

use std::fmt::Write as _;

use crate::analysis::MinProblem;
use crate::error::{Error, Result};
use crate::geometry::{Carrier, Model, Point, Space, TreePos, TreeSpec};
use crate::iteration::{AlternatingProblem, CyclicProblem, ErrorSchedule};
use crate::operators::{FunctionSpec, Mapping};
use crate::sets::{ConvexSet, LineRepr, SetKind};

#[derive(Debug, Clone)]
struct Entry {
    key: String,
    value: String,
    line: usize,
}

#[derive(Debug, Clone)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn parse_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push(Section { name: name.trim().to_string(), line, entries: Vec::new() });
            continue;
        }
        let Some((k, v)) = t.split_once('=') else {
            return Err(Error::Config(format!(
                "line {line}: expected `[section]` or `key = value`, got `{t}`"
            )));
        };
        let entry = Entry {
            key: k.trim().to_string(),
            value: v.split('#').next().unwrap_or("").trim().to_string(),
            line,
        };
        match sections.last_mut() {
            Some(s) => s.entries.push(entry),
            None => {
                return Err(Error::Config(format!(
                    "line {line}: key `{}` appears before any [section]",
                    entry.key
                )))
            }
        }
    }
    Ok(sections)
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }

    fn require(&self, key: &str) -> Result<&Entry> {
        self.get(key).ok_or_else(|| {
            Error::Config(format!(
                "section [{}] (line {}): missing required key `{key}`",
                self.name, self.line
            ))
        })
    }

    fn f64_of(&self, key: &str) -> Result<f64> {
        parse_f64(self.require(key)?)
    }

    fn f64_opt(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            Some(e) => parse_f64(e),
            None => Ok(default),
        }
    }

    fn usize_opt(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            Some(e) => e.value.parse().map_err(|_| bad(e, "an unsigned integer")),
            None => Ok(default),
        }
    }

    fn u64_opt(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            Some(e) => e.value.parse().map_err(|_| bad(e, "an unsigned integer")),
            None => Ok(default),
        }
    }
}

fn bad(e: &Entry, what: &str) -> Error {
    Error::Config(format!(
        "key `{}` (line {}): `{}` is not {what}",
        e.key, e.line, e.value
    ))
}

fn parse_f64(e: &Entry) -> Result<f64> {
    e.value.parse::<f64>().map_err(|_| bad(e, "a number"))
}

fn parse_floats(e: &Entry) -> Result<Vec<f64>> {
    e.value
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| bad(e, "a list of numbers")))
        .collect()
}

fn parse_point(space: &Space, e: &Entry) -> Result<Point> {
    let v = parse_floats(e)?;
    let mk = || -> Result<Point> {
        match space.model() {
            Model::Euclidean { .. } => Point::euclidean(space, v.clone()),
            Model::HalfPlane => {
                if v.len() != 2 {
                    return Err(Error::domain("half-plane points need two coordinates"));
                }
                Point::half_plane(space, v[0], v[1])
            }
            Model::MetricTree(_) => {
                if v.len() != 2 {
                    return Err(Error::domain("tree points need `edge offset`"));
                }
                Point::tree(space, TreePos { edge: v[0] as usize, offset: v[1] })
            }
            Model::SphericalCap { .. } => {
                if v.len() != 3 {
                    return Err(Error::domain("spherical points need three coordinates"));
                }
                Point::spherical(space, [v[0], v[1], v[2]])
            }
        }
    };
    mk().map_err(|err| {
        Error::Config(format!("key `{}` (line {}): {err}", e.key, e.line))
    })
}

fn fmt_floats(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn fmt_point(p: &Point) -> String {
    fmt_floats(&p.coord_vec())
}

/// Where a run writes its artifacts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputConfig {
    pub trace: Option<std::path::PathBuf>,
    /// Companion-sequence trace for alternating runs.
    pub trace_y: Option<std::path::PathBuf>,
    pub summary: Option<std::path::PathBuf>,
    pub svg: Option<std::path::PathBuf>,
}

/// A requested rate certificate, to be validated against the run.
#[derive(Debug, Clone, PartialEq)]
pub struct CertRequest {
    pub kind: String,
    pub eps: f64,
    /// Explicit b; derived from the context when absent (1.01 d(x0, u)
    /// for cycle kinds, the first-round objective for theta-min).
    pub b: Option<f64>,
    pub m: Option<f64>,
    pub fixed_point: Option<Point>,
    pub solution: Option<(Point, Point)>,
}

/// The problem a config describes.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemConfig {
    Cyclic(CyclicProblem),
    Alternating(AlternatingProblem),
    /// Coupled minimization run by alternating the two resolvents.
    Min { min: MinProblem, run: AlternatingProblem },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub space: Space,
    pub problem: ProblemConfig,
    pub certificates: Vec<CertRequest>,
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let sections = parse_sections(text)?;
        let one = |name: &str| -> Result<&Section> {
            let mut found = sections.iter().filter(|s| s.name == name);
            let first = found
                .next()
                .ok_or_else(|| Error::Config(format!("missing required section [{name}]")))?;
            if found.next().is_some() {
                return Err(Error::Config(format!("section [{name}] appears more than once")));
            }
            Ok(first)
        };

        let space = parse_space(one("space")?)?;
        let problem_sec = one("problem")?;
        let mappings: Vec<&Section> = sections.iter().filter(|s| s.name == "mapping").collect();
        let functions: Vec<&Section> = sections.iter().filter(|s| s.name == "function").collect();
        let errors: Vec<&Section> = sections.iter().filter(|s| s.name == "errors").collect();

        let kind = problem_sec.require("kind")?;
        let start = parse_point(&space, problem_sec.require("start")?)?;
        let max_steps = problem_sec.usize_opt("max_steps", 100_000)?;
        let stop_tol = problem_sec.f64_opt("stop_tol", 1e-10)?;
        let escape_radius = problem_sec.f64_opt("escape_radius", 50.0)?;
        let seed = problem_sec.u64_opt("seed", 0)?;
        let thin = problem_sec.usize_opt("thin", 1)?;
        let reference = match problem_sec.get("reference") {
            Some(e) => Some(parse_point(&space, e)?),
            None => None,
        };

        let problem = match kind.value.as_str() {
            "cyclic" => {
                if mappings.is_empty() {
                    return Err(Error::Config(
                        "cyclic problems need at least one [mapping] section".into(),
                    ));
                }
                if errors.len() > 1 {
                    return Err(Error::Config(
                        "cyclic problems take at most one [errors] section".into(),
                    ));
                }
                let mut prob = CyclicProblem::new(
                    mappings
                        .iter()
                        .map(|s| parse_mapping(&space, s))
                        .collect::<Result<Vec<_>>>()?,
                    start,
                );
                prob.errors = match errors.first() {
                    Some(s) => parse_schedule(s)?,
                    None => ErrorSchedule::Zero,
                };
                prob.max_steps = max_steps;
                prob.stop_tol = stop_tol;
                prob.escape_radius = escape_radius;
                prob.seed = seed;
                prob.thin = thin;
                prob.reference = reference;
                ProblemConfig::Cyclic(prob)
            }
            "alternating" => {
                if mappings.len() != 2 {
                    return Err(Error::Config(format!(
                        "alternating problems need exactly two [mapping] sections, got {}",
                        mappings.len()
                    )));
                }
                if errors.len() > 2 {
                    return Err(Error::Config(
                        "alternating problems take at most two [errors] sections".into(),
                    ));
                }
                let t1 = parse_mapping(&space, mappings[0])?;
                let t2 = parse_mapping(&space, mappings[1])?;
                let mut prob = AlternatingProblem::new(t1, t2, start);
                if let Some(s) = errors.first() {
                    prob.eps = parse_schedule(s)?;
                }
                if let Some(s) = errors.get(1) {
                    prob.delta = parse_schedule(s)?;
                }
                prob.max_steps = max_steps;
                prob.stop_tol = stop_tol;
                prob.escape_radius = escape_radius;
                prob.seed = seed;
                prob.thin = thin;
                prob.reference = reference;
                ProblemConfig::Alternating(prob)
            }
            "min" => {
                if functions.len() != 2 {
                    return Err(Error::Config(format!(
                        "min problems need exactly two [function] sections, got {}",
                        functions.len()
                    )));
                }
                let lambda = problem_sec.f64_of("lambda")?;
                if !(lambda > 0.0) {
                    return Err(Error::Config(format!(
                        "key `lambda` (line {}): must be positive, got {lambda}",
                        problem_sec.require("lambda")?.line
                    )));
                }
                let f = parse_function(&space, functions[0])?;
                let g = parse_function(&space, functions[1])?;
                let mut min = MinProblem::new(f, g, lambda)?;
                min.lower_bound = match problem_sec.get("lower_bound") {
                    Some(e) => Some(parse_f64(e)?),
                    None => None,
                };
                let t1 = Mapping::resolvent(min.g.clone(), lambda)?;
                let t2 = Mapping::resolvent(min.f.clone(), lambda)?;
                let mut run = AlternatingProblem::new(t1, t2, start);
                run.max_steps = max_steps;
                run.stop_tol = stop_tol;
                run.escape_radius = escape_radius;
                run.seed = seed;
                run.thin = thin;
                run.reference = reference;
                ProblemConfig::Min { min, run }
            }
            other => {
                return Err(Error::Config(format!(
                    "key `kind` (line {}): unknown problem kind `{other}` \
                     (expected cyclic | alternating | min)",
                    kind.line
                )))
            }
        };

        let certificates = sections
            .iter()
            .filter(|s| s.name == "certificate")
            .map(|s| parse_certificate(&space, s))
            .collect::<Result<Vec<_>>>()?;

        let output = match sections.iter().find(|s| s.name == "output") {
            Some(s) => OutputConfig {
                trace: s.get("trace").map(|e| e.value.clone().into()),
                trace_y: s.get("trace_y").map(|e| e.value.clone().into()),
                summary: s.get("summary").map(|e| e.value.clone().into()),
                svg: s.get("svg").map(|e| e.value.clone().into()),
            },
            None => OutputConfig::default(),
        };

        for s in &sections {
            if !matches!(
                s.name.as_str(),
                "space" | "problem" | "mapping" | "function" | "errors" | "certificate" | "output"
            ) {
                return Err(Error::Config(format!(
                    "line {}: unknown section [{}]",
                    s.line, s.name
                )));
            }
        }

        Ok(ExperimentConfig { space, problem, certificates, output })
    }

    pub fn load(path: &std::path::Path) -> Result<ExperimentConfig> {
        ExperimentConfig::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical serialization; parses back to an equal configuration.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        write_space(&mut out, &self.space);
        match &self.problem {
            ProblemConfig::Cyclic(p) => {
                write_problem_header(&mut out, "cyclic", None, &p.start, p.max_steps, p.stop_tol, p.escape_radius, p.seed, p.thin, p.reference.as_ref());
                for m in &p.mappings {
                    write_mapping(&mut out, m);
                }
                if p.errors != ErrorSchedule::Zero {
                    write_schedule(&mut out, &p.errors);
                }
            }
            ProblemConfig::Alternating(p) => {
                write_problem_header(&mut out, "alternating", None, &p.start, p.max_steps, p.stop_tol, p.escape_radius, p.seed, p.thin, p.reference.as_ref());
                write_mapping(&mut out, &p.t1);
                write_mapping(&mut out, &p.t2);
                if p.eps != ErrorSchedule::Zero || p.delta != ErrorSchedule::Zero {
                    write_schedule(&mut out, &p.eps);
                    write_schedule(&mut out, &p.delta);
                }
            }
            ProblemConfig::Min { min, run } => {
                write_problem_header(&mut out, "min", Some(min), &run.start, run.max_steps, run.stop_tol, run.escape_radius, run.seed, run.thin, run.reference.as_ref());
                write_function(&mut out, &min.f);
                write_function(&mut out, &min.g);
            }
        }
        for c in &self.certificates {
            let _ = writeln!(out, "\n[certificate]");
            let _ = writeln!(out, "kind = {}", c.kind);
            let _ = writeln!(out, "epsilon = {}", c.eps);
            if let Some(b) = c.b {
                let _ = writeln!(out, "b = {b}");
            }
            if let Some(m) = c.m {
                let _ = writeln!(out, "m = {m}");
            }
            if let Some(u) = &c.fixed_point {
                let _ = writeln!(out, "fixed_point = {}", fmt_point(u));
            }
            if let Some((x, y)) = &c.solution {
                let _ = writeln!(out, "solution_x = {}", fmt_point(x));
                let _ = writeln!(out, "solution_y = {}", fmt_point(y));
            }
        }
        let o = &self.output;
        if o.trace.is_some() || o.summary.is_some() || o.svg.is_some() || o.trace_y.is_some() {
            let _ = writeln!(out, "\n[output]");
            for (k, v) in [
                ("trace", &o.trace),
                ("trace_y", &o.trace_y),
                ("summary", &o.summary),
                ("svg", &o.svg),
            ] {
                if let Some(p) = v {
                    let _ = writeln!(out, "{k} = {}", p.display());
                }
            }
        }
        out
    }
}

fn parse_space(s: &Section) -> Result<Space> {
    let model = s.require("model")?;
    match model.value.as_str() {
        "euclidean" => {
            let dim = s.require("dim")?;
            let d: usize = dim.value.parse().map_err(|_| bad(dim, "a positive integer"))?;
            Space::euclidean(d)
        }
        "half-plane" => Ok(Space::half_plane()),
        "tree" => {
            let n = s.require("vertices")?;
            let n: usize = n.value.parse().map_err(|_| bad(n, "a positive integer"))?;
            let mut edges = Vec::new();
            for e in s.get_all("edge") {
                let v = parse_floats(e)?;
                if v.len() != 3 {
                    return Err(bad(e, "a triple `from to length`"));
                }
                edges.push((v[0] as usize, v[1] as usize, v[2]));
            }
            Ok(Space::metric_tree(TreeSpec::new(n, edges)?))
        }
        "spherical-cap" => {
            Space::spherical_cap(s.f64_of("kappa")?, s.f64_of("diameter")?)
        }
        other => Err(Error::Config(format!(
            "key `model` (line {}): unknown model `{other}` \
             (expected euclidean | half-plane | tree | spherical-cap)",
            model.line
        ))),
    }
}

fn parse_set(space: &Space, s: &Section) -> Result<ConvexSet> {
    let kind = s.require("set")?;
    match kind.value.as_str() {
        "vertical-line" => ConvexSet::vertical_line(space, s.f64_of("x")?),
        "semicircle" => ConvexSet::semicircle(space, s.f64_of("center")?, s.f64_of("radius")?),
        "line" => {
            if let (Some(a), Some(b)) = (s.get("anchor_a"), s.get("anchor_b")) {
                return ConvexSet::geodesic_line(
                    &parse_point(space, a)?,
                    &parse_point(space, b)?,
                );
            }
            match space.model() {
                Model::Euclidean { .. } => {
                    let base = parse_point(space, s.require("base")?)?;
                    let dir = parse_floats(s.require("dir")?)?;
                    let far: Vec<f64> = base
                        .as_euclidean()
                        .unwrap()
                        .iter()
                        .zip(&dir)
                        .map(|(b, d)| b + d)
                        .collect();
                    ConvexSet::geodesic_line(&base, &Point::euclidean(space, far)?)
                }
                Model::SphericalCap { .. } => {
                    let a = parse_point(space, s.require("anchor")?)?;
                    let t = parse_floats(s.require("tangent")?)?;
                    if t.len() != 3 {
                        return Err(bad(s.require("tangent")?, "three components"));
                    }
                    sphere_arc_from_tangent(space, &a, [t[0], t[1], t[2]])
                }
                _ => Err(Error::Config(format!(
                    "section [mapping] (line {}): `line` here needs anchor_a and anchor_b",
                    s.line
                ))),
            }
        }
        "segment" => ConvexSet::segment(
            &parse_point(space, s.require("anchor_a")?)?,
            &parse_point(space, s.require("anchor_b")?)?,
        ),
        "ball" => ConvexSet::ball(
            &parse_point(space, s.require("center")?)?,
            s.f64_of("radius")?,
        ),
        "half-space" => ConvexSet::half_space(
            space,
            parse_floats(s.require("normal")?)?,
            s.f64_of("offset")?,
        ),
        "affine" => {
            let base = parse_point(space, s.require("base")?)?;
            let basis = s
                .get_all("basis")
                .map(parse_floats)
                .collect::<Result<Vec<_>>>()?;
            ConvexSet::affine(&base, basis)
        }
        "subtree" => {
            let e = s.require("vertices_in")?;
            let vs = parse_floats(e)?.iter().map(|&v| v as usize).collect();
            ConvexSet::subtree(space, vs)
        }
        other => Err(Error::Config(format!(
            "key `set` (line {}): unknown set kind `{other}`",
            kind.line
        ))),
    }
}

fn sphere_arc_from_tangent(space: &Space, anchor: &Point, tangent: [f64; 3]) -> Result<ConvexSet> {
    // Reconstruct the arc through a nearby second anchor.
    let u = anchor.as_sphere().ok_or_else(|| Error::mismatch("anchor is not spherical"))?;
    let b = crate::geometry::sphere::advance(&u, &tangent, 1e-3);
    ConvexSet::geodesic_line(anchor, &Point::spherical(space, b)?)
}

fn parse_function(space: &Space, s: &Section) -> Result<FunctionSpec> {
    let kind = s.require("kind")?;
    let inner = match kind.value.as_str() {
        "indicator" => FunctionSpec::Indicator(parse_set(space, s)?),
        "dist" => FunctionSpec::DistTo(parse_point(space, s.require("anchor")?)?),
        "half-sq-dist" => FunctionSpec::HalfSqDistTo(parse_point(space, s.require("anchor")?)?),
        other => {
            return Err(Error::Config(format!(
                "key `kind` (line {}): unknown function kind `{other}` \
                 (expected indicator | dist | half-sq-dist)",
                kind.line
            )))
        }
    };
    match s.get("weight") {
        Some(e) => {
            let w = parse_f64(e)?;
            FunctionSpec::scaled(inner, w)
                .map_err(|err| Error::Config(format!("key `weight` (line {}): {err}", e.line)))
        }
        None => Ok(inner),
    }
}

fn parse_mapping(space: &Space, s: &Section) -> Result<Mapping> {
    let kind = s.require("kind")?;
    match kind.value.as_str() {
        "projection" => Ok(Mapping::projection(parse_set(space, s)?)),
        "resolvent" => {
            let lambda_entry = s.require("lambda")?;
            let lambda = parse_f64(lambda_entry)?;
            let f = parse_function_for_resolvent(space, s)?;
            Mapping::resolvent(f, lambda).map_err(|err| {
                Error::Config(format!(
                    "key `lambda` (line {}): {err}",
                    lambda_entry.line
                ))
            })
        }
        other => Err(Error::Config(format!(
            "key `kind` (line {}): unknown mapping kind `{other}` \
             (expected projection | resolvent)",
            kind.line
        ))),
    }
}

fn parse_function_for_resolvent(space: &Space, s: &Section) -> Result<FunctionSpec> {
    let f = s.require("function")?;
    let inner = match f.value.as_str() {
        "indicator" => FunctionSpec::Indicator(parse_set(space, s)?),
        "dist" => FunctionSpec::DistTo(parse_point(space, s.require("anchor")?)?),
        "half-sq-dist" => FunctionSpec::HalfSqDistTo(parse_point(space, s.require("anchor")?)?),
        other => {
            return Err(Error::Config(format!(
                "key `function` (line {}): unknown function kind `{other}`",
                f.line
            )))
        }
    };
    match s.get("weight") {
        Some(e) => FunctionSpec::scaled(inner, parse_f64(e)?)
            .map_err(|err| Error::Config(format!("key `weight` (line {}): {err}", e.line))),
        None => Ok(inner),
    }
}

fn parse_schedule(s: &Section) -> Result<ErrorSchedule> {
    let kind = s.require("kind")?;
    match kind.value.as_str() {
        "zero" => Ok(ErrorSchedule::Zero),
        "power-law" => ErrorSchedule::power_law(s.f64_of("amplitude")?, s.f64_of("exponent")?)
            .map_err(|e| Error::Config(format!("section [errors] (line {}): {e}", s.line))),
        "geometric" => ErrorSchedule::geometric(s.f64_of("amplitude")?, s.f64_of("ratio")?)
            .map_err(|e| Error::Config(format!("section [errors] (line {}): {e}", s.line))),
        "explicit" => {
            let vals = parse_floats(s.require("values")?)?;
            ErrorSchedule::explicit(vals)
                .map_err(|e| Error::Config(format!("section [errors] (line {}): {e}", s.line)))
        }
        other => Err(Error::Config(format!(
            "key `kind` (line {}): unknown schedule kind `{other}`",
            kind.line
        ))),
    }
}

fn parse_certificate(space: &Space, s: &Section) -> Result<CertRequest> {
    let kind = s.require("kind")?;
    let known = ["theta2", "theta-tilde2", "theta-r", "theta-tilde-r", "theta-min"];
    if !known.contains(&kind.value.as_str()) {
        return Err(Error::Config(format!(
            "key `kind` (line {}): unknown certificate kind `{}`",
            kind.line, kind.value
        )));
    }
    let eps = s.f64_of("epsilon")?;
    if !(eps > 0.0) {
        return Err(Error::Config(format!(
            "key `epsilon` (line {}): must be positive",
            s.require("epsilon")?.line
        )));
    }
    let solution = match (s.get("solution_x"), s.get("solution_y")) {
        (Some(x), Some(y)) => Some((parse_point(space, x)?, parse_point(space, y)?)),
        (None, None) => None,
        _ => {
            return Err(Error::Config(format!(
                "section [certificate] (line {}): solution_x and solution_y come together",
                s.line
            )))
        }
    };
    Ok(CertRequest {
        kind: kind.value.clone(),
        eps,
        b: s.get("b").map(parse_f64).transpose()?,
        m: s.get("m").map(parse_f64).transpose()?,
        fixed_point: s.get("fixed_point").map(|e| parse_point(space, e)).transpose()?,
        solution,
    })
}

fn write_space(out: &mut String, space: &Space) {
    let _ = writeln!(out, "[space]");
    match space.model() {
        Model::Euclidean { dim } => {
            let _ = writeln!(out, "model = euclidean");
            let _ = writeln!(out, "dim = {dim}");
        }
        Model::HalfPlane => {
            let _ = writeln!(out, "model = half-plane");
        }
        Model::MetricTree(t) => {
            let _ = writeln!(out, "model = tree");
            let _ = writeln!(out, "vertices = {}", t.n_vertices());
            for &(a, b, len) in t.edges() {
                let _ = writeln!(out, "edge = {a} {b} {len}");
            }
        }
        Model::SphericalCap { kappa, diameter } => {
            let _ = writeln!(out, "model = spherical-cap");
            let _ = writeln!(out, "kappa = {kappa}");
            let _ = writeln!(out, "diameter = {diameter}");
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn write_problem_header(
    out: &mut String,
    kind: &str,
    min: Option<&MinProblem>,
    start: &Point,
    max_steps: usize,
    stop_tol: f64,
    escape_radius: f64,
    seed: u64,
    thin: usize,
    reference: Option<&Point>,
) {
    let _ = writeln!(out, "\n[problem]");
    let _ = writeln!(out, "kind = {kind}");
    let _ = writeln!(out, "start = {}", fmt_point(start));
    if let Some(m) = min {
        let _ = writeln!(out, "lambda = {}", m.lambda);
        if let Some(lb) = m.lower_bound {
            let _ = writeln!(out, "lower_bound = {lb}");
        }
    }
    let _ = writeln!(out, "max_steps = {max_steps}");
    let _ = writeln!(out, "stop_tol = {stop_tol}");
    let _ = writeln!(out, "escape_radius = {escape_radius}");
    let _ = writeln!(out, "seed = {seed}");
    let _ = writeln!(out, "thin = {thin}");
    if let Some(q) = reference {
        let _ = writeln!(out, "reference = {}", fmt_point(q));
    }
}

fn write_set(out: &mut String, set: &ConvexSet) {
    match set.kind() {
        SetKind::Line(LineRepr::HalfPlane(Carrier::Vertical { x })) => {
            let _ = writeln!(out, "set = vertical-line");
            let _ = writeln!(out, "x = {x}");
        }
        SetKind::Line(LineRepr::HalfPlane(Carrier::Semicircle { center, radius })) => {
            let _ = writeln!(out, "set = semicircle");
            let _ = writeln!(out, "center = {center}");
            let _ = writeln!(out, "radius = {radius}");
        }
        SetKind::Line(LineRepr::Euclidean { base, dir }) => {
            let _ = writeln!(out, "set = line");
            let _ = writeln!(out, "base = {}", fmt_floats(base));
            let _ = writeln!(out, "dir = {}", fmt_floats(dir));
        }
        SetKind::Line(LineRepr::SphereArc { anchor, tangent }) => {
            let _ = writeln!(out, "set = line");
            let _ = writeln!(out, "anchor = {}", fmt_floats(anchor));
            let _ = writeln!(out, "tangent = {}", fmt_floats(tangent));
        }
        SetKind::Segment { a, b } => {
            let _ = writeln!(out, "set = segment");
            let _ = writeln!(out, "anchor_a = {}", fmt_point(a));
            let _ = writeln!(out, "anchor_b = {}", fmt_point(b));
        }
        SetKind::Ball { center, radius } => {
            let _ = writeln!(out, "set = ball");
            let _ = writeln!(out, "center = {}", fmt_point(center));
            let _ = writeln!(out, "radius = {radius}");
        }
        SetKind::HalfSpace { normal, offset } => {
            let _ = writeln!(out, "set = half-space");
            let _ = writeln!(out, "normal = {}", fmt_floats(normal));
            let _ = writeln!(out, "offset = {offset}");
        }
        SetKind::Affine { base, basis } => {
            let _ = writeln!(out, "set = affine");
            let _ = writeln!(out, "base = {}", fmt_point(base));
            for b in basis {
                let _ = writeln!(out, "basis = {}", fmt_floats(b));
            }
        }
        SetKind::Subtree { vertices } => {
            let _ = writeln!(out, "set = subtree");
            let _ = writeln!(
                out,
                "vertices_in = {}",
                vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
    }
}

fn write_function_body(out: &mut String, f: &FunctionSpec, key: &str) {
    match f {
        FunctionSpec::Indicator(set) => {
            let _ = writeln!(out, "{key} = indicator");
            write_set(out, set);
        }
        FunctionSpec::DistTo(a) => {
            let _ = writeln!(out, "{key} = dist");
            let _ = writeln!(out, "anchor = {}", fmt_point(a));
        }
        FunctionSpec::HalfSqDistTo(a) => {
            let _ = writeln!(out, "{key} = half-sq-dist");
            let _ = writeln!(out, "anchor = {}", fmt_point(a));
        }
        FunctionSpec::Scaled { inner, weight } => {
            write_function_body(out, inner, key);
            let _ = writeln!(out, "weight = {weight}");
        }
        FunctionSpec::Sum(_) => {
            // Sums are library-only; configs express single terms.
            let _ = writeln!(out, "{key} = unsupported-sum");
        }
    }
}

fn write_function(out: &mut String, f: &FunctionSpec) {
    let _ = writeln!(out, "\n[function]");
    write_function_body(out, f, "kind");
}

fn write_mapping(out: &mut String, m: &Mapping) {
    let _ = writeln!(out, "\n[mapping]");
    match m {
        Mapping::Projection(set) => {
            let _ = writeln!(out, "kind = projection");
            write_set(out, set);
        }
        Mapping::Resolvent { f, lambda } => {
            let _ = writeln!(out, "kind = resolvent");
            let _ = writeln!(out, "lambda = {lambda}");
            write_function_body(out, f, "function");
        }
        Mapping::Composition(_) | Mapping::WithError { .. } => {
            // Library-only variants; the iteration's own error schedules
            // cover the config use cases.
            let _ = writeln!(out, "kind = unsupported");
        }
    }
}

fn write_schedule(out: &mut String, s: &ErrorSchedule) {
    let _ = writeln!(out, "\n[errors]");
    match s {
        ErrorSchedule::Zero => {
            let _ = writeln!(out, "kind = zero");
        }
        ErrorSchedule::PowerLaw { amplitude, exponent } => {
            let _ = writeln!(out, "kind = power-law");
            let _ = writeln!(out, "amplitude = {amplitude}");
            let _ = writeln!(out, "exponent = {exponent}");
        }
        ErrorSchedule::Geometric { amplitude, ratio } => {
            let _ = writeln!(out, "kind = geometric");
            let _ = writeln!(out, "amplitude = {amplitude}");
            let _ = writeln!(out, "ratio = {ratio}");
        }
        ErrorSchedule::Explicit(v) => {
            let _ = writeln!(out, "kind = explicit");
            let _ = writeln!(out, "values = {}", fmt_floats(v));
        }
    }
}
