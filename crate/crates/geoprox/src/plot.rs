//! SVG rendering of half-plane and planar runs: the sets as curves, the
//! iterate polyline, start and final markers. The half-plane is drawn in
//! its identity chart (hyperbolic objects rendered as the euclidean
//! curves they appear as).

use crate::error::{Error, Result};
use crate::geometry::{Carrier, Model, Space};
use crate::iteration::IterationTrace;
use crate::sets::{ConvexSet, LineRepr, SetKind};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// Extracts the planar coordinates of a trace (half-plane or euclidean
/// dimension 2 only).
fn planar_polyline(trace: &IterationTrace) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(trace.points.len());
    for p in &trace.points {
        let v = p.coord_vec();
        match p.space().model() {
            Model::HalfPlane | Model::Euclidean { dim: 2 } => out.push((v[0], v[1])),
            _ => {
                return Err(Error::Unsupported(
                    "plots cover the half-plane and euclidean dimension 2".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// Reads the `x0, x1` columns back out of a trace CSV.
pub fn polyline_from_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::domain("empty CSV"))?;
    let cols: Vec<&str> = header.split(',').collect();
    let ix = cols.iter().position(|c| *c == "x0");
    let iy = cols.iter().position(|c| *c == "x1");
    let (Some(ix), Some(iy)) = (ix, iy) else {
        return Err(Error::Unsupported(
            "trace has fewer than two coordinate columns; cannot plot".into(),
        ));
    };
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let parse = |i: usize| -> Result<f64> {
            fields
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::domain(format!("bad CSV row {}", k + 2)))
        };
        out.push((parse(ix)?, parse(iy)?));
    }
    Ok(out)
}

/// Strokes (as point chains) that depict a set within the viewport.
fn set_strokes(set: &ConvexSet, vp: (f64, f64, f64, f64)) -> Vec<Vec<(f64, f64)>> {
    let (x0, y0, x1, y1) = vp;
    let sample = |f: &dyn Fn(f64) -> (f64, f64), lo: f64, hi: f64, n: usize| -> Vec<(f64, f64)> {
        (0..=n).map(|k| f(lo + (hi - lo) * k as f64 / n as f64)).collect()
    };
    match set.kind() {
        SetKind::Line(LineRepr::HalfPlane(Carrier::Vertical { x })) => {
            vec![vec![(*x, y0.max(1e-9)), (*x, y1)]]
        }
        SetKind::Line(LineRepr::HalfPlane(Carrier::Semicircle { center, radius })) => {
            let (c, r) = (*center, *radius);
            vec![sample(&|phi: f64| (c + r * phi.cos(), r * phi.sin()), 0.02, std::f64::consts::PI - 0.02, 128)]
        }
        SetKind::Line(LineRepr::Euclidean { base, dir }) => {
            let l = (x1 - x0).hypot(y1 - y0) * 2.0;
            vec![vec![
                (base[0] - l * dir[0], base[1] - l * dir[1]),
                (base[0] + l * dir[0], base[1] + l * dir[1]),
            ]]
        }
        SetKind::Segment { a, b } => {
            match (a.as_half_plane(), b.as_half_plane()) {
                (Some((ax, ay)), Some((bx, by))) => {
                    let carrier = Carrier::through(ax, ay, bx, by);
                    let (ua, ub) = (carrier.param(ax, ay), carrier.param(bx, by));
                    vec![sample(&|u: f64| carrier.point_at(u), ua.min(ub), ua.max(ub), 64)]
                }
                _ => {
                    let av = a.coord_vec();
                    let bv = b.coord_vec();
                    vec![vec![(av[0], av[1]), (bv[0], bv[1])]]
                }
            }
        }
        SetKind::Ball { center, radius } => {
            let (cx, cy, r) = match center.as_half_plane() {
                // A hyperbolic disc is the euclidean disc with shifted center.
                Some((x, y)) => (x, y * radius.cosh(), y * radius.sinh()),
                None => {
                    let v = center.coord_vec();
                    (v[0], v[1], *radius)
                }
            };
            vec![sample(
                &|t: f64| (cx + r * t.cos(), cy + r * t.sin()),
                0.0,
                2.0 * std::f64::consts::PI,
                96,
            )]
        }
        SetKind::HalfSpace { normal, offset } => {
            // Draw the boundary line <n, x> = offset.
            let (nx, ny) = (normal[0], normal[1]);
            let base = (nx * offset, ny * offset);
            let (dx, dy) = (-ny, nx);
            let l = (x1 - x0).hypot(y1 - y0) * 2.0;
            vec![vec![
                (base.0 - l * dx, base.1 - l * dy),
                (base.0 + l * dx, base.1 + l * dy),
            ]]
        }
        SetKind::Affine { base, basis } => {
            let v = base.coord_vec();
            match basis.first() {
                Some(d) => {
                    let l = (x1 - x0).hypot(y1 - y0) * 2.0;
                    vec![vec![
                        (v[0] - l * d[0], v[1] - l * d[1]),
                        (v[0] + l * d[0], v[1] + l * d[1]),
                    ]]
                }
                None => vec![vec![(v[0], v[1]), (v[0], v[1])]],
            }
        }
        SetKind::Line(LineRepr::SphereArc { .. }) | SetKind::Subtree { .. } => Vec::new(),
    }
}

fn viewport(polyline: &[(f64, f64)], sets: &[&ConvexSet], half_plane: bool) -> (f64, f64, f64, f64) {
    let mut xs: Vec<f64> = polyline.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = polyline.iter().map(|p| p.1).collect();
    for set in sets {
        for stroke in set_strokes(set, (-1.0, 0.0, 1.0, 1.0)) {
            for (x, y) in stroke {
                if x.is_finite() && y.is_finite() {
                    xs.push(x);
                    ys.push(y);
                }
            }
        }
    }
    let lo = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (mut x0, mut x1) = (lo(&xs), hi(&xs));
    let (mut y0, mut y1) = (lo(&ys), hi(&ys));
    let pad = 0.08 * ((x1 - x0).max(y1 - y0).max(1e-6));
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    if half_plane {
        y0 = y0.max(0.0);
    }
    (x0, y0, x1, y1)
}

/// Renders a run as SVG. Fails (without writing anything) on traces from
/// unsupported spaces or with no recorded points.
pub fn render_trace(
    trace: &IterationTrace,
    sets: &[&ConvexSet],
    viewport_override: Option<(f64, f64, f64, f64)>,
) -> Result<String> {
    let polyline = planar_polyline(trace)?;
    let space = trace.points[0].space().clone();
    render_polyline(&space, &polyline, sets, viewport_override)
}

/// Renders a polyline (e.g. re-read from a CSV) over the sets.
pub fn render_polyline(
    space: &Space,
    polyline: &[(f64, f64)],
    sets: &[&ConvexSet],
    viewport_override: Option<(f64, f64, f64, f64)>,
) -> Result<String> {
    if polyline.is_empty() {
        return Err(Error::domain("empty trace; nothing to plot"));
    }
    if !matches!(space.model(), Model::HalfPlane | Model::Euclidean { dim: 2 }) {
        return Err(Error::Unsupported(
            "plots cover the half-plane and euclidean dimension 2".into(),
        ));
    }
    for set in sets {
        if set.space() != space {
            return Err(Error::mismatch("set and trace live in different spaces"));
        }
    }
    let half_plane = matches!(space.model(), Model::HalfPlane);
    let vp = viewport_override.unwrap_or_else(|| viewport(polyline, sets, half_plane));
    let (x0, y0, x1, y1) = vp;
    let sx = (WIDTH - 2.0 * MARGIN) / (x1 - x0);
    let sy = (HEIGHT - 2.0 * MARGIN) / (y1 - y0);
    let map = |x: f64, y: f64| -> (f64, f64) {
        (MARGIN + (x - x0) * sx, HEIGHT - MARGIN - (y - y0) * sy)
    };
    let path_of = |pts: &[(f64, f64)]| -> String {
        pts.iter()
            .map(|&(x, y)| {
                let (px, py) = map(x, y);
                format!("{:.2},{:.2}", px, py)
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    if half_plane && y0 <= 0.0 {
        let (ax, ay) = map(x0, 0.0);
        let (bx, by) = map(x1, 0.0);
        svg.push_str(&format!(
            "<line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" \
             stroke=\"#999\" stroke-width=\"1\"/>\n"
        ));
    }
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];
    for (i, set) in sets.iter().enumerate() {
        let color = colors[i % colors.len()];
        for stroke in set_strokes(set, vp) {
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
                path_of(&stroke)
            ));
        }
    }
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n",
        path_of(polyline)
    ));
    let (sxp, syp) = map(polyline[0].0, polyline[0].1);
    let (exp, eyp) = map(polyline[polyline.len() - 1].0, polyline[polyline.len() - 1].1);
    svg.push_str(&format!(
        "<circle cx=\"{sxp:.2}\" cy=\"{syp:.2}\" r=\"4\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n"
    ));
    svg.push_str(&format!(
        "<circle cx=\"{exp:.2}\" cy=\"{eyp:.2}\" r=\"4\" fill=\"#d62728\"/>\n"
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
