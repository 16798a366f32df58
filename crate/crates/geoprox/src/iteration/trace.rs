//! Recorded history of an iteration run, plus CSV export.

use std::io::Write;

use crate::error::Result;
use crate::geometry::Point;

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// Enough consecutive steps fell below the stop tolerance.
    StepTol,
    /// The step budget ran out first.
    MaxSteps,
    /// The iterate moved farther than the escape radius from the start.
    Escaped(f64),
}

/// The sequence `x_0, x_1, ...` with per-step lengths, per-mapping
/// residuals, and optional companion data.
///
/// Scalar columns (`steps`, `residuals`, `fejer`) are always complete;
/// `points` (and `ys`) keep every `thin`-th iterate plus the final one, so
/// long runs stay in bounded memory. `point_indices[k]` gives the
/// iteration index of `points[k]`.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub points: Vec<Point>,
    pub point_indices: Vec<usize>,
    /// Companion iterates of two-mapping alternating runs, aligned with
    /// `point_indices[1..]` (there is no `y` before the first round).
    pub ys: Option<Vec<Point>>,
    /// `steps[n] = d(x_n, x_{n+1})`.
    pub steps: Vec<f64>,
    /// `y_steps[n] = d(y_n, y_{n+1})` for alternating runs.
    pub y_steps: Option<Vec<f64>>,
    /// `residuals[i][n] = d(x_n, T_i x_n)` with exact mapping evaluation.
    pub residuals: Vec<Vec<f64>>,
    /// `fejer[n] = d(x_n, q)` for the optional reference point `q`.
    pub fejer: Option<Vec<f64>>,
    pub termination: Termination,
    /// True when every error magnitude applied during the run was zero.
    pub exact: bool,
}

impl IterationTrace {
    /// Number of iterates produced (including the start).
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn final_point(&self) -> &Point {
        self.points.last().expect("a trace always stores the final iterate")
    }

    pub fn final_y(&self) -> Option<&Point> {
        self.ys.as_ref().and_then(|ys| ys.last())
    }

    pub fn final_step(&self) -> Option<f64> {
        self.steps.last().copied()
    }

    /// Largest step among indices `from..`.
    pub fn max_step_from(&self, from: usize) -> Option<f64> {
        self.steps[from.min(self.steps.len())..]
            .iter()
            .copied()
            .fold(None, |acc, s| Some(acc.map_or(s, |a: f64| a.max(s))))
    }

    /// CSV rows for the stored iterates. Columns: `n`, the model
    /// coordinates, `step`, one residual per mapping, `fejer` (empty when
    /// no reference point was supplied).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let dim = self.points.first().map_or(0, |p| p.coord_vec().len());
        out.push('n');
        for i in 0..dim {
            out.push_str(&format!(",x{i}"));
        }
        out.push_str(",step");
        for i in 0..self.residuals.len() {
            out.push_str(&format!(",residual_{}", i + 1));
        }
        out.push_str(",fejer\n");
        for (k, p) in self.points.iter().enumerate() {
            let n = self.point_indices[k];
            out.push_str(&n.to_string());
            for c in p.coord_vec() {
                out.push_str(&format!(",{c}"));
            }
            match self.steps.get(n) {
                Some(s) => out.push_str(&format!(",{s}")),
                None => out.push(','),
            }
            for col in &self.residuals {
                match col.get(n) {
                    Some(r) => out.push_str(&format!(",{r}")),
                    None => out.push(','),
                }
            }
            match self.fejer.as_ref().and_then(|f| f.get(n)) {
                Some(f) => out.push_str(&format!(",{f}")),
                None => out.push(','),
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}
