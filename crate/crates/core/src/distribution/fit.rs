//! Recovering slit geometry from a sampled pattern.
//!
//! Least squares against the closed forms. The objective in `d` is
//! highly multimodal (every fringe mismatch is a local minimum), so the
//! search starts from a fixed 41 × 41 grid over `[0.1λ, 20λ]²` and then
//! walks downhill one coordinate at a time with parabolic steps.

use std::str::FromStr;

use super::{closed_form_double_finite, closed_form_single, Distribution, Variable};
use crate::grid;
use crate::{Result, SlitError};

pub const GRID_POINTS: usize = 41;
pub const SEARCH_MIN: f64 = 0.1;
pub const SEARCH_MAX: f64 = 20.0;
const MAX_SWEEPS: usize = 2000;
const STEP_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitKind {
    Single,
    DoubleFinite,
}

impl FromStr for FitKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "single" => Ok(FitKind::Single),
            "double_finite" | "double-finite" => Ok(FitKind::DoubleFinite),
            other => Err(format!("unknown fit kind {other:?}; expected single or double_finite")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Slit width, in the distribution's length unit.
    pub a: f64,
    /// Slit separation (double_finite only).
    pub d: Option<f64>,
    /// Sum of squared residuals at the optimum.
    pub residual: f64,
    pub sweeps: usize,
}

struct Objective<'a> {
    ks: Vec<f64>,
    /// Per-sample multiplier: `p cos θ` when the samples carry the
    /// Jacobian, 1 otherwise.
    weights: Vec<f64>,
    values: &'a [f64],
    kind: FitKind,
    paper_literal: bool,
}

impl Objective<'_> {
    fn model(&self, k: f64, a: f64, d: f64) -> f64 {
        match self.kind {
            FitKind::Single => closed_form_single(k, a),
            FitKind::DoubleFinite => closed_form_double_finite(k, a, d, self.paper_literal),
        }
    }

    fn feasible(&self, a: f64, d: f64) -> bool {
        a > 0.0 && (self.kind == FitKind::Single || d > a)
    }

    fn ssr(&self, a: f64, d: f64) -> f64 {
        if !self.feasible(a, d) {
            return f64::INFINITY;
        }
        self.ks
            .iter()
            .zip(&self.weights)
            .zip(self.values)
            .map(|((&k, &w), &v)| {
                let r = w * self.model(k, a, d) - v;
                r * r
            })
            .sum()
    }
}

/// Fits `(a, d)` of the given model family to `samples`.
///
/// Returns [`SlitError::NoConvergence`] (carrying the best point found)
/// if the coordinate descent has not settled after its sweep budget.
pub fn fit_slit_parameters(samples: &Distribution, kind: FitKind) -> Result<FitResult> {
    if samples.is_empty() {
        return Err(SlitError::InvalidInput("no samples to fit".into()));
    }
    if samples.values.iter().any(|v| !v.is_finite()) {
        return Err(SlitError::InvalidInput("samples contain non-finite values".into()));
    }
    let p = samples.momentum();
    let weights = match (samples.meta.variable, samples.meta.jacobian_applied) {
        (Variable::Theta, true) => samples.abscissa.iter().map(|t| p * t.cos().max(0.0)).collect(),
        _ => vec![1.0; samples.len()],
    };
    let objective = Objective {
        ks: samples.k_values(),
        weights,
        values: &samples.values,
        kind,
        paper_literal: samples.meta.paper_literal,
    };

    let lambda = samples.meta.wavelength;
    let axis = grid::linspace(SEARCH_MIN * lambda, SEARCH_MAX * lambda, GRID_POINTS);
    let candidates: Vec<(f64, f64)> = match kind {
        FitKind::Single => axis.iter().map(|&a| (a, 0.0)).collect(),
        FitKind::DoubleFinite => axis
            .iter()
            .flat_map(|&a| axis.iter().map(move |&d| (a, d)))
            .filter(|&(a, d)| d > a)
            .collect(),
    };
    let scores = grid::map_range(candidates.len(), |i| objective.ssr(candidates[i].0, candidates[i].1));
    let (best, best_score) = scores
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, s)| (candidates[i], *s))
        .expect("candidate grid is non-empty");
    if !best_score.is_finite() {
        return Err(SlitError::InvalidInput("objective is not finite anywhere on the search grid".into()));
    }

    let spacing = axis[1] - axis[0];
    let (mut a, mut d) = best;
    let mut f = best_score;
    let mut steps = [spacing, spacing];
    let dims = if kind == FitKind::Single { 1 } else { 2 };

    #[allow(clippy::needless_range_loop)]
    for sweep in 1..=MAX_SWEEPS {
        for dim in 0..dims {
            let eval = |x: f64| if dim == 0 { objective.ssr(x, d) } else { objective.ssr(a, x) };
            let x = if dim == 0 { a } else { d };
            let (x_new, f_new, h_new) = parabolic_step(eval, x, f, steps[dim]);
            if dim == 0 {
                a = x_new;
            } else {
                d = x_new;
            }
            f = f_new;
            steps[dim] = h_new;
        }
        let scale = [a.abs().max(lambda), d.abs().max(lambda)];
        if (0..dims).all(|i| steps[i] <= STEP_TOL * scale[i]) {
            return Ok(FitResult { a, d: (dims == 2).then_some(d), residual: f, sweeps: sweep });
        }
    }
    Err(SlitError::NoConvergence { iterations: MAX_SWEEPS, residual: f, a, d: (dims == 2).then_some(d) })
}

/// One bracketing move along a coordinate. Returns the new position,
/// its objective value and the next step length.
fn parabolic_step<F: Fn(f64) -> f64>(f: F, x: f64, fx: f64, h: f64) -> (f64, f64, f64) {
    let fm = f(x - h);
    let fp = f(x + h);
    if fm < fx && fm <= fp {
        return (x - h, fm, h);
    }
    if fp < fx {
        return (x + h, fp, h);
    }
    // Centre is lowest: jump to the vertex of the bracketing parabola.
    let denom = fm - 2.0 * fx + fp;
    let mut next_h = 0.5 * h;
    if denom > 0.0 && denom.is_finite() {
        let t = 0.5 * h * (fm - fp) / denom;
        let ft = f(x + t);
        next_h = (2.0 * t.abs()).clamp(0.1 * h, 0.5 * h);
        if ft < fx {
            return (x + t, ft, next_h);
        }
    }
    (x, fx, next_h)
}
