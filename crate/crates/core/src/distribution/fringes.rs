//! Fringe extraction: extrema, visibility and interference orders.

use std::f64::consts::PI;

use super::{probability_density, Distribution, Variable};
use crate::slit::SlitSystem;
use crate::{Result, SlitError};

/// A located extremum. `position` is in the distribution's own variable
/// (θ or k); `coordinate` is `sin θ` (or k) at the same point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub position: f64,
    pub coordinate: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FringeReport {
    pub maxima: Vec<Extremum>,
    pub minima: Vec<Extremum>,
    /// `(P_max − P_min)/(P_max + P_min)` around the central maximum.
    pub visibility: f64,
}

impl FringeReport {
    pub fn max_count(&self) -> usize {
        self.maxima.len()
    }

    pub fn min_count(&self) -> usize {
        self.minima.len()
    }

    /// Maxima and minima merged in grid order, tagged `true` for maxima.
    pub fn ordered(&self) -> Vec<(bool, Extremum)> {
        let mut all: Vec<(bool, Extremum)> = self
            .maxima
            .iter()
            .map(|e| (true, *e))
            .chain(self.minima.iter().map(|e| (false, *e)))
            .collect();
        all.sort_by_key(|(_, e)| e.index);
        all
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Max,
    Min,
}

/// Locates the extrema of `dist` and measures the central visibility.
///
/// Extrema are found on the grid, then refined with a 3-point parabola
/// followed by a Newton polish on the 5-point interpolating quartic.
/// Refinement runs in `sin θ` for angular data without a Jacobian (the
/// pattern is a smooth function of momentum there) and in the native
/// variable otherwise. Grid endpoints are kept as sampled. Maxima below
/// `threshold × peak` are dropped together with the shallower of the
/// minima around them.
pub fn find_fringes(dist: &Distribution, threshold: f64) -> Result<FringeReport> {
    let v = &dist.values;
    let n = v.len();
    if n < 3 || dist.abscissa.len() != n {
        return Err(SlitError::InvalidInput("distribution needs at least 3 matching samples".into()));
    }
    let peak = dist.peak();
    let floor = v.iter().copied().fold(f64::INFINITY, f64::min);
    if peak - floor <= 1e-12 * peak.abs() {
        return Ok(FringeReport { maxima: Vec::new(), minima: Vec::new(), visibility: 0.0 });
    }

    let mut raw: Vec<(usize, Kind)> = Vec::new();
    for i in 0..n {
        let prev = if i > 0 { Some(v[i - 1]) } else { None };
        let next = if i + 1 < n { Some(v[i + 1]) } else { None };
        let kind = match (prev, next) {
            (None, Some(b)) if v[i] > b => Some(Kind::Max),
            (None, Some(b)) if v[i] < b => Some(Kind::Min),
            (Some(a), None) if v[i] > a => Some(Kind::Max),
            (Some(a), None) if v[i] < a => Some(Kind::Min),
            (Some(a), Some(b)) if v[i] > a && v[i] >= b => Some(Kind::Max),
            (Some(a), Some(b)) if v[i] < a && v[i] <= b => Some(Kind::Min),
            _ => None,
        };
        if let Some(kind) = kind {
            raw.push((i, kind));
        }
    }
    for w in raw.windows(2) {
        if w[1].0 - w[0].0 < 3 {
            return Err(SlitError::TooCoarse { first: w[0].0, second: w[1].0 });
        }
    }

    let use_sine = dist.meta.variable == Variable::Theta && !dist.meta.jacobian_applied;
    let x: Vec<f64> = if use_sine { dist.smooth_coordinate() } else { dist.abscissa.clone() };
    let to_extremum = |index: usize, kind: Kind| -> Extremum {
        let (coord, value) = refine(&x, v, index, kind);
        let (position, coordinate) = match (dist.meta.variable, use_sine) {
            (Variable::Theta, true) => (coord.clamp(-1.0, 1.0).asin(), coord),
            (Variable::Theta, false) => (coord, coord.sin()),
            (Variable::K, _) => (coord, coord),
        };
        Extremum { index, position, coordinate, value: value.max(0.0) }
    };
    let mut seq: Vec<(Kind, Extremum)> = raw.iter().map(|&(i, k)| (k, to_extremum(i, k))).collect();

    let cutoff = threshold * peak;
    let mut kept: Vec<(Kind, Extremum)> = Vec::with_capacity(seq.len());
    let mut dropped_max = false;
    for (kind, ext) in seq.drain(..) {
        match kind {
            Kind::Max if ext.value < cutoff => dropped_max = true,
            Kind::Min if dropped_max => {
                dropped_max = false;
                match kept.last_mut() {
                    Some((Kind::Min, prev)) => {
                        if ext.value < prev.value {
                            *prev = ext;
                        }
                    }
                    _ => kept.push((kind, ext)),
                }
            }
            _ => {
                dropped_max = false;
                kept.push((kind, ext));
            }
        }
    }

    let visibility = central_visibility(&kept);
    let maxima = kept.iter().filter(|(k, _)| *k == Kind::Max).map(|(_, e)| *e).collect();
    let minima = kept.iter().filter(|(k, _)| *k == Kind::Min).map(|(_, e)| *e).collect();
    Ok(FringeReport { maxima, minima, visibility })
}

fn central_visibility(seq: &[(Kind, Extremum)]) -> f64 {
    let central = seq
        .iter()
        .enumerate()
        .filter(|(_, (k, _))| *k == Kind::Max)
        .min_by(|(_, (_, a)), (_, (_, b))| a.coordinate.abs().total_cmp(&b.coordinate.abs()));
    let Some((pos, &(_, max))) = central else {
        return 0.0;
    };
    let neighbours: Vec<f64> = [pos.checked_sub(1), Some(pos + 1)]
        .into_iter()
        .flatten()
        .filter_map(|j| seq.get(j))
        .filter(|(k, _)| *k == Kind::Min)
        .map(|(_, e)| e.value)
        .collect();
    if neighbours.is_empty() {
        return 0.0;
    }
    let min = neighbours.iter().sum::<f64>() / neighbours.len() as f64;
    if max.value + min <= 0.0 {
        return 0.0;
    }
    ((max.value - min) / (max.value + min)).clamp(0.0, 1.0)
}

/// Refined `(coordinate, value)` of the extremum at grid index `i`.
fn refine(x: &[f64], y: &[f64], i: usize, kind: Kind) -> (f64, f64) {
    let n = y.len();
    if i == 0 || i + 1 == n {
        return (x[i], y[i]);
    }
    let (x0, x1, x2) = (x[i - 1], x[i], x[i + 1]);
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let Some(vertex) = parabola_vertex([x0, x1, x2], [y0, y1, y2]) else {
        return (x1, y1);
    };
    let vertex = vertex.clamp(x0, x2);

    // 5-point quartic polish; the window is shifted inward near the ends.
    let start = i.saturating_sub(2).min(n.saturating_sub(5));
    if n >= 5 {
        let xs = &x[start..start + 5];
        let ys = &y[start..start + 5];
        let poly = Newton::new(xs, ys);
        let mut t = vertex;
        let mut ok = false;
        for _ in 0..50 {
            let (_, d1, d2) = poly.eval_with_derivatives(t);
            if d2 == 0.0 || !d2.is_finite() {
                break;
            }
            let step = d1 / d2;
            t -= step;
            if !(t >= x0 && t <= x2) {
                break;
            }
            if step.abs() <= 1e-14 * (1.0 + t.abs()) {
                ok = true;
                break;
            }
        }
        if ok {
            let (value, _, d2) = poly.eval_with_derivatives(t);
            let right_curvature = match kind {
                Kind::Max => d2 <= 0.0,
                Kind::Min => d2 >= 0.0,
            };
            if right_curvature {
                return (t, value);
            }
        }
    }
    let value = lagrange3([x0, x1, x2], [y0, y1, y2], vertex);
    (vertex, value)
}

fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> Option<f64> {
    // Vertex of the parabola through three (possibly non-uniform) points.
    let d01 = (y[1] - y[0]) / (x[1] - x[0]);
    let d12 = (y[2] - y[1]) / (x[2] - x[1]);
    let curvature = (d12 - d01) / (x[2] - x[0]);
    if curvature == 0.0 || !curvature.is_finite() {
        return None;
    }
    Some(0.5 * (x[0] + x[1]) - d01 / (2.0 * curvature))
}

fn lagrange3(x: [f64; 3], y: [f64; 3], t: f64) -> f64 {
    let l0 = (t - x[1]) * (t - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
    let l1 = (t - x[0]) * (t - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
    let l2 = (t - x[0]) * (t - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
    y[0] * l0 + y[1] * l1 + y[2] * l2
}

/// Newton-form interpolating polynomial.
struct Newton {
    nodes: Vec<f64>,
    coeffs: Vec<f64>,
}

impl Newton {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let mut c = y.to_vec();
        for j in 1..x.len() {
            for i in (j..x.len()).rev() {
                c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
            }
        }
        Self { nodes: x.to_vec(), coeffs: c }
    }

    /// Value and first two derivatives at `t` (Horner with derivatives).
    fn eval_with_derivatives(&self, t: f64) -> (f64, f64, f64) {
        let m = self.coeffs.len();
        let (mut p, mut d1, mut d2) = (self.coeffs[m - 1], 0.0, 0.0);
        for i in (0..m - 1).rev() {
            let dt = t - self.nodes[i];
            d2 = d2 * dt + 2.0 * d1;
            d1 = d1 * dt + p;
            p = p * dt + self.coeffs[i];
        }
        (p, d1, d2)
    }
}

/// Interference order `n` of a uniformly spaced slit comb, located at
/// `sin θ = nλ/d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceOrder {
    pub order: i64,
    pub sin_theta: f64,
    pub k: f64,
    pub value: f64,
    /// `value ≥ threshold × (largest order value)`; false where a
    /// single-slit envelope zero suppresses the order.
    pub visible: bool,
}

/// Evaluates the pattern at every principal interference order that
/// falls inside `|sin θ| ≤ 1`.
pub fn interference_orders(sys: &SlitSystem, threshold: f64) -> Result<Vec<InterferenceOrder>> {
    let d = sys
        .uniform_pitch()
        .ok_or_else(|| SlitError::InvalidInput("interference orders need two or more equally spaced slits".into()))?;
    let lambda = sys.wavelength();
    let max_order = (d / lambda * (1.0 + 1e-12)).floor() as i64;
    let mut orders = Vec::new();
    for n in -max_order..=max_order {
        let sin_theta = (n as f64 * lambda / d).clamp(-1.0, 1.0);
        let k = 2.0 * PI * n as f64 / d;
        let value = probability_density(sys, k, false)?;
        orders.push(InterferenceOrder { order: n, sin_theta, k, value, visible: false });
    }
    let peak = orders.iter().map(|o| o.value).fold(0.0, f64::max);
    for o in &mut orders {
        o.visible = o.value >= threshold * peak;
    }
    Ok(orders)
}
