//! Independent numerical checks of the closed forms.
//!
//! Finite-slit amplitudes are recomputed by Gauss–Legendre quadrature of
//! the Fourier integral over each opening; narrow-slit amplitudes by a
//! separately written phase sum. Nothing here calls into the amplitude
//! module except [`compare`], which needs both sides.

pub mod gauss_legendre;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::amplitude::momentum_amplitude;
use crate::distribution::{literal_scale, probability_density};
use crate::grid;
use crate::slit::{SlitKind, SlitSystem};
use crate::{Result, SlitError};
use gauss_legendre::GaussLegendre;

pub const MIN_NODES_PER_SLIT: usize = 8;
/// Nodes per slit used by [`compare`] before the oscillation rule kicks in.
pub const DEFAULT_NODES_PER_SLIT: usize = 16;

/// Node count used for one slit: at least 8 per oscillation of `e^{−iky}`
/// across the opening.
pub fn nodes_for(width: f64, k: f64, nodes_per_slit: usize) -> usize {
    let oscillation = (4.0 * width * k.abs() / PI).ceil() as usize + 8;
    nodes_per_slit.max(oscillation)
}

/// `(1/√2π) Σ_j ∫_{slit j} e^{−iky} c_j/√a_j dy` by quadrature.
pub fn quadrature_amplitude(sys: &SlitSystem, k: f64, nodes_per_slit: usize) -> Result<Complex64> {
    if sys.kind() != SlitKind::Finite {
        return Err(SlitError::WrongKind { expected: SlitKind::Finite, found: sys.kind() });
    }
    if nodes_per_slit < MIN_NODES_PER_SLIT {
        return Err(SlitError::TooFewNodes { got: nodes_per_slit, min: MIN_NODES_PER_SLIT });
    }
    let mut re = 0.0;
    let mut im = 0.0;
    for (slit, c) in sys.components() {
        let rule = GaussLegendre::cached(nodes_for(slit.width, k, nodes_per_slit));
        let height = c / slit.width.sqrt();
        let lo = slit.center - 0.5 * slit.width;
        let hi = slit.center + 0.5 * slit.width;
        re += height * rule.integrate(lo, hi, |y| (k * y).cos());
        im -= height * rule.integrate(lo, hi, |y| (k * y).sin());
    }
    let norm = 1.0 / (2.0 * PI).sqrt();
    Ok(Complex64::new(re * norm, im * norm))
}

/// Delta-slit amplitude by direct sifting: `Σ_j c_j e^{−ik y_j}/√(2π)`.
pub fn narrow_direct_sum(sys: &SlitSystem, k: f64) -> Result<Complex64> {
    if sys.kind() != SlitKind::Narrow {
        return Err(SlitError::WrongKind { expected: SlitKind::Narrow, found: sys.kind() });
    }
    let (re, im) = sys
        .slits()
        .iter()
        .zip(sys.coefficients())
        .fold((0.0, 0.0), |(re, im), (slit, &c)| {
            let arg = k * slit.center;
            (re + c * arg.cos(), im - c * arg.sin())
        });
    let root = (2.0 * PI).sqrt();
    Ok(Complex64::new(re / root, im / root))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    /// Simpson estimate of `∫_{−K}^{K} P(k) dk`.
    pub value: f64,
    /// Upper bound on the probability outside `[−K, K]`.
    pub tail_bound: f64,
}

impl Normalization {
    /// True when `value ≤ 1 ≤ value + tail_bound`, with `slack` for the
    /// quadrature error.
    pub fn brackets_one(&self, slack: f64) -> bool {
        self.value <= 1.0 + slack && 1.0 <= self.value + self.tail_bound + slack
    }
}

/// Integrates `P(k)` over `[−k_max, k_max]` with composite Simpson and
/// bounds the remainder.
///
/// Each slit's amplitude is bounded by `|A_j|² ≤ 2/(π a_j k²)`, and
/// `|Σ_j c_j A_j|² ≤ N Σ_j c_j² |A_j|²`, so the two tails together hold
/// at most `N Σ_j 4 c_j²/(π a_j K)` (times 2 in paper-literal mode).
pub fn normalization_integral(
    sys: &SlitSystem,
    k_max: f64,
    n_panels: usize,
    paper_literal: bool,
) -> Result<Normalization> {
    if sys.kind() != SlitKind::Finite {
        return Err(SlitError::WrongKind { expected: SlitKind::Finite, found: sys.kind() });
    }
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(SlitError::NonPositive { what: "k_max", value: k_max });
    }
    if n_panels == 0 || n_panels % 2 == 1 {
        return Err(SlitError::BadPanelCount(n_panels));
    }
    let scale = literal_scale(sys, paper_literal)?;
    let h = 2.0 * k_max / n_panels as f64;
    let sum = grid::chunked_sum(n_panels + 1, |i| {
        let k = if i == n_panels { k_max } else { -k_max + h * i as f64 };
        let w = if i == 0 || i == n_panels {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        w * probability_density(sys, k, paper_literal).unwrap_or(f64::NAN)
    });
    let value = sum * h / 3.0;
    let per_slit: f64 = sys
        .components()
        .map(|(s, c)| 4.0 * c * c / (PI * s.width * k_max))
        .sum();
    let tail_bound = scale * sys.len() as f64 * per_slit;
    Ok(Normalization { value, tail_bound })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub n_points: usize,
    /// `max |P_closed − P_oracle|` over the grid.
    pub max_abs_err: f64,
    /// `max_abs_err / max |P_oracle|`.
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Grid point with the largest absolute error.
    pub worst_k: f64,
}

/// Checks the closed-form amplitude of `sys` against its oracle on
/// `k_grid`, comparing `|amp|²`.
pub fn compare(sys: &SlitSystem, k_grid: &[f64], tolerance: f64) -> VerificationReport {
    compare_with(sys, k_grid, tolerance, |k| momentum_amplitude(sys, k))
}

/// [`compare`] with a caller-supplied closed form.
pub fn compare_with<F>(sys: &SlitSystem, k_grid: &[f64], tolerance: f64, closed_form: F) -> VerificationReport
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    let pairs = grid::map(k_grid, |k| {
        let reference = match sys.kind() {
            SlitKind::Narrow => narrow_direct_sum(sys, k),
            SlitKind::Finite => quadrature_amplitude(sys, k, DEFAULT_NODES_PER_SLIT),
        }
        .expect("oracle matches system kind")
        .norm_sqr();
        (closed_form(k).norm_sqr(), reference)
    });

    let mut max_abs_err = 0.0;
    let mut max_ref = 0.0f64;
    let mut worst_k = f64::NAN;
    let mut finite = true;
    for (&k, &(cf, reference)) in k_grid.iter().zip(&pairs) {
        let err = (cf - reference).abs();
        if !err.is_finite() {
            finite = false;
            worst_k = k;
            break;
        }
        if err > max_abs_err || worst_k.is_nan() {
            max_abs_err = err;
            worst_k = k;
        }
        max_ref = max_ref.max(reference.abs());
    }
    if !finite {
        return VerificationReport {
            n_points: k_grid.len(),
            max_abs_err: f64::INFINITY,
            max_rel_err: f64::INFINITY,
            tolerance,
            pass: false,
            worst_k,
        };
    }
    let max_rel_err = if max_ref > 0.0 { max_abs_err / max_ref } else { max_abs_err };
    let pass = !k_grid.is_empty() && (max_abs_err <= tolerance || max_rel_err <= tolerance);
    VerificationReport { n_points: k_grid.len(), max_abs_err, max_rel_err, tolerance, pass, worst_k }
}
