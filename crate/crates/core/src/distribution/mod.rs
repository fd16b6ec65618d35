//! Momentum and angular probability distributions.
//!
//! `P(k) = |⟨p_y|ψ⟩|²` is evaluated from the amplitude module; the
//! `closed_form_*` functions are the textbook formulas for the three
//! standard geometries and must agree with it. Angular distributions
//! substitute `k = p sin θ` directly, as in the optics literature;
//! setting `jacobian` multiplies by `p cos θ` so the result integrates
//! to one over θ.
//!
//! The two-finite-slit formula is commonly printed with a missing
//! `1/√2` in the amplitude, which doubles the probability. The default
//! here is normalized; `paper_literal` reproduces the doubled form.

pub mod fit;
pub mod fringes;

use std::f64::consts::{FRAC_PI_2, PI};

use crate::amplitude::momentum_amplitude;
use crate::grid;
use crate::math::sinc_squared;
use crate::slit::{SlitKind, SlitSystem};
use crate::{Result, SlitError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// Scattering angle θ in radians.
    Theta,
    /// Wavenumber `k = p_y/ħ`.
    K,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionMeta {
    pub variable: Variable,
    pub jacobian_applied: bool,
    pub paper_literal: bool,
    pub wavelength: f64,
    pub system: String,
}

/// A sampled distribution over a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub abscissa: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: DistributionMeta,
}

impl Distribution {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn momentum(&self) -> f64 {
        2.0 * PI / self.meta.wavelength
    }

    /// Wavenumber at each grid point.
    pub fn k_values(&self) -> Vec<f64> {
        match self.meta.variable {
            Variable::K => self.abscissa.clone(),
            Variable::Theta => {
                let p = self.momentum();
                self.abscissa.iter().map(|t| p * t.sin()).collect()
            }
        }
    }

    /// The coordinate in which the pattern is a function of momentum
    /// alone: `sin θ` for angular grids, `k` for momentum grids.
    pub(crate) fn smooth_coordinate(&self) -> Vec<f64> {
        match self.meta.variable {
            Variable::K => self.abscissa.clone(),
            Variable::Theta => self.abscissa.iter().map(|t| t.sin()).collect(),
        }
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// φ = p d sin θ and α = a p sin θ / 2 (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedVariables {
    pub phi: f64,
    pub alpha: f64,
}

pub fn reduced_variables(theta: f64, a: f64, d: f64, wavelength: f64) -> Result<ReducedVariables> {
    if !(wavelength > 0.0) || !wavelength.is_finite() {
        return Err(SlitError::NonPositive { what: "wavelength", value: wavelength });
    }
    let s = theta.sin();
    Ok(ReducedVariables { phi: 2.0 * PI * d * s / wavelength, alpha: PI * a * s / wavelength })
}

/// `P(k) = |⟨p_y|ψ⟩|²`, doubled for two finite slits when
/// `paper_literal` is set.
pub fn probability_density(sys: &SlitSystem, k: f64, paper_literal: bool) -> Result<f64> {
    let scale = literal_scale(sys, paper_literal)?;
    Ok(scale * momentum_amplitude(sys, k).norm_sqr())
}

pub(crate) fn literal_scale(sys: &SlitSystem, paper_literal: bool) -> Result<f64> {
    if !paper_literal {
        return Ok(1.0);
    }
    if sys.kind() == SlitKind::Finite && sys.len() == 2 {
        Ok(2.0)
    } else {
        Err(SlitError::PaperLiteralUnsupported)
    }
}

/// Two delta slits a distance `d` apart: `(1 + cos kd)/2π`.
pub fn closed_form_double_narrow(k: f64, d: f64) -> f64 {
    (1.0 + (k * d).cos()) / (2.0 * PI)
}

/// Half-angle form of [`closed_form_double_narrow`], `cos²(φ/2)/π`.
pub fn optical_double_narrow(phi: f64) -> f64 {
    let c = (0.5 * phi).cos();
    c * c / PI
}

/// Single slit of width `a`: `2 sin²(ak/2) / (π a k²)`, with the
/// removable singularity at `k = 0` (value `a/2π`).
pub fn closed_form_single(k: f64, a: f64) -> f64 {
    let x = 0.5 * a * k;
    if x.abs() < crate::math::SINC_SERIES_THRESHOLD {
        return optical_single(x, a);
    }
    let s = x.sin();
    2.0 * s * s / (PI * a * k * k)
}

/// Optical form `(a/2π)(sin α/α)²`.
pub fn optical_single(alpha: f64, a: f64) -> f64 {
    a / (2.0 * PI) * sinc_squared(alpha)
}

/// Two slits of width `a`, centers `d` apart.
///
/// Normalized: `2(1 + cos kd) sin²(ak/2) / (π a k²)`, which is half of
/// the printed `4(1 + cos kd) sin²(ak/2)/(π a k²)`; `paper_literal`
/// returns the printed value.
pub fn closed_form_double_finite(k: f64, a: f64, d: f64, paper_literal: bool) -> f64 {
    let scale = if paper_literal { 2.0 } else { 1.0 };
    let x = 0.5 * a * k;
    if x.abs() < crate::math::SINC_SERIES_THRESHOLD {
        return scale * 0.5 * optical_double_finite(k * d, x, a);
    }
    let s = x.sin();
    scale * 2.0 * (1.0 + (k * d).cos()) * s * s / (PI * a * k * k)
}

/// Printed optical form `2a cos²(φ/2)(sin α/α)²/π` (the doubled one).
pub fn optical_double_finite(phi: f64, alpha: f64, a: f64) -> f64 {
    let c = (0.5 * phi).cos();
    2.0 * a * c * c * sinc_squared(alpha) / PI
}

/// Uniform θ grid on `[−π/2, π/2]` with `θ = 0` and `±π/2` exact and
/// `θ_{−i} = −θ_i`.
pub fn theta_grid(n_samples: usize) -> Result<Vec<f64>> {
    if n_samples < 3 || n_samples.is_multiple_of(2) {
        return Err(SlitError::BadSampleCount { got: n_samples, min: 3 });
    }
    let half = (n_samples - 1) / 2;
    Ok((0..n_samples)
        .map(|i| {
            let j = i as f64 - half as f64;
            FRAC_PI_2 * (j / half as f64)
        })
        .collect())
}

/// `P(p sin θ)` on a uniform θ grid, optionally times `p cos θ`.
pub fn angular_distribution(
    sys: &SlitSystem,
    n_samples: usize,
    jacobian: bool,
    paper_literal: bool,
) -> Result<Distribution> {
    let thetas = theta_grid(n_samples)?;
    let scale = literal_scale(sys, paper_literal)?;
    let p = sys.momentum();
    let values = grid::map(&thetas, |theta| {
        let (s, c) = theta.sin_cos();
        let density = scale * momentum_amplitude(sys, p * s).norm_sqr();
        if jacobian {
            // cos(±π/2) is ~6e-17, not 0; keep the density non-negative.
            density * p * c.max(0.0)
        } else {
            density
        }
    });
    Ok(Distribution {
        abscissa: thetas,
        values,
        meta: DistributionMeta {
            variable: Variable::Theta,
            jacobian_applied: jacobian,
            paper_literal,
            wavelength: sys.wavelength(),
            system: sys.to_string(),
        },
    })
}

/// `P(k)` on an arbitrary strictly increasing k grid.
pub fn momentum_distribution(sys: &SlitSystem, ks: &[f64], paper_literal: bool) -> Result<Distribution> {
    if ks.is_empty() {
        return Err(SlitError::InvalidInput("empty k grid".into()));
    }
    if !ks.windows(2).all(|w| w[1] > w[0]) {
        return Err(SlitError::InvalidInput("k grid must be strictly increasing".into()));
    }
    let scale = literal_scale(sys, paper_literal)?;
    let values = grid::map(ks, |k| scale * momentum_amplitude(sys, k).norm_sqr());
    Ok(Distribution {
        abscissa: ks.to_vec(),
        values,
        meta: DistributionMeta {
            variable: Variable::K,
            jacobian_applied: false,
            paper_literal,
            wavelength: sys.wavelength(),
            system: sys.to_string(),
        },
    })
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // checks against printed decimal values
mod tests {
    use super::*;
    use crate::slit::{build_system, canonical_system, Figure, SlitSpec};

    #[test]
    fn single_narrow_slit_is_flat() {
        let sys = build_system(&[SlitSpec::narrow(0.0)], 1.0).unwrap();
        for i in -10..=10 {
            let p = probability_density(&sys, i as f64 * 0.9, false).unwrap();
            assert!((p - 1.0 / (2.0 * PI)).abs() < 1e-16);
            assert!((p - 0.159155).abs() < 1e-6);
        }
    }

    #[test]
    fn double_narrow_values() {
        let sys = canonical_system(Figure::Fig2);
        assert!((probability_density(&sys, 0.0, false).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!(probability_density(&sys, PI / 4.0, false).unwrap() < 1e-30);
        assert!((probability_density(&sys, 0.0, false).unwrap() - 0.318310).abs() < 1e-6);
    }

    #[test]
    fn closed_form_spot_values() {
        assert!((closed_form_double_narrow(0.0, 4.0) - 1.0 / PI).abs() < 1e-16);
        assert!((closed_form_double_narrow(PI / 2.0, 4.0) - 1.0 / PI).abs() < 1e-16);
        assert!((closed_form_single(0.0, 4.0) - 4.0 / (2.0 * PI)).abs() < 1e-16);
        assert!((closed_form_single(0.0, 4.0) - 0.636620).abs() < 1e-6);
        assert!(closed_form_single(PI / 2.0, 4.0) < 1e-31);
        assert!((closed_form_single(PI, 1.0) - 2.0 / PI.powi(3)).abs() < 1e-16);
        assert!((closed_form_single(PI, 1.0) - 0.064504).abs() < 1e-6);
    }

    #[test]
    fn double_finite_zero_momentum() {
        assert!((closed_form_double_finite(0.0, 1.0, 4.0, true) - 2.0 / PI).abs() < 1e-16);
        assert!((closed_form_double_finite(0.0, 1.0, 4.0, true) - 0.6366).abs() < 1e-4);
        assert!((closed_form_double_finite(0.0, 1.0, 4.0, false) - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn paper_literal_scaling() {
        let f4 = canonical_system(Figure::Fig4);
        let k = 0.37;
        let n = probability_density(&f4, k, false).unwrap();
        let l = probability_density(&f4, k, true).unwrap();
        assert!((l - 2.0 * n).abs() < 1e-16);
        assert_eq!(
            probability_density(&canonical_system(Figure::Fig3), k, true),
            Err(SlitError::PaperLiteralUnsupported)
        );
        assert_eq!(
            probability_density(&canonical_system(Figure::Fig2), k, true),
            Err(SlitError::PaperLiteralUnsupported)
        );
    }

    #[test]
    fn reduced_variable_values() {
        let r = reduced_variables(0.0, 2.0, 4.0, 1.0).unwrap();
        assert_eq!((r.phi, r.alpha), (0.0, 0.0));
        let r = reduced_variables(FRAC_PI_2, 1.0, 4.0, 1.0).unwrap();
        assert!((r.phi - 8.0 * PI).abs() < 1e-14);
        let r = reduced_variables(PI / 6.0, 2.0, 4.0, 1.0).unwrap();
        assert!((r.alpha - PI).abs() < 1e-14);
        assert!(reduced_variables(0.1, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn theta_grid_layout() {
        let g = theta_grid(2001).unwrap();
        assert_eq!(g[0], -FRAC_PI_2);
        assert_eq!(g[1000], 0.0);
        assert_eq!(g[2000], FRAC_PI_2);
        for i in 0..2001 {
            assert_eq!(g[i], -g[2000 - i]);
        }
        assert!(matches!(theta_grid(2000), Err(SlitError::BadSampleCount { .. })));
        assert!(matches!(theta_grid(1), Err(SlitError::BadSampleCount { .. })));
    }

    #[test]
    fn fig2_angular_distribution() {
        let d = angular_distribution(&canonical_system(Figure::Fig2), 2001, false, false).unwrap();
        assert!((d.values[1000] - 1.0 / PI).abs() < 1e-15);
        for i in 0..2001 {
            assert_eq!(d.values[i], d.values[2000 - i]);
        }
        // Zeros of (1 + cos(8π s))/2π at s = (2n+1)/8.
        let sys = canonical_system(Figure::Fig2);
        for n in -4..4 {
            let s = (2 * n + 1) as f64 / 8.0;
            assert!(probability_density(&sys, 2.0 * PI * s, false).unwrap() < 1e-30);
        }
    }

    #[test]
    fn jacobian_integrates_to_one_over_theta() {
        let sys = canonical_system(Figure::Fig4);
        let d = angular_distribution(&sys, 20001, true, false).unwrap();
        let h = d.abscissa[1] - d.abscissa[0];
        let trapezoid: f64 = d.values.windows(2).map(|w| 0.5 * (w[0] + w[1]) * h).sum();
        // Over θ ∈ [−π/2, π/2] only |k| ≤ p is covered, so this is the
        // fraction of momentum probability inside the light cone.
        let ks = grid::linspace(-sys.momentum(), sys.momentum(), 200_001);
        let hk = ks[1] - ks[0];
        let inside: f64 = ks
            .windows(2)
            .map(|w| 0.5 * hk * (probability_density(&sys, w[0], false).unwrap()
                + probability_density(&sys, w[1], false).unwrap()))
            .sum();
        assert!((trapezoid - inside).abs() < 1e-5, "{trapezoid} vs {inside}");
    }

    #[test]
    fn momentum_distribution_rejects_bad_grids() {
        let sys = canonical_system(Figure::Fig3);
        assert!(momentum_distribution(&sys, &[], false).is_err());
        assert!(momentum_distribution(&sys, &[1.0, 1.0], false).is_err());
        let d = momentum_distribution(&sys, &[-1.0, 0.0, 1.0], false).unwrap();
        assert_eq!(d.k_values(), vec![-1.0, 0.0, 1.0]);
    }
}
