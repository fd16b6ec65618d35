//! Closed-form momentum amplitudes `⟨p_y|ψ⟩`.
//!
//! With `ħ = 1` the amplitude is the Fourier transform
//! `∫ e^{−iky} ψ(y) dy / √(2π)`. Delta slits contribute a bare phase;
//! a finite slit of width `a` centered at `y_c` contributes
//! `e^{−ik y_c} √(a/2π) sinc(ak/2)`.

use num_complex::Complex64;

use crate::math::{sinc, INV_SQRT_2PI};
use crate::slit::{SlitKind, SlitSystem};
use crate::{Result, SlitError};

/// Conjugated plane wave `⟨p_y|y⟩ = e^{−iky}/√(2π)`.
#[inline]
pub fn phase_factor(y: f64, k: f64) -> Complex64 {
    let (s, c) = (k * y).sin_cos();
    Complex64::new(c * INV_SQRT_2PI, -s * INV_SQRT_2PI)
}

/// `Σ_j c_j e^{−ik y_j}/√(2π)` for delta slits.
pub fn narrow_amplitude(sys: &SlitSystem, k: f64) -> Result<Complex64> {
    expect_kind(sys, SlitKind::Narrow)?;
    Ok(narrow_sum(sys, k))
}

/// `Σ_j c_j e^{−ik y_j} √(a_j/2π) sinc(a_j k/2)` for finite slits.
pub fn finite_amplitude(sys: &SlitSystem, k: f64) -> Result<Complex64> {
    expect_kind(sys, SlitKind::Finite)?;
    Ok(finite_sum(sys, k))
}

/// Amplitude for either kind of system.
pub fn momentum_amplitude(sys: &SlitSystem, k: f64) -> Complex64 {
    match sys.kind() {
        SlitKind::Narrow => narrow_sum(sys, k),
        SlitKind::Finite => finite_sum(sys, k),
    }
}

fn narrow_sum(sys: &SlitSystem, k: f64) -> Complex64 {
    sys.components().map(|(s, c)| phase_factor(s.center, k) * c).sum()
}

fn finite_sum(sys: &SlitSystem, k: f64) -> Complex64 {
    sys.components()
        .map(|(s, c)| {
            // phase_factor already carries the 1/√(2π).
            let envelope = c * s.width.sqrt() * sinc(0.5 * s.width * k);
            phase_factor(s.center, k) * envelope
        })
        .sum()
}

fn expect_kind(sys: &SlitSystem, expected: SlitKind) -> Result<()> {
    if sys.kind() == expected {
        Ok(())
    } else {
        Err(SlitError::WrongKind { expected, found: sys.kind() })
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::slit::{build_system, canonical_system, Figure, SlitSpec};

    #[test]
    fn phase_factor_values() {
        let z = phase_factor(0.0, 17.3);
        assert_eq!(z, Complex64::new(INV_SQRT_2PI, 0.0));
        let z = phase_factor(1.0, PI);
        assert!((z.re + INV_SQRT_2PI).abs() < 1e-16);
        assert!(z.im.abs() < 1e-16);
        for &(y, k) in &[(0.3, 11.0), (-4.5, 0.01), (123.0, -3.3)] {
            assert!((phase_factor(y, k).norm() - 0.398942).abs() < 1e-6);
        }
    }

    #[test]
    fn narrow_double_at_zero_momentum() {
        let sys = canonical_system(Figure::Fig2);
        let z = narrow_amplitude(&sys, 0.0).unwrap();
        // 2 · (1/√2) / √(2π) = 1/√π
        assert!((z.re - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((z.re - 0.564190).abs() < 1e-6);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn narrow_double_zero_at_quarter_pi() {
        let sys = canonical_system(Figure::Fig2);
        let z = narrow_amplitude(&sys, PI / 4.0).unwrap();
        // Direct phase sum: (1/√2)(e^{−iπ/2} + e^{iπ/2})/√(2π) = √2 cos(π/2)/√(2π).
        let direct = 2.0 * FRAC_1_SQRT_2 * (PI / 2.0).cos() * INV_SQRT_2PI;
        assert!((z.re - direct).abs() < 1e-16);
        assert!(z.norm() < 1e-16);
    }

    #[test]
    fn single_narrow_modulus_is_constant() {
        let sys = build_system(&[SlitSpec::narrow(0.7)], 1.0).unwrap();
        for i in -20..=20 {
            let k = i as f64 * 0.77;
            assert!((narrow_amplitude(&sys, k).unwrap().norm() - INV_SQRT_2PI).abs() < 1e-16);
        }
    }

    #[test]
    fn finite_single_slit_limit_and_zero() {
        let sys = canonical_system(Figure::Fig3);
        let z0 = finite_amplitude(&sys, 0.0).unwrap();
        assert!((z0.re - (4.0 / (2.0 * PI)).sqrt()).abs() < 1e-15);
        let tiny = finite_amplitude(&sys, 1e-9).unwrap();
        assert!((tiny.re - z0.re).abs() < 1e-15);
        let zero = finite_amplitude(&sys, PI / 2.0).unwrap();
        assert!(zero.norm() < 1e-15);
    }

    #[test]
    fn finite_double_at_pi() {
        // a = 1, d = 4, k = π: (1/√2)(e^{−2iπ}+e^{2iπ}) √(1/2π) sinc(π/2)
        //   = √2 · (1/√(2π)) · (2/π) = 2/π^{3/2}.
        let sys = canonical_system(Figure::Fig4);
        let z = finite_amplitude(&sys, PI).unwrap();
        assert!((z.re - 2.0 / PI.powf(1.5)).abs() < 1e-15);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn wrong_kind_errors() {
        let narrow = canonical_system(Figure::Fig2);
        let finite = canonical_system(Figure::Fig3);
        assert!(matches!(finite_amplitude(&narrow, 1.0), Err(SlitError::WrongKind { .. })));
        assert!(matches!(narrow_amplitude(&finite, 1.0), Err(SlitError::WrongKind { .. })));
    }

    #[test]
    fn dispatch_matches_kind_specific() {
        let narrow = canonical_system(Figure::Fig2);
        let finite = canonical_system(Figure::Fig5);
        assert_eq!(momentum_amplitude(&narrow, 1.3), narrow_amplitude(&narrow, 1.3).unwrap());
        assert_eq!(momentum_amplitude(&finite, 1.3), finite_amplitude(&finite, 1.3).unwrap());
    }

    #[test]
    fn finite_amplitude_has_no_nan_over_wide_range() {
        let sys = canonical_system(Figure::Fig5);
        for i in -2000..=2000 {
            let k = i as f64 * 500.0 + 1e-7 * i as f64;
            let z = momentum_amplitude(&sys, k);
            assert!(z.re.is_finite() && z.im.is_finite(), "k={k}");
        }
    }

    #[test]
    fn continuous_across_sinc_threshold() {
        let sys = canonical_system(Figure::Fig3);
        // sinc argument is 2k for a = 4.
        let k_switch = crate::math::SINC_SERIES_THRESHOLD / 2.0;
        let below = momentum_amplitude(&sys, k_switch * (1.0 - 1e-9));
        let above = momentum_amplitude(&sys, k_switch * (1.0 + 1e-9));
        assert!((below - above).norm() < 1e-15);
    }
}
