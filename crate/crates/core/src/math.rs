//! Small numerical helpers shared by the closed forms.

/// Below this magnitude `sin(x)/x` is evaluated by its Taylor series.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

/// Unnormalized sinc, `sin(x)/x` with `sinc(0) = 1`.
///
/// For `|x| < 1e-4` the series `1 − x²/6 + x⁴/120` is used; the first
/// omitted term is below `x⁶/5040 < 2e-28`, far under one ulp of 1.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_THRESHOLD {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

#[inline]
pub fn sinc_squared(x: f64) -> f64 {
    let s = sinc(x);
    s * s
}

/// `1/√(2π)`, the plane-wave normalization.
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_at_zero_is_one() {
        assert_eq!(sinc(0.0), 1.0);
        assert_eq!(sinc(-0.0), 1.0);
    }

    #[test]
    fn sinc_zeros_at_multiples_of_pi() {
        for n in 1..10 {
            let x = n as f64 * std::f64::consts::PI;
            assert!(sinc(x).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn series_and_direct_agree_across_threshold() {
        // On either side of the switch the two branches must agree to
        // round-off; check a band of points straddling it.
        for i in -50..=50 {
            let x = SINC_SERIES_THRESHOLD * (1.0 + i as f64 * 1e-3);
            let series = {
                let x2 = x * x;
                1.0 - x2 / 6.0 + x2 * x2 / 120.0
            };
            let direct = x.sin() / x;
            assert!((series - direct).abs() < 2e-16, "x={x}");
            assert!((sinc(x) - direct).abs() < 2e-16);
        }
    }

    #[test]
    fn sinc_is_even() {
        for &x in &[1e-9, 3e-5, 0.3, 2.0, 123.4, 1e6] {
            assert_eq!(sinc(x), sinc(-x));
        }
    }

    #[test]
    fn inv_sqrt_2pi_constant() {
        let expected = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((INV_SQRT_2PI - expected).abs() < 1e-17);
    }
}
