//! Slit geometry and the position-space state it prepares.
//!
//! A [`SlitSystem`] is the preparation apparatus. Narrow slits (width 0)
//! prepare superpositions of position eigenstates `δ(y − y_j)`; finite
//! slits prepare piecewise-constant wavefunctions `1/√a_j` on each
//! opening. Each slit carries a normalized coefficient `c_j` so that
//! `Σ|c_j|² = 1`.

use std::fmt;
use std::str::FromStr;

use crate::{Result, SlitError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitSpec {
    /// Midpoint of the opening, in wavelengths.
    pub center: f64,
    /// Opening width `a`, in wavelengths. Zero means an ideal narrow slit.
    pub width: f64,
    /// Relative (real, positive) amplitude weight.
    pub weight: f64,
}

impl SlitSpec {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width, weight: 1.0 }
    }

    pub fn weighted(center: f64, width: f64, weight: f64) -> Self {
        Self { center, width, weight }
    }

    pub fn narrow(center: f64) -> Self {
        Self::new(center, 0.0)
    }

    fn lower(&self) -> f64 {
        self.center - 0.5 * self.width
    }

    fn upper(&self) -> f64 {
        self.center + 0.5 * self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlitKind {
    Narrow,
    Finite,
}

/// A validated slit apparatus. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitSystem {
    slits: Vec<SlitSpec>,
    coefficients: Vec<f64>,
    wavelength: f64,
    kind: SlitKind,
}

/// Validates `specs` and normalizes their weights.
pub fn build_system(specs: &[SlitSpec], wavelength: f64) -> Result<SlitSystem> {
    SlitSystem::new(specs.to_vec(), wavelength)
}

impl SlitSystem {
    pub fn new(slits: Vec<SlitSpec>, wavelength: f64) -> Result<Self> {
        if slits.is_empty() {
            return Err(SlitError::EmptySystem);
        }
        check_positive("wavelength", wavelength)?;
        for s in &slits {
            check_finite("slit center", s.center)?;
            check_finite("slit width", s.width)?;
            check_positive("slit weight", s.weight)?;
            if s.width < 0.0 {
                return Err(SlitError::NonPositive { what: "slit width", value: s.width });
            }
        }

        let narrow = slits.iter().filter(|s| s.width == 0.0).count();
        let kind = match narrow {
            0 => SlitKind::Finite,
            n if n == slits.len() => SlitKind::Narrow,
            _ => return Err(SlitError::MixedKinds),
        };

        if kind == SlitKind::Finite {
            let mut order: Vec<usize> = (0..slits.len()).collect();
            order.sort_by(|&i, &j| slits[i].lower().total_cmp(&slits[j].lower()));
            for w in order.windows(2) {
                // Open intervals: touching edges are allowed.
                if slits[w[0]].upper() > slits[w[1]].lower() {
                    let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                    return Err(SlitError::OverlappingSlits { first, second });
                }
            }
        }

        let norm = slits.iter().map(|s| s.weight * s.weight).sum::<f64>().sqrt();
        let coefficients = slits.iter().map(|s| s.weight / norm).collect();

        Ok(Self { slits, coefficients, wavelength, kind })
    }

    pub fn slits(&self) -> &[SlitSpec] {
        &self.slits
    }

    /// Normalized superposition coefficients `c_j`, `Σ c_j² = 1`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `(slit, c_j)` pairs.
    pub fn components(&self) -> impl Iterator<Item = (&SlitSpec, f64)> + '_ {
        self.slits.iter().zip(self.coefficients.iter().copied())
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Total momentum `p = 2π/λ` (ħ = 1).
    pub fn momentum(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength
    }

    pub fn kind(&self) -> SlitKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.slits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slits.is_empty()
    }

    /// Width shared by every slit, if they all agree.
    pub fn common_width(&self) -> Option<f64> {
        let w = self.slits[0].width;
        self.slits.iter().all(|s| s.width == w).then_some(w)
    }

    /// Center-to-center spacing when the slits form a uniform comb
    /// (two or more slits, equal pitch after sorting).
    pub fn uniform_pitch(&self) -> Option<f64> {
        if self.slits.len() < 2 {
            return None;
        }
        let mut centers: Vec<f64> = self.slits.iter().map(|s| s.center).collect();
        centers.sort_by(f64::total_cmp);
        let pitch = centers[1] - centers[0];
        let uniform = centers
            .windows(2)
            .all(|w| ((w[1] - w[0]) - pitch).abs() <= 1e-12 * pitch.abs().max(1.0));
        (uniform && pitch > 0.0).then_some(pitch)
    }

    /// Whether the system is a mirror image of itself about `y = 0`.
    pub fn is_symmetric(&self) -> bool {
        self.slits.iter().all(|s| {
            self.slits
                .iter()
                .any(|t| t.center == -s.center && t.width == s.width && t.weight == s.weight)
        })
    }

    /// Returns a new system with every center shifted by `delta`.
    pub fn translated(&self, delta: f64) -> Result<Self> {
        let slits = self
            .slits
            .iter()
            .map(|s| SlitSpec { center: s.center + delta, ..*s })
            .collect();
        Self::new(slits, self.wavelength)
    }

    /// Returns a new system with every length (centers, widths and the
    /// wavelength) multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        check_positive("scale factor", factor)?;
        let slits = self
            .slits
            .iter()
            .map(|s| SlitSpec { center: s.center * factor, width: s.width * factor, weight: s.weight })
            .collect();
        Self::new(slits, self.wavelength * factor)
    }
}

impl fmt::Display for SlitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SlitKind::Narrow => "narrow",
            SlitKind::Finite => "finite",
        };
        write!(f, "{} {kind} slit(s), wavelength {}:", self.slits.len(), self.wavelength)?;
        for s in &self.slits {
            write!(f, " [center {} width {} weight {}]", s.center, s.width, s.weight)?;
        }
        Ok(())
    }
}

/// `|ψ(y)|²` for a finite-slit state. Slit edges count as inside.
pub fn position_density(sys: &SlitSystem, y: f64) -> Result<f64> {
    if sys.kind() != SlitKind::Finite {
        return Err(SlitError::NarrowKindUnsupported);
    }
    Ok(sys
        .components()
        .filter(|(s, _)| y >= s.lower() && y <= s.upper())
        .map(|(s, c)| c * c / s.width)
        .sum())
}

/// The four slit systems plotted in the reference figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// Double narrow slit, `d = 4λ`.
    Fig2,
    /// Single finite slit, `a = 4λ`.
    Fig3,
    /// Double finite slit, `a = λ`, `d = 4λ`.
    Fig4,
    /// Double finite slit, `a = 2λ`, `d = 4λ`.
    Fig5,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig2, Figure::Fig3, Figure::Fig4, Figure::Fig5];

    pub fn number(self) -> u8 {
        match self {
            Figure::Fig2 => 2,
            Figure::Fig3 => 3,
            Figure::Fig4 => 4,
            Figure::Fig5 => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.number() == n)
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches("fig");
        digits
            .parse::<u8>()
            .ok()
            .and_then(Figure::from_number)
            .ok_or_else(|| format!("unknown figure {s:?}; expected 2, 3, 4 or 5"))
    }
}

pub fn canonical_system(figure: Figure) -> SlitSystem {
    let specs = match figure {
        Figure::Fig2 => vec![SlitSpec::narrow(2.0), SlitSpec::narrow(-2.0)],
        Figure::Fig3 => vec![SlitSpec::new(0.0, 4.0)],
        Figure::Fig4 => vec![SlitSpec::new(2.0, 1.0), SlitSpec::new(-2.0, 1.0)],
        Figure::Fig5 => vec![SlitSpec::new(2.0, 2.0), SlitSpec::new(-2.0, 2.0)],
    };
    SlitSystem::new(specs, 1.0).expect("canonical systems are valid")
}

fn check_finite(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(SlitError::NonFinite { what, value })
    }
}

fn check_positive(what: &'static str, value: f64) -> Result<()> {
    check_finite(what, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(SlitError::NonPositive { what, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_narrow_slit_has_unit_coefficient() {
        let sys = build_system(&[SlitSpec::narrow(0.0)], 1.0).unwrap();
        assert_eq!(sys.kind(), SlitKind::Narrow);
        assert_eq!(sys.coefficients(), &[1.0]);
    }

    #[test]
    fn equal_weight_double_slit_coefficients() {
        let sys = build_system(&[SlitSpec::narrow(2.0), SlitSpec::narrow(-2.0)], 1.0).unwrap();
        for &c in sys.coefficients() {
            assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_kinds_rejected() {
        let err = build_system(&[SlitSpec::new(0.0, 0.0), SlitSpec::new(1.0, 2.0)], 1.0).unwrap_err();
        assert_eq!(err, SlitError::MixedKinds);
    }

    #[test]
    fn overlapping_slits_rejected() {
        let err = build_system(&[SlitSpec::new(0.0, 3.0), SlitSpec::new(2.0, 3.0)], 1.0).unwrap_err();
        assert_eq!(err, SlitError::OverlappingSlits { first: 0, second: 1 });
    }

    #[test]
    fn touching_slits_allowed() {
        assert!(build_system(&[SlitSpec::new(0.0, 2.0), SlitSpec::new(2.0, 2.0)], 1.0).is_ok());
    }

    #[test]
    fn empty_and_nonpositive_rejected() {
        assert_eq!(build_system(&[], 1.0).unwrap_err(), SlitError::EmptySystem);
        assert!(matches!(
            build_system(&[SlitSpec::narrow(0.0)], 0.0),
            Err(SlitError::NonPositive { what: "wavelength", .. })
        ));
        assert!(matches!(
            build_system(&[SlitSpec::weighted(0.0, 1.0, -1.0)], 1.0),
            Err(SlitError::NonPositive { what: "slit weight", .. })
        ));
        assert!(matches!(
            build_system(&[SlitSpec::new(0.0, -1.0)], 1.0),
            Err(SlitError::NonPositive { what: "slit width", .. })
        ));
        assert!(matches!(
            build_system(&[SlitSpec::new(f64::NAN, 1.0)], 1.0),
            Err(SlitError::NonFinite { .. })
        ));
        assert!(matches!(
            build_system(&[SlitSpec::new(0.0, 1.0)], f64::INFINITY),
            Err(SlitError::NonFinite { .. })
        ));
    }

    #[test]
    fn position_density_values() {
        let single = build_system(&[SlitSpec::new(0.0, 4.0)], 1.0).unwrap();
        assert_eq!(position_density(&single, 1.0).unwrap(), 0.25);
        assert_eq!(position_density(&single, 3.0).unwrap(), 0.0);
        assert_eq!(position_density(&single, 2.0).unwrap(), 0.25);

        let double = canonical_system(Figure::Fig4);
        assert!((position_density(&double, 2.0).unwrap() - 0.5).abs() < 1e-15);

        let narrow = canonical_system(Figure::Fig2);
        assert_eq!(position_density(&narrow, 2.0), Err(SlitError::NarrowKindUnsupported));
    }

    #[test]
    fn position_density_integrates_to_one() {
        // The density is piecewise constant, so the integral is the exact
        // sum of height × width over the openings.
        let sys = build_system(
            &[SlitSpec::weighted(-3.0, 0.5, 2.0), SlitSpec::weighted(0.0, 1.5, 0.3), SlitSpec::new(4.0, 2.0)],
            1.0,
        )
        .unwrap();
        let total: f64 = sys
            .slits()
            .iter()
            .map(|s| position_density(&sys, s.center).unwrap() * s.width)
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_geometry() {
        let f2 = canonical_system(Figure::Fig2);
        assert_eq!(f2.kind(), SlitKind::Narrow);
        assert_eq!(f2.slits().iter().map(|s| s.center).collect::<Vec<_>>(), vec![2.0, -2.0]);
        let f3 = canonical_system(Figure::Fig3);
        assert_eq!(f3.slits(), &[SlitSpec::new(0.0, 4.0)]);
        let f4 = canonical_system(Figure::Fig4);
        assert!(f4.slits().iter().all(|s| s.width == 1.0 && s.center.abs() == 2.0));
        let f5 = canonical_system(Figure::Fig5);
        assert!(f5.slits().iter().all(|s| s.width == 2.0 && s.center.abs() == 2.0));
        for f in Figure::ALL {
            assert_eq!(canonical_system(f).wavelength(), 1.0);
        }
        assert_eq!(f5.uniform_pitch(), Some(4.0));
        assert!(f5.is_symmetric());
    }

    #[test]
    fn figure_parsing() {
        assert_eq!("4".parse::<Figure>().unwrap(), Figure::Fig4);
        assert_eq!("fig2".parse::<Figure>().unwrap(), Figure::Fig2);
        assert!("6".parse::<Figure>().is_err());
    }
}
