//! Momentum-space probability distributions for particles scattered by
//! systems of slits.
//!
//! A slit apparatus prepares a position state `ψ(y)`; measuring the
//! transverse momentum `p_y` projects it onto plane waves, so the
//! detection probability is `|⟨p_y|ψ⟩|²`. This crate computes those
//! amplitudes in closed form for narrow (delta) and finite-width slits,
//! turns them into momentum and angular distributions, analyzes fringes,
//! fits slit geometry back out of sampled patterns, and checks every
//! closed form against an independent numerical Fourier transform.
//!
//! Units are natural: `ħ = 1` and lengths are measured in de Broglie
//! wavelengths, so the total momentum is `p = 2π/λ` and the wavenumber
//! `k = p_y/ħ = p sin θ`.
//!
//! Grid evaluation runs on rayon when the `parallel` feature (on by
//! default) is enabled and falls back to plain iterators otherwise.

// `!(x > 0.0)` is used on purpose so NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod cli;
pub mod distribution;
mod error;
pub mod grid;
pub mod math;
pub mod oracle;
pub mod slit;

pub use amplitude::{finite_amplitude, momentum_amplitude, narrow_amplitude, phase_factor};
pub use distribution::fit::{fit_slit_parameters, FitKind, FitResult};
pub use distribution::fringes::{find_fringes, interference_orders, Extremum, FringeReport, InterferenceOrder};
pub use distribution::{
    angular_distribution, closed_form_double_finite, closed_form_double_narrow, closed_form_single,
    momentum_distribution, probability_density, reduced_variables, Distribution, DistributionMeta,
    ReducedVariables, Variable,
};
pub use error::SlitError;
pub use oracle::{compare, narrow_direct_sum, normalization_integral, quadrature_amplitude, Normalization, VerificationReport};
pub use slit::{build_system, canonical_system, position_density, Figure, SlitKind, SlitSpec, SlitSystem};

pub type Result<T, E = SlitError> = std::result::Result<T, E>;
