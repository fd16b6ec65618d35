use thiserror::Error;

use crate::slit::SlitKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlitError {
    #[error("a slit system needs at least one slit")]
    EmptySystem,
    #[error("narrow (width 0) and finite slits cannot be mixed in one system")]
    MixedKinds,
    #[error("slits {first} and {second} overlap")]
    OverlappingSlits { first: usize, second: usize },
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("position density of a narrow-slit (delta) state is not a function")]
    NarrowKindUnsupported,
    #[error("operation requires a {expected:?} system, got {found:?}")]
    WrongKind { expected: SlitKind, found: SlitKind },
    #[error("paper-literal scaling is only defined for two finite slits")]
    PaperLiteralUnsupported,
    #[error("sample count must be odd and at least {min}, got {got}")]
    BadSampleCount { got: usize, min: usize },
    #[error("extrema at indices {first} and {second} are closer than 3 grid points")]
    TooCoarse { first: usize, second: usize },
    #[error("quadrature needs at least {min} nodes per slit, got {got}")]
    TooFewNodes { got: usize, min: usize },
    #[error("panel count must be even and non-zero, got {0}")]
    BadPanelCount(usize),
    #[error("fit did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64, a: f64, d: Option<f64> },
    #[error("{0}")]
    InvalidInput(String),
}
