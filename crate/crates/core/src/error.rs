use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("PoleProximity: argument {z} lies within the pole guard of the pole at {pole}")]
    PoleProximity { z: Complex64, pole: Complex64 },

    #[error("SectorViolation: arg({z}) is too close to the negative real axis")]
    SectorViolation { z: Complex64 },

    #[error("IndexBeyondTable: index {index} exceeds table capacity {capacity}")]
    IndexBeyondTable { index: usize, capacity: usize },

    #[error("DomainViolation: {0}")]
    DomainViolation(String),

    #[error("OverflowRegime: |Im s| = {imag} exceeds the validity window {limit}")]
    OverflowRegime { imag: f64, limit: f64 },

    #[error(
        "ToleranceUnreachable: requested {requested:e}, achieved {achieved:e} after {evaluations} evaluations"
    )]
    ToleranceUnreachable {
        requested: f64,
        achieved: f64,
        evaluations: usize,
    },

    #[error("PoleOnPath: the contour passes within the pole guard of {pole}")]
    PoleOnPath { pole: Complex64 },

    #[error("PoleOnBoundary: the rectangle boundary passes within the pole guard of {pole}")]
    PoleOnBoundary { pole: Complex64 },

    #[error("PoleOnCircle: the circle passes within the pole guard of {pole}")]
    PoleOnCircle { pole: Complex64 },

    #[error("NotAPole: z = {0} is not a pole of the integrand")]
    NotAPole(i64),

    #[error("NonFinite: {0} produced a non-finite value")]
    NonFinite(&'static str),

    #[error("UnknownCaseKind: {0}")]
    UnknownCaseKind(String),

    #[error("ConfigError: {0}")]
    ConfigError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
