use num_complex::Complex64;
use thiserror::Error;

use crate::contour::{ContourKind, QuadResult, Sector};

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("|z| = {modulus} exceeds the evaluation envelope {limit}")]
    EnvelopeExceeded { modulus: f64, limit: f64 },

    #[error("non-finite input or intermediate value: {0}")]
    NonFinite(&'static str),

    #[error("contour {kind:?} is not defined for sector {sector:?}")]
    InvalidKindForSector { kind: ContourKind, sector: Sector },

    #[error("degenerate contour geometry: {0}")]
    DegenerateGeometry(String),

    #[error(
        "quadrature tolerance not met: value {} + {}i, error estimate {:e} after {} nodes",
        .0.value.re, .0.value.im, .0.abs_err_est, .0.nodes
    )]
    ToleranceNotMet(QuadResult),

    #[error("k -> 0 endpoint is not regularized along direction {angle} rad")]
    EndpointSingularity { angle: f64 },

    #[error("cannot classify the sector of z0 = {0}")]
    SectorDispatchError(Complex64),

    #[error("shift x0 = {0} is negative; the half-line representation needs x0 >= 0")]
    NegativeShift(f64),

    #[error("electric field has zero magnitude")]
    ZeroField,

    #[error("r and r' coincide")]
    CoincidentPoints,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for failures of the numerical integration itself, as opposed to
    /// domain violations in the inputs.
    pub fn is_quadrature_failure(&self) -> bool {
        matches!(
            self,
            Error::ToleranceNotMet(_) | Error::EndpointSingularity { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
