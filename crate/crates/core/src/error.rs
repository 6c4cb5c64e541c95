use thiserror::Error;

use crate::measure::AreaBracket;

/// Errors raised by geometric constructions and numerical procedures.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error(
        "negative support value {value:e} at theta = {theta}: origin lies outside a p-sum operand"
    )]
    NegativeSupport { theta: f64, value: f64 },

    #[error("singular matrix (|det| = {0:e})")]
    SingularMatrix(f64),

    #[error("invalid exponent {0}: p must be >= 1")]
    InvalidExponent(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("area bracket did not reach the requested tolerance; last bracket [{}, {}] at N = {}", .bracket.lower, .bracket.upper, .bracket.samples)]
    ToleranceNotReached { bracket: AreaBracket },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("origin lies outside the body")]
    OriginOutside,

    #[error("origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("quadrature failed: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("consistency check failed: deviation {deviation:e} exceeds {tolerance:e}")]
    ConsistencyFailure { deviation: f64, tolerance: f64 },

    #[error("linear parameter systems move along different directions")]
    DirectionMismatch,

    #[error("polygon with {0} vertices cannot be reduced further")]
    NotReducible(usize),

    #[error("movement leaves the class of convex bodies at t = {0}")]
    NotConvex(f64),

    #[error("parameter t = {t} outside interval [{t0}, {t1}]")]
    OutOfInterval { t: f64, t0: f64, t1: f64 },
}

pub type Result<T> = std::result::Result<T, GeomError>;
