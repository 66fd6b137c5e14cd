use thiserror::Error;

/// Errors produced by the collocation, integration and oracle layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate domain: right endpoint {b} must exceed left endpoint {a}")]
    DegenerateDomain { a: f64, b: f64 },
    #[error("polynomial degree {0} too small, need at least 2")]
    DegreeTooSmall(usize),
    #[error("point {x} outside domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing Taylor coefficient of order {needed}, only {available} available")]
    MissingCoefficients { needed: usize, available: usize },
    #[error("Newton iteration failed to converge in {iterations} iterations (residual {residual:e}) at t = {t}")]
    NewtonDiverged {
        t: f64,
        iterations: usize,
        residual: f64,
    },
    #[error("non-finite values in local expansion at t = {t}")]
    NonFinite { t: f64 },
    #[error("step size fell below minimum {dt_min:e} at t = {t}")]
    StepSizeUnderflow { t: f64, dt_min: f64 },
    #[error("stability function has a pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("quadrature did not reach tolerance {tol:e} (last change {achieved:e})")]
    Quadrature { tol: f64, achieved: f64 },
    #[error("series denominator underflow at x = {x}, t = {t}")]
    SeriesUnderflow { x: f64, t: f64 },
    #[error("order estimate: {0}")]
    OrderEstimate(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for errors caused by bad input rather than a failed solve.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDomain { .. }
                | Error::DegreeTooSmall(_)
                | Error::OutOfDomain { .. }
                | Error::ShapeMismatch { .. }
                | Error::InvalidParameter(_)
                | Error::Config(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
