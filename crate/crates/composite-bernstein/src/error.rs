use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An evaluation point fell outside the admissible interval.
    Domain { x: f64, lo: f64, hi: f64 },
    /// A structural parameter was out of range (degree, grid size, tolerance, ...).
    InvalidParameter(&'static str),
    /// An interval with `a >= b` was requested.
    DegenerateInterval { a: f64, b: f64 },
    /// The adaptive integrator exhausted its depth budget on some subinterval.
    ConvergenceFailure { a: f64, b: f64, depth: u32 },
    /// A derivative of the given order was required but not attached to the function.
    MissingDerivative { label: String, order: u8 },
    /// A corpus lookup failed.
    UnknownLabel { label: String },
    /// An attached second derivative disagrees with a finite-difference probe.
    DerivativeMismatch { label: String, x: f64, analytic: f64, numeric: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { x, lo, hi } => {
                write!(f, "evaluation point {x} outside [{lo}, {hi}]")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateInterval { a, b } => {
                write!(f, "degenerate interval [{a}, {b}]")
            }
            Error::ConvergenceFailure { a, b, depth } => write!(
                f,
                "adaptive integration failed to converge on [{a}, {b}] at depth {depth}"
            ),
            Error::MissingDerivative { label, order } => {
                write!(f, "function '{label}' carries no derivative of order {order}")
            }
            Error::UnknownLabel { label } => write!(f, "unknown function label '{label}'"),
            Error::DerivativeMismatch { label, x, analytic, numeric } => write!(
                f,
                "second derivative of '{label}' at x = {x} is {analytic} but finite differences give {numeric}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
