//! Crate-wide error type.

use std::fmt;

use crate::iterative::IterationReport;

#[derive(Debug, Clone)]
pub enum Error {
    /// A constructor or solver argument is out of its documented range.
    InvalidParam(String),
    /// Two grid functions live on different grids.
    GridMismatch(String),
    /// A sampled or computed value is NaN or infinite.
    NonFinite(String),
    /// An iterative sweep hit a zero diagonal entry.
    ZeroDiagonal { row: usize },
    /// An iteration diverged; the report carries the residual history.
    Diverged(Box<IterationReport>),
    /// Tridiagonal elimination hit a vanishing pivot.
    PivotBreakdown { row: usize },
    /// A solver was handed boundary data it does not support.
    UnsupportedBoundary(String),
    /// Implicit Burgers evaluation past the breaking time (or at a crossing).
    PostShock(String),
    /// A root search or Newton iteration failed to converge.
    NoConvergence(String),
    /// Degenerate input: double characteristic, zero gradient, |phi''| ~ 0, ...
    Degenerate(String),
    /// The discriminant changes sign over the sampled points.
    MixedType(String),
    /// The requested (x, t) is not covered by the characteristic family.
    Uncovered { x: f64, t: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParam(m) => write!(f, "invalid parameter: {m}"),
            Error::GridMismatch(m) => write!(f, "grid mismatch: {m}"),
            Error::NonFinite(m) => write!(f, "non-finite value: {m}"),
            Error::ZeroDiagonal { row } => write!(f, "zero diagonal in row {row}"),
            Error::Diverged(r) => write!(
                f,
                "iteration diverged after {} sweeps (last residual {:.3e})",
                r.iterations,
                r.residual_history.last().copied().unwrap_or(f64::NAN)
            ),
            Error::PivotBreakdown { row } => write!(f, "tridiagonal pivot underflow in row {row}"),
            Error::UnsupportedBoundary(m) => write!(f, "unsupported boundary: {m}"),
            Error::PostShock(m) => write!(f, "post-shock: {m}"),
            Error::NoConvergence(m) => write!(f, "no convergence: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::MixedType(m) => write!(f, "mixed type: {m}"),
            Error::Uncovered { x, t } => {
                write!(f, "point (x={x}, t={t}) not covered by the characteristic family")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
