use alloc::boxed::Box;
use core::fmt;

use num_complex::Complex64;

use crate::model::IntervalId;
use crate::spectrum::SpectrumEntry;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NonFinite {
        name: &'static str,
    },
    NotHermitian {
        name: &'static str,
        residual: f64,
    },
    NotUnitary {
        name: &'static str,
        residual: f64,
    },
    /// A strict ordering between interval coordinates failed; `fields` names the pair.
    Ordering {
        fields: &'static str,
    },
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    GridMismatch,
    MissingPart {
        part: IntervalId,
    },
    GridTooShort {
        len: usize,
        required: usize,
    },
    /// The spectral parameter must be real here (or must not be, see `reason`).
    Lambda {
        lambda: Complex64,
        reason: &'static str,
    },
    Singular {
        pivot: f64,
        scale: f64,
    },
    NoConvergence {
        sweeps: usize,
        residual: f64,
    },
    /// The inner boundary solve is singular: `lambda` is (numerically) an eigenvalue.
    InPointSpectrum {
        lambda: Complex64,
        nearest: Option<Box<SpectrumEntry>>,
    },
}

impl Error {
    /// Attach a matrix name to validation errors raised by an anonymous constructor.
    pub fn named(self, name: &'static str) -> Self {
        match self {
            Error::NotHermitian { residual, .. } => Error::NotHermitian { name, residual },
            Error::NotUnitary { residual, .. } => Error::NotUnitary { name, residual },
            Error::NonFinite { .. } => Error::NonFinite { name },
            other => other,
        }
    }

    /// Numerical failures (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. } | Error::NoConvergence { .. } | Error::InPointSpectrum { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite { name } => write!(f, "{name}: non-finite entry"),
            Error::NotHermitian { name, residual } => {
                write!(f, "{name}: matrix is not Hermitian (residual {residual:e})")
            }
            Error::NotUnitary { name, residual } => {
                write!(f, "{name}: matrix is not unitary (residual {residual:e})")
            }
            Error::Ordering { fields } => {
                write!(f, "interval ordering violated: {fields} must be strictly increasing")
            }
            Error::InvalidParameter { name, reason } => write!(f, "{name}: {reason}"),
            Error::GridMismatch => write!(f, "sampled functions live on different grids"),
            Error::MissingPart { part } => write!(f, "function has no {part} part"),
            Error::GridTooShort { len, required } => {
                write!(f, "grid has {len} points, at least {required} required")
            }
            Error::Lambda { lambda, reason } => write!(f, "lambda = {lambda}: {reason}"),
            Error::Singular { pivot, scale } => {
                write!(f, "singular matrix (pivot {pivot:e}, scale {scale:e})")
            }
            Error::NoConvergence { sweeps, residual } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (residual {residual:e})"
            ),
            Error::InPointSpectrum { lambda, nearest } => match nearest {
                Some(entry) => write!(
                    f,
                    "lambda = {lambda} lies in the point spectrum (nearest eigenvalue {})",
                    entry.lambda
                ),
                None => write!(f, "lambda = {lambda} lies in the point spectrum"),
            },
        }
    }
}

impl core::error::Error for Error {}
