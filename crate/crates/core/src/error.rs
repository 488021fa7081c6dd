use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix data length does not match its shape.
    BadShape { rows: usize, cols: usize, len: usize },
    /// A NaN or infinite entry was supplied.
    NonFinite,
    /// Operands have incompatible dimensions.
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    NotSquare { rows: usize, cols: usize },
    NotHermitian { residual: f64 },
    NotPsd { min_eigenvalue: f64 },
    NoConvergence { routine: &'static str },
    /// The operator fails the range condition `R(T*A) ⊆ R(A)`.
    NoAdjoint { residual: f64 },
    /// The metric has rank zero, so every A-gauge is undefined.
    EmptyRange,
    NotAPositive,
    /// Non-integer powers are only supported for strictly positive metrics.
    UnsupportedExponent { exponent: f64 },
    RequiresStrictPositivity,
    UnknownCheckId(String),
    InvalidConfig(&'static str),
    MissingOperand(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadShape { rows, cols, len } => {
                write!(f, "{len} entries cannot fill a {rows}x{cols} matrix")
            }
            Error::NonFinite => f.write_str("matrix contains a non-finite entry"),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "expected a square matrix, got {rows}x{cols}"),
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (relative residual {residual:.3e})")
            }
            Error::NotPsd { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")
            }
            Error::NoConvergence { routine } => write!(f, "{routine} did not converge"),
            Error::NoAdjoint { residual } => {
                write!(f, "operator admits no A-adjoint (range residual {residual:.3e})")
            }
            Error::EmptyRange => f.write_str("metric operator has rank zero"),
            Error::NotAPositive => f.write_str("operator is not A-positive"),
            Error::UnsupportedExponent { exponent } => {
                write!(f, "exponent {exponent} requires a strictly positive metric")
            }
            Error::RequiresStrictPositivity => f.write_str("check requires a strictly positive metric"),
            Error::UnknownCheckId(id) => write!(f, "unknown check id `{id}`"),
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
            Error::MissingOperand(role) => write!(f, "missing operand `{role}`"),
        }
    }
}

impl core::error::Error for Error {}
