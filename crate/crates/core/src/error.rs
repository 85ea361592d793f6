use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// `I - K` has no usable pivot.
    SingularSystem { column: usize, pivot: f64 },
    /// The bracket handed to a root finder does not change sign.
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// An iterative method ran out of iterations.
    NotConverged {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    /// Coupling outside the range the exact solver supports.
    OutOfRange { value: f64, lo: f64, hi: f64 },
    /// A stencil or momentum falls outside where the quantity is defined.
    Domain(String),
    /// The Gaussian solution left the condensed phase.
    InvalidPhase(String),
    /// A square root was taken of a negative quantity.
    NegativeRadicand { what: &'static str, value: f64 },
    /// A non-finite number showed up where none is allowed.
    NonFinite(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::SingularSystem { column, pivot } => {
                write!(f, "singular linear system (column {column}, pivot {pivot:e})")
            }
            Error::NoSignChange { lo, hi, f_lo, f_hi } => write!(
                f,
                "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}"
            ),
            Error::NotConverged {
                what,
                iterations,
                residual,
            } => write!(
                f,
                "{what} did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::OutOfRange { value, lo, hi } => {
                write!(f, "{value} is outside the supported range [{lo:e}, {hi:e}]")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidPhase(msg) => write!(f, "invalid phase: {msg}"),
            Error::NegativeRadicand { what, value } => {
                write!(f, "negative radicand in {what}: {value:e}")
            }
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! bail_arg {
    ($($arg:tt)*) => {
        return Err($crate::Error::InvalidArgument(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail_arg;
