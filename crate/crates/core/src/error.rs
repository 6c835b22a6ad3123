use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index {index} out of range (available up to {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("zeta has a pole at s = 1")]
    Pole,
    /// The requested accuracy could not be certified.
    #[error("precision failure: certified {achieved_bits} of {requested_bits} requested bits")]
    Precision { requested_bits: usize, achieved_bits: usize },
    #[error("zero refinement near {near} failed: {reason}")]
    Refinement { near: String, reason: String },
    #[error("data error at line {line}: {reason}")]
    Data { line: usize, reason: String },
    /// An evaluation at the zero `1/2 + i·gamma` failed.
    #[error("at ordinate {gamma}: {source}")]
    AtOrdinate { gamma: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
