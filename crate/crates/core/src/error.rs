use thiserror::Error;

/// Errors raised by the kernel. Everything else is total.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdrError {
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("order violation: {0}")]
    OrderViolation(String),
    #[error("truncation insufficient: series known only below x^{valid_below}, the x^0 coefficient is needed (raise --truncation)")]
    TruncationInsufficient { valid_below: i64 },
    #[error("operands belong to different rings")]
    ContextMismatch,
    #[error("{0} is not annihilated by the quasi-integration")]
    NotInKernel(String),
    #[error("cannot project from {from} mode to {to} mode")]
    UnsupportedProjection { from: String, to: String },
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, IdrError>;
