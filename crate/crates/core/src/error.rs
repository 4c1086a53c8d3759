use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeOperand,
    #[error("logarithm of a non-positive number")]
    NonPositiveOperand,
    #[error("operand must be nonzero")]
    ZeroOperand,
    #[error("zero quaternion has no inverse")]
    ZeroDivisor,
    #[error("generator {index} has norm not above 1")]
    NormNotAboveOne { index: usize },
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generators {first} and {second} are equal")]
    DuplicateGenerator { first: usize, second: usize },
    #[error("semigroup has no generators")]
    EmptySemigroup,
    #[error("semigroup is not commutative")]
    NotCommutative,
    #[error("commuting generators do not share a complex plane")]
    NotCoplanar,
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("precision escalation reached {bits} bits without certifying the result")]
    PrecisionFailure { bits: u32 },
    #[error("logarithm generator has alpha = 0")]
    ZeroAlpha,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("endomorphism cannot be evaluated on this curve: {0}")]
    UnsupportedEndomorphism(String),
    #[error("invalid input at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Prefixes the field path of a parse error; other errors pass through.
    pub fn at(self, prefix: &str) -> Self {
        match self {
            Error::Parse { path, message } => Error::Parse {
                path: if path.is_empty() {
                    prefix.to_string()
                } else if path.starts_with('[') {
                    format!("{prefix}{path}")
                } else {
                    format!("{prefix}.{path}")
                },
                message,
            },
            other => other,
        }
    }
}
