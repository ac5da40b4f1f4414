use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the special-function kernels and identity checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of gamma/digamma at {0}")]
    Pole(f64),

    #[error("gamma overflows double range at {0}")]
    Overflow(f64),

    #[error("hypergeometric lower parameter {0} is a nonpositive integer")]
    DenominatorPole(f64),

    #[error("z = 0 with negative order {0} has no finite value")]
    Branch(f64),

    #[error("argument z = 0 is a singularity")]
    ArgumentZero,

    #[error("order {nu} is excluded from {formula}")]
    OrderClass { nu: f64, formula: &'static str },

    #[error("negative integer order {0}; integer sums are defined for n >= 0 only")]
    NegativeIntegerOrder(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
