use thiserror::Error;

/// Everything that can go wrong when building a model or computing with it.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u64 },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("non-isolated critical locus in sector {sector}")]
    NonIsolated { sector: String },

    #[error("local quotient did not stabilize below degree {d_max}")]
    NoStabilization { d_max: u32 },

    #[error("elements belong to different twisted algebras")]
    MixedAlgebras,

    #[error("variable sets overlap")]
    OverlappingVariables,

    #[error("not an invertible polynomial: {0}")]
    NotInvertible(String),

    #[error("computation error: {0}")]
    Computation(String),
}

impl Error {
    /// Process exit code the CLI maps this error to. Validation and
    /// configuration problems are 1, runtime computation failures are 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::Parse { .. }
            | Error::Validation(_)
            | Error::NotInvertible(_)
            | Error::MixedAlgebras
            | Error::OverlappingVariables => 1,
            Error::DivisionByZero { .. }
            | Error::NonIsolated { .. }
            | Error::NoStabilization { .. }
            | Error::Computation(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
