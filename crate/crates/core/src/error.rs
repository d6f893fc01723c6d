use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroInput,

    #[error("Groebner budget exhausted after {0} reduction steps")]
    BudgetExhausted(u64),

    #[error("derivation is not well-defined on the quotient: image of relation {relation} reduces to {residue}")]
    NotWellDefined { relation: String, residue: String },

    #[error("iteration bound {bound} exceeded before reaching zero")]
    BoundExceeded { bound: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("morphism is not invertible: {0}")]
    NotInvertible(String),

    #[error("congruence f_(m-{i}) fails at coefficient x^{j}: {detail}")]
    CongruenceFailure { i: u32, j: u32, detail: String },

    #[error("exact division failed: {0}")]
    NonDivisible(String),

    #[error("filtration is not proper: {0}")]
    Improper(String),

    #[error("linear system too large: {unknowns} unknowns exceeds limit {limit}")]
    SystemTooLarge { unknowns: usize, limit: usize },
}
