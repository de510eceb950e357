use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no derivation action or substitution for variable `{0}`")]
    UnknownVariable(String),
    #[error("exterior generator bound mismatch: {left} vs {right}")]
    BoundMismatch { left: u16, right: u16 },
    #[error("exterior generator e{index} exceeds bound {bound}")]
    GeneratorOutOfRange { index: u16, bound: u16 },
    #[error("elements belong to different rings or algebras: {0}")]
    ContextMismatch(String),
    #[error("envelope term violates the parity pairing: {0}")]
    ParityViolation(String),
    #[error("variable `{var}` is declared {declared} but was bound to a {found} element")]
    ParityMismatch { var: String, declared: &'static str, found: &'static str },
    #[error("lambda is undefined at {0}")]
    LambdaUndefined(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("term is not homogeneous in `{0}`")]
    NotHomogeneous(String),
    #[error("degree of `{var}` is {degree}, need at least {needed}")]
    DegreeTooLow { var: String, degree: usize, needed: usize },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("degree {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown identity preset `{0}`")]
    UnknownPreset(String),
    #[error("the algebra has no unit element")]
    NoUnit,
    #[error("candidate is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("evaluation routes disagree: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
