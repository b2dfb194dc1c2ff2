use alloc::string::String;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integrality failure: {0}")]
    InternalIntegralityFailure(String),
    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),
    #[error("Witt vector of length {0} is too short for this operator")]
    LengthTooShort(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("action does not have order dividing {0}")]
    ActionOrderInvalid(u64),
    #[error("Mackey functors live over different groups (C_{0} vs C_{1})")]
    GroupMismatch(u64, u64),
    #[error("C_{sub} is not a subgroup of C_{order}")]
    NotASubgroup { sub: u64, order: u64 },
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("p = {p} divides n = {n}")]
    PrimeDividesN { p: u64, n: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("Witt complexes require an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("malformed data: {0}")]
    MalformedData(String),
    #[error("base ring is not p-local: multiplication by {0} is not invertible")]
    NotPLocal(u64),
    #[error("Mackey functor axiom violated: {0}")]
    AxiomViolation(String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

pub type Result<T> = core::result::Result<T, Error>;
