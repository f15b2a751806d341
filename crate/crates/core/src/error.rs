use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} too large for GF(p) arithmetic")]
    PrimeTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("quiver error: {0}")]
    Quiver(String),
    #[error("ideal not admissible or closure cap {0} too low")]
    NotAdmissible(usize),
    #[error("field GF({p}) too small for dimension {dim}: need p > dim")]
    FieldTooSmall { p: u64, dim: usize },
    #[error("decomposition requires a prime field")]
    DecomposeRequiresPrimeField,
    #[error("decomposition failed: {0}")]
    DecomposeFailed(String),
    #[error("isomorphism test inconclusive")]
    Inconclusive,
    #[error("dimension cap {0} exceeded")]
    CapExceeded(usize),
    #[error("module is projective: {0}")]
    ProjectiveInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    Input(String),
}
