use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidCharacteristic(u64),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("weights belong to different Λ(n, r): {0}")]
    MismatchedShape(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("multi-index is not row-semistandard above l(λ): {0}")]
    NotInJ(String),
    #[error("pair is not upper triangular at position {0}")]
    NotUpperTriangular(usize),
    #[error("operands belong to different algebras")]
    MismatchedAlgebra,
    #[error("dimension budget exceeded: need {needed}, budget {budget}")]
    DimensionBudgetExceeded { needed: u64, budget: u64 },
    #[error("weight set is not a dominance coideal: {0}")]
    NotACoideal(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("closed form does not cover this weight: {0}")]
    RegimeNotCovered(String),
    #[error("K_λ is projective for λ = {0}")]
    ProjectiveSimple(String),
    #[error("group action mismatch: {0}")]
    GroupActionMismatch(String),
    #[error("unsupported relation form: {0}")]
    UnsupportedRelationForm(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
