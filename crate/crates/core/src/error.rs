use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("basis kind mismatch: {0}")]
    BasisMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("illegal basis key: {0}")]
    IllegalKey(String),
    #[error("sample grid deficient: {0}")]
    GridDeficient(String),
    #[error("no exact fit: {0}")]
    NoFit(String),
    #[error("element outside cocycle domain: {0}")]
    DomainMismatch(String),
    #[error("cocycle slot not determined by the defining formulas: {0}")]
    UnderdeterminedSlot(String),
    #[error("element is not parity-homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("mode word weight imbalance: {0}")]
    WeightImbalance(String),
    #[error("mode word factor not homogeneous: {0}")]
    NonHomogeneousFactor(String),
    #[error("generator lies outside the centralizer frame: {0}")]
    OutOfSubalgebra(String),
    #[error("matrix fails the membership constraints: {0}")]
    NotMember(String),
    #[error("element not in the required ad(h) eigenspace: {0}")]
    WrongEigenspace(String),
    #[error("families do not span the eigenspace: {0}")]
    SpanDeficient(String),
    #[error("unknown identity lemma: {0}")]
    UnknownLemma(String),
    #[error("unknown (family, cocycle) pair: {0}")]
    UnknownPair(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
}
