use thiserror::Error;

/// Every failure a library operation can report.
///
/// `InvariantViolation` is reserved for postconditions that the theory
/// guarantees; seeing it means a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup lattice enumeration needs |G| <= {cap}, got {order}")]
    LatticeCapExceeded { order: usize, cap: usize },
    #[error("index {index} exceeds cap {cap} and the lattice fallback is unavailable")]
    IndexCapExceeded { index: usize, cap: usize },
    #[error("slab has {size} vertices, cap is {cap}")]
    SlabCapExceeded { size: usize, cap: usize },
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("element id {id} out of range for group of order {order}")]
    ElementOutOfRange { id: usize, order: usize },
    #[error("permutation is not an element of the group: {0}")]
    NotAnElement(String),
    #[error("subgroup handle does not belong to this group")]
    NotASubgroup,
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup does not contain the diagonal")]
    NotAboveDelta,
    #[error("H is not (U,S)-reduced: <S, H∩U> has order {generated}, H has order {order}")]
    NotReduced { generated: usize, order: usize },
    #[error("H is not maximal: {witness}")]
    NotMaximal { witness: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("no O'Nan-Scott criterion set matches: {0}")]
    Unclassifiable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl CoreError {
    /// Stable variant name, used in structured CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            CoreError::OrderCapExceeded { .. } => "OrderCapExceeded",
            CoreError::LatticeCapExceeded { .. } => "LatticeCapExceeded",
            CoreError::IndexCapExceeded { .. } => "IndexCapExceeded",
            CoreError::SlabCapExceeded { .. } => "SlabCapExceeded",
            CoreError::MalformedPermutation(_) => "MalformedPermutation",
            CoreError::ElementOutOfRange { .. } => "ElementOutOfRange",
            CoreError::NotAnElement(_) => "NotAnElement",
            CoreError::NotASubgroup => "NotASubgroup",
            CoreError::NotAChain(_) => "NotAChain",
            CoreError::NotNormal => "NotNormal",
            CoreError::NotAboveDelta => "NotAboveDelta",
            CoreError::NotReduced { .. } => "NotReduced",
            CoreError::NotMaximal { .. } => "NotMaximal",
            CoreError::PreconditionFailed(_) => "PreconditionFailed",
            CoreError::NotAHomomorphism(_) => "NotAHomomorphism",
            CoreError::Unclassifiable(_) => "Unclassifiable",
            CoreError::Parse(_) => "Parse",
            CoreError::InvariantViolation(_) => "InvariantViolation",
        }
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
