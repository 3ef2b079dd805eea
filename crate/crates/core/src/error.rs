use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is even; every ring here must be 2-torsion free, so an odd modulus is required")]
    EvenModulus(u64),
    #[error("modulus {0} out of range (need 3 <= m < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("module has more than {0} elements; refusing to enumerate")]
    TooLargeToEnumerate(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unity is not a two-sided identity on basis element {0}")]
    NoUnity(usize),
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("ring has {order} elements, above the enumeration bound {bound}")]
    EnumerationBoundExceeded { order: String, bound: u64 },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("element has {found} coordinates but the ring has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("bimodule is not unital on basis element {0}")]
    BimoduleNotUnital(usize),
    #[error("bimodule actions are not associative: {0}")]
    BimoduleNotAssociative(String),
    #[error("bimodule is not faithful: {0}")]
    NotFaithful(String),
    #[error("bimodule is not over the given rings: {0}")]
    RingMismatch(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("map is defined on ring '{found}', expected '{expected}'")]
    RingMismatch { expected: String, found: String },
    #[error("delta is not a Jordan derivation")]
    DeltaNotJordanDerivation,
}

impl From<LinalgError> for MapError {
    fn from(e: LinalgError) -> Self {
        MapError::Ring(RingError::Linalg(e))
    }
}

/// Failures of the constructive theorem checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("input map is not in the required solution module: {0}")]
    NotASolution(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("theorem violated at step '{step}': {witness}")]
    TheoremViolated { step: String, witness: String },
    #[error("unknown condition '{0}'")]
    UnknownCondition(String),
}

impl From<RingError> for TheoremError {
    fn from(e: RingError) -> Self {
        TheoremError::Map(MapError::Ring(e))
    }
}

impl From<LinalgError> for TheoremError {
    fn from(e: LinalgError) -> Self {
        TheoremError::Map(MapError::from(e))
    }
}

impl TheoremError {
    /// True when the failure is an enumeration bound, not a logical failure.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(
            self,
            TheoremError::Map(MapError::Ring(RingError::EnumerationBoundExceeded { .. }))
        )
    }
}
