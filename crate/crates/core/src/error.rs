use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic (2..=251)")]
    InvalidCharacteristic(u32),
    #[error("extension degree {0} is outside 1..=32")]
    InvalidDegree(usize),
    #[error("modulus must be monic of degree {m} with coefficients below {q}")]
    MalformedModulus { q: u32, m: usize },
    #[error("modulus is reducible over F_{q}")]
    ReducibleModulus { q: u32, m: usize },
    #[error("F_{q}^{m} does not fit in 64-bit element indices")]
    FieldTooLarge { q: u32, m: usize },
    #[error("element index {0} is outside the field")]
    ElementOutOfField(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {value} is not an element of F_{q}")]
    InvalidCoordinate { value: u32, q: u32 },
    #[error("operands live in different spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("operands use different characteristics ({left} vs {right})")]
    CharacteristicMismatch { left: u32, right: u32 },
    #[error("prefix length {prefix} must be smaller than the ambient dimension {ambient}")]
    InvalidPrefix { prefix: usize, ambient: usize },
    #[error("dimension {dim} exceeds the ambient dimension {ambient}")]
    DimensionTooLarge { dim: usize, ambient: usize },
    #[error("the evaluation points are linearly dependent over F_q")]
    DependentAlphas,
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("message q-degree {degree} is not below k = {k}")]
    MessageTooLong { degree: usize, k: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("code has {size} words, above the enumeration limit {limit}")]
    EnumerationLimit { size: u128, limit: u128 },
    #[error("index {index} is out of range for a code of size {size}")]
    IndexOutOfRange { index: u128, size: u128 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("codeword at index {0} repeats an earlier codeword")]
    DuplicateCodeword(u128),
    #[error("cannot erase {kappa} dimensions of a {dim}-dimensional subspace")]
    TooManyErasures { kappa: usize, dim: usize },
    #[error("received dimension {dim} exceeds the ambient dimension {ambient}")]
    TooManyInsertions { dim: usize, ambient: usize },
    #[error("vectors are not independent as required")]
    DependentVectors,
    #[error("vector does not lie in the transmitted subspace")]
    NotInSubspace,
    #[error("the closed form needs an all-zero h schedule")]
    NonZeroSchedule,
}
