use thiserror::Error;

/// Errors raised by the group, module and checker layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{k} exceeds the cap of 65536")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("enumeration cap exceeded: group of order {order} > cap {cap}")]
    EnumerationCap { order: u128, cap: usize },
    #[error("group order overflows 128 bits")]
    OrderOverflow,
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("the trivial group has no minimal normal subgroups")]
    TrivialGroup,
    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("module dimension {0} exceeds the cap of 128")]
    DimensionCap(usize),
    #[error("meataxe budget of {0} algebra elements exhausted without certification")]
    MeataxeBudget(usize),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("invalid catalog parameters: {0}")]
    CatalogParams(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
