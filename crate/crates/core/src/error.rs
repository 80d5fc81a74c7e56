use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has no entries")]
    EmptyMatrix,
    #[error("expected a subspace of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("vector is not decomposable (a Plücker relation is nonzero)")]
    NotDecomposable,
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),
    #[error("map is not surjective: maximal minors have a common zero")]
    NotLocallyFree,
    #[error("curve degree {0} is outside the supported range (at most 3)")]
    OutOfScopeDegree(usize),
    #[error("operation requires degree {expected}, curve has degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("conic family spans a {0}-dimensional space instead of 4")]
    DegenerateConic(usize),
    #[error("line is not contained in the section")]
    NotInSection,
    #[error("section covectors restrict to a dependent system on the envelope")]
    NonGenericEnvelope,
    #[error("interpolation is unstable: fresh samples violate {0} form(s)")]
    UnstableInterpolation(usize),
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("enumeration needs {needed} membership tests, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("section has a denominator divisible by {0}")]
    BadReduction(u32),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
