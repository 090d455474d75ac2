use thiserror::Error;

/// Errors surfaced by the algebra, complex and duality layers.
///
/// Anything that a scenario can trigger through legitimate input is a
/// variant here; index mismatches inside the library itself panic
/// instead, since they indicate a bug rather than bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("{0} is not prime (or not in range 2..2^31)")]
    NotPrime(u64),

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("sequence is not regular at position {index}: {witness} multiplies into the prior ideal but does not lie in it")]
    NotRegular { index: usize, witness: String },

    #[error("quotient is not finite over the base: variable {var} has no pure power among the leading terms")]
    NotFiniteOverBase { var: String },

    #[error("leading term {term} mixes base and fiber variables; no free basis over the base is exhibited")]
    MixedLeadingTerm { term: String },

    #[error("relation {relation} does not map to zero in the target ring")]
    RelationNotPreserved { relation: String },

    #[error("element {0} is not a unit")]
    NotAUnit(String),

    #[error("matrix is singular over the base ring (determinant {det})")]
    SingularMatrix { det: String },

    #[error("denominator {denom} is a zero divisor")]
    ZeroDivisorDenominator { denom: String },

    #[error("saturation exponent cap {cap} exceeded while comparing localized elements")]
    SaturationCapExceeded { cap: u32 },

    #[error("mismatched ambient data: {0}")]
    AmbientMismatch(String),

    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),

    #[error("transported basis differs from the recomputed basis after base change: {0}")]
    BasisNotTransported(String),

    #[error("Cech comparison implemented for sequences of length 1..=3, got {0}")]
    CechLengthUnsupported(usize),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
