use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("complex is not minimal: d{map} has a unit entry at ({row}, {col})")]
    NotMinimal { map: usize, row: usize, col: usize },
    #[error("not a complex: d{0} composed with the next differential is nonzero")]
    NotAComplex(usize),
    #[error("the module is zero")]
    ZeroModule,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("ring is not Gorenstein")]
    NotGorenstein,
    #[error("not a system of parameters: {0}")]
    NotSop(String),
    #[error("lifting failed: {0}")]
    LiftFailure(String),
    #[error("resolution too short: step {needed} requested, {available} computed")]
    ResolutionTooShort { needed: usize, available: usize },
    #[error("degree cap {0} exceeded")]
    Truncated(u32),
    #[error("entry ({row}, {col}) of d{map} has a unit constant term but is not a unit")]
    NonUnitPivot { map: usize, row: usize, col: usize },
}
