use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not reversible: needs c0 = 0 and c1 a unit")]
    NotReversible,
    #[error("operands live in different rings: {0}")]
    SpecMismatch(String),
    #[error("constant term is not a unit in the scalar domain")]
    NonUnitConstant,
    #[error("argument has nonzero constant term, so the series cannot be evaluated")]
    NonNilpotentArgument,
    #[error("series order {order} too small: argument power {needed} is nonzero")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("exponent vector out of bounds")]
    OutOfBounds,
    #[error("operation requires rational scalars")]
    IntegerDomain,
    #[error("degree-0 part {found} does not equal the rank {rank}")]
    RankMismatch { rank: i64, found: String },
    #[error("diagonal constraints are inconsistent: {0}")]
    SolverInconsistent(String),
    #[error("class is not in filtration level {level}: degree {degree} component is nonzero")]
    FiltrationViolation { level: u32, degree: u32 },
    #[error("K-theory and Chow computations disagree: {k} vs {chow}")]
    GrrMismatch { k: String, chow: String },
    #[error("Euler characteristic {0} is not an integer; inconsistent input data")]
    NonIntegerChi(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
