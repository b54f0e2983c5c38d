use thiserror::Error;

/// Errors produced by the library. Every variant maps to an input problem;
/// verification failures are reported through verdict fields, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible Cartan type {family}{rank}")]
    InadmissibleLabel { family: char, rank: u32 },

    #[error("{value} is not a prime power")]
    NotPrimePower { value: u64 },

    #[error("{value} is not a prime")]
    NotPrime { value: u64 },

    #[error("numerator must have length 2g+1 = {expected}, got {actual}")]
    NumeratorLength { expected: usize, actual: usize },

    #[error("numerator must start with 1, got {0}")]
    NumeratorConstant(String),

    #[error("functional equation fails at index {index}: a_{mirror} = {found}, expected q^{shift} * a_{index} = {expected}")]
    FunctionalEquation {
        index: usize,
        mirror: usize,
        shift: u32,
        found: String,
        expected: String,
    },

    #[error("negative point count N_{r} = {count}")]
    NegativePointCount { r: u32, count: String },

    #[error("negative closed-point count a_{d} = {count}")]
    NegativeClosedPoints { d: u32, count: String },

    #[error("Weil bound violated at r = {r}: |N_r - q^r - 1| = {deviation}")]
    WeilBound { r: u32, deviation: String },

    #[error("singular curve: discriminant vanishes mod {p}")]
    SingularCurve { p: u64 },

    #[error("{0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error at position {position}: {message} (expected {expected})")]
    Parse {
        position: usize,
        message: String,
        expected: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(
        position: usize,
        message: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        Error::Parse {
            position,
            message: message.into(),
            expected: expected.into(),
        }
    }
}
