use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("modulus {which} has degree {got}, expected {expected}")]
    ModulusDegree {
        which: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("modulus {which} is not monic")]
    NotMonic { which: &'static str },

    #[error("modulus {which} {modulus:?} is reducible: divisible by {factor:?}")]
    Reducible {
        which: &'static str,
        modulus: Vec<u32>,
        factor: Vec<u32>,
    },

    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u64),

    #[error("coefficient {value} out of range for a field of order {order}")]
    CoefficientRange { value: u32, order: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("F_q^{s} is not a subfield of F_q^{m}: {s} does not divide {m}")]
    NotSubfield { s: usize, m: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid code specification: {0}")]
    InvalidCode(String),

    #[error("elements indexed by {indices:?} are linearly dependent over F_q")]
    DependentSubset { indices: Vec<usize> },

    #[error("construction constraint violated at {level}: {reason}")]
    Construction { level: String, reason: String },

    #[error("too large for brute force: {what} needs {required} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    #[error("internal consistency failure in {what}: {detail}")]
    Inconsistency { what: &'static str, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    pub(crate) fn inconsistency(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Inconsistency {
            what,
            detail: detail.into(),
        }
    }
}
