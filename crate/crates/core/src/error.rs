use thiserror::Error;

use crate::qmatroid::AxiomFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field too large: {0}")]
    FieldTooLarge(String),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus is reducible over GF({q}): divisible by {factor}")]
    ReducibleModulus { q: u32, factor: String },

    #[error("ambient mismatch: expected (q={expected_q}, n={expected_n}), got (q={q}, n={n})")]
    AmbientMismatch {
        expected_q: u8,
        expected_n: usize,
        q: u8,
        n: usize,
    },

    #[error("ambient dimension {n} is not supported over GF({q})")]
    AmbientTooLarge { q: u8, n: usize },

    #[error("basis is not in reduced row echelon form; canonical basis is {suggestion:?}")]
    NotCanonical { suggestion: Vec<Vec<u8>> },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("{lower} is not contained in {upper}")]
    NotNested { lower: String, upper: String },

    #[error("enumeration budget exceeded: {needed} subspaces needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("{0}")]
    Axiom(AxiomFailure),

    #[error("{count} cyclic flats exceed the limit of {limit}")]
    TooManyCyclicFlats { count: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not of full row rank: rank {rank} < {rows}")]
    NotFullRank { rank: usize, rows: usize },

    #[error("invalid q-system: {0}")]
    InvalidSystem(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

impl From<AxiomFailure> for Error {
    fn from(f: AxiomFailure) -> Self {
        Error::Axiom(f)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
