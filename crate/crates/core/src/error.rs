use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OreError {
    #[error("malformed spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("carrier of {size} elements exceeds the exhaustive-validation cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("ring axiom `{axiom}` fails at {witness}")]
    RingAxiom { axiom: &'static str, witness: String },
    #[error("map is not total: expected {expected} entries, got {got}")]
    MapNotTotal { expected: usize, got: usize },
    #[error("terms live over different variable universes ({left} vs {right} variables)")]
    MismatchedUniverse { left: usize, right: usize },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("variable x{var} is out of range for this operation (limit {limit})")]
    VariableOutOfRange { var: usize, limit: usize },
    #[error("degree {degree} exceeds the configured budget {budget}")]
    DegreeBudget { degree: u64, budget: u64 },
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("operation requires a finite coefficient ring")]
    InfiniteRing,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound {requested} exceeds the available strata (built to {available})")]
    StrataExceeded { requested: u64, available: u64 },
    #[error("incomplete data: {0}")]
    IncompleteData(String),
}

pub type Result<T, E = OreError> = std::result::Result<T, E>;
