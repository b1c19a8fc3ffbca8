use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("p^N does not fit in 63 bits (p = {p}, N = {n})")]
    PrecisionTooLarge { p: u64, n: u32 },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: u32, right: u32 },
    #[error("expected F_p matrix")]
    ExpectedFp,
    #[error("expected Z/p^N matrix")]
    ExpectedPadic,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("vertex {vertex} out of range (algebra has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("idempotent lifting did not converge within {0} iterations")]
    LiftingDiverged(usize),
    #[error("invalid Brauer tree: {0}")]
    InvalidTree(String),
    #[error("construction inconsistency: {0}")]
    Construction(String),
    #[error("not a member of the order: {0}")]
    NotMember(String),
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
