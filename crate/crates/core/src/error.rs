use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a vertex: {0}")]
    NotAVertex(String),
    #[error("point is outside the fundamental chamber: {0}")]
    OutsideChamber(String),
    #[error("candidate budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("search radius {0} exhausted before reaching the target")]
    SearchExhausted(u32),
    #[error("fold did not terminate within {0} reflections")]
    FoldLimit(u64),
    #[error("function is not concave")]
    NotConcave,
    #[error("upper function does not dominate the lower one at {0}")]
    NotDominating(String),
    #[error("zero levels must agree and be positive, got {0} and {1}")]
    ZeroLevelMismatch(String, String),
    #[error("empty point set")]
    EmptySet,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
}

impl Error {
    /// Resource errors are reported separately from validation errors by the CLI.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::SearchExhausted(_) | Error::FoldLimit(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
