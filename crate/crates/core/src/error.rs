use thiserror::Error;

/// Errors raised by model construction, transformations and process queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration too large: {count} elements exceeds the budget of {budget}")]
    EnumerationTooLarge { count: String, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty support: {0}")]
    EmptySupport(String),

    #[error("weight function is defined on 0..={x_max} but {needed} is required")]
    WeightDomain { x_max: usize, needed: usize },

    #[error("unknown weight kind `{0}`")]
    UnknownWeightKind(String),

    #[error("distribution is not exchangeable")]
    NotExchangeable,

    #[error("no particle to drop (r = 0)")]
    NothingToDrop,

    #[error("no remaining cells after erasing the last one (n = 1)")]
    NoRemainingCells,

    #[error("conditioning event S_{n} = {s} has zero probability")]
    ZeroProbabilityCondition { n: usize, s: usize },

    #[error("conditioning event N_{t} = {k} has zero probability")]
    ZeroProbabilityCount { t: usize, k: usize },

    #[error("time {time} is beyond the horizon {horizon}")]
    HorizonExceeded { time: usize, horizon: usize },

    #[error("count {k} is beyond the count cap {cap}")]
    CountCapExceeded { k: usize, cap: usize },

    #[error("arrival times must be nondecreasing")]
    UnorderedTimes,

    #[error("terminal law puts mass on N = {k} but no path with that count has positive weight")]
    SupportMismatch { k: usize },

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
