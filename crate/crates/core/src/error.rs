use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("world space needs at least one atom")]
    EmptySpace,
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("atom labels must be non-empty")]
    EmptyLabel,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom index {index} out of range for a space of {len} atoms")]
    AtomOutOfRange { index: usize, len: usize },
    #[error("operands belong to different world spaces")]
    SpaceMismatch,
    #[error("`{op}` expects {expected} argument(s), got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound name `{name}` at position {position}")]
    UnboundName { name: String, position: usize },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("weights must sum to exactly 1, got {0}")]
    WeightSum(String),
    #[error("credal set needs at least one generator")]
    EmptyCredalSet,
    #[error("invalid probability interval [{lower}, {upper}]")]
    InvalidInterval { lower: String, upper: String },
    #[error("betting quotient {0} outside [0, 1]")]
    QuotientRange(String),
    #[error("no betting quotients given")]
    NoQuotients,
    #[error("conditioning event has probability zero")]
    ZeroProbabilityEvidence,
    #[error("evidence has zero probability on all members")]
    ZeroOnAllMembers,
    #[error("Jeffrey update undefined: {0}")]
    JeffreyUndefined(String),
    #[error("Jeffrey update undefined on every member")]
    JeffreyUndefinedOnAll,
    #[error("new probability {0} outside [0, 1]")]
    NewProbabilityRange(String),

    #[error("sample needs at least 2 values, got {0}")]
    SampleTooSmall(usize),
    #[error("sample values must be finite")]
    NonFiniteSample,
    #[error("degenerate sample: standard deviation is zero")]
    DegenerateSample,
    #[error("invalid binomial data: n={n}, k={k}")]
    InvalidBinomial { n: u64, k: u64 },
    #[error("level {0} must lie strictly between 0 and 1")]
    InvalidLevel(f64),
    #[error("gullibility {0} must lie strictly between 0 and 1")]
    InvalidGullibility(f64),
    #[error("sample size must be positive")]
    ZeroSampleSize,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("acceptance level {0} must lie in [1/2, 1)")]
    InvalidAcceptanceLevel(String),
    #[error("odds {0} must be at least 1")]
    InvalidStakes(String),
    #[error("offered odds {0} must be positive")]
    InvalidOdds(String),
    #[error("space of {0} atoms is too large to enumerate (limit {1})")]
    TooLargeToEnumerate(usize, usize),
    #[error("lottery needs at least 2 tickets, got {0}")]
    InvalidLottery(usize),
}
