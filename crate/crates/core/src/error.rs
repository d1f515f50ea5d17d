use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("exponent n must be at least 1")]
    ZeroExponent,
    #[error("p^n = {p}^{n} exceeds the 2^16 cap")]
    OrderTooLarge { p: u32, n: u32 },
    #[error("summand length {len} outside [1, {max}]")]
    BadLength { len: u32, max: u32 },
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("group order p^{exp} exceeds the cap")]
    GroupOrderCap { exp: u32 },
    #[error("coefficient vector has {got} entries, shape has rank {rank}")]
    CoefficientLength { got: usize, rank: usize },
    #[error("(p, n) = (2, 1) is excluded for environments")]
    ExcludedPrimePower,
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),
    #[error("index is undefined for elements of full length {0}")]
    UndefinedIndex(u32),
    #[error("mu = {mu} is neither p^n nor a summand length of the module")]
    InvalidMu { mu: u32 },
    #[error("lambda = {lambda} is invalid for this shape: {reason}")]
    InvalidLambda { lambda: u32, reason: String },
    #[error("k = {k} exceeds rk = {rank}")]
    RankExceeded { k: u32, rank: u32 },
    #[error("operation needs a finite environment")]
    InfiniteEnvironment,
    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
