use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("matrix is not invertible over its ring")]
    NotInvertible,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid modulus {p}^{r}: {reason}")]
    InvalidModulus { p: u64, r: u32, reason: &'static str },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid generator index {index} for rank {rank}")]
    InvalidIndex { index: i64, rank: usize },

    #[error("word length {len} exceeds cap {cap}")]
    WordTooLong { len: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration guard exceeded: {candidates} candidates > limit {limit}")]
    GuardExceeded { candidates: u128, limit: u128 },

    #[error("group is not a finite {p}-group")]
    NotPGroup { p: u64 },

    #[error("requested level {requested} exceeds depth cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },

    #[error("matrix is not in the level-{level} congruence kernel")]
    NotInKernel { level: u32 },

    #[error("empty generator list at level {level}")]
    EmptyGenerators { level: u32 },

    #[error("element does not belong to this backend: {0}")]
    BackendMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, FiltraError>;
