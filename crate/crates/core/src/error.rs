use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is not coprime to level {level}")]
    NotCoprime { k: i64, level: u64 },
    #[error("cyclotomic level {level} exceeds the supported maximum {limit}")]
    LevelTooLarge { level: u64, limit: u64 },
    #[error("zero element has no p-adic unit status")]
    ZeroElement,
    #[error("group ring parameters do not match")]
    ParamsMismatch,
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("element vanishes at character ({u}, {v}) outside the idempotent component")]
    NotInvertible { u: u64, v: u64 },
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("free slot outside its support: {0}")]
    SlotSupport(String),
    #[error("finite field error: {0}")]
    FiniteField(String),
    #[error("inconsistent constructions: {0}")]
    Mismatch(String),
    #[error("element is not fixed by the inertia subgroup")]
    NotFixed,
    #[error("no accepted (convention, alpha) within coefficient bound {bound}: {stats}")]
    SearchFailed { bound: i64, stats: String },
}

pub type Result<T> = std::result::Result<T, Error>;
