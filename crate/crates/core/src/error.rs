use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("level must be positive")]
    ZeroLevel,
    #[error("N = {0} is not of the form q*p^M with p in {{2,3}}, q = 6-p")]
    NotSpecial(u64),
    #[error("valuation of the identity is undefined")]
    IdentityValuation,
    #[error("exponent {exp} is not in mu_{order} inside mu_{n}")]
    NotInSubgroup { exp: u64, order: u64, n: u64 },
    #[error("subgroup index {n} exceeds M = {m}")]
    SubgroupIndex { n: u32, m: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("symbol has an entry outside nu_N: exponent {0}")]
    OutsideNu(u64),
    #[error("word is not in canonical depth shape")]
    NotCanonical,
    #[error("rank for N = {n} not certified after {primes} primes")]
    Uncertified { n: u64, primes: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
