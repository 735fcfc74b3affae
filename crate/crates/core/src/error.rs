use thiserror::Error;

/// Errors raised by the coefficient engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("no local data for prime {0}")]
    MissingPrime(u64),
    #[error("local factor at p = {p} has depth {have}, need {need}")]
    InsufficientDepth { p: u64, need: usize, have: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("division by a series with zero constant term")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("character modulus {character} does not match {expected}")]
    ModulusMismatch { character: u64, expected: u64 },
    #[error("character must be nontrivial")]
    TrivialCharacter,
    #[error("least-squares system is rank deficient")]
    RankDeficient,
    #[error("sequence is not real: imaginary residue {0:e}")]
    NotReal(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
