use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements live in different rings: O_{left} and O_{right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("matrix {index} has determinant different from 1")]
    DeterminantNotOne { index: usize },

    #[error("product sigma_0 sigma_1 sigma_inf is not the identity")]
    ProductNotIdentity,

    #[error("reducible triple: {0}")]
    Reducible(String),

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("element does not lie in O_{n}")]
    NotInRing { n: u64 },

    #[error("ell = {ell} does not divide n = {n}")]
    EllDoesNotDivide { ell: u64, n: u64 },

    #[error("no lift: {0}")]
    NoLift(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate fibre: {0}")]
    DegenerateFibre(String),

    #[error("specialized polynomial is not squarefree")]
    NotSquarefree,

    #[error("{p} is a bad prime for this curve")]
    BadPrime { p: u64 },

    #[error("field size {size} exceeds the counting bound {bound}")]
    BoundExceeded { size: u64, bound: u64 },

    #[error("target does not match the lifted triple: {0}")]
    BranchMismatch(String),

    #[error("no good primes in range")]
    NoGoodPrimes,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Usage and configuration problems, as opposed to failed computations.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
