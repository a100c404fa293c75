use thiserror::Error;

/// Failure modes of the evaluators and zero-finding routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole: {re}+{im}i is a non-positive integer")]
    PoleAtNonPositiveInteger { re: f64, im: f64 },
    #[error("pole at s = 1")]
    PoleAtOne,
    #[error("Euler-Maclaurin head length {needed} exceeds max_terms = {max_terms}")]
    TruncationFailure { needed: usize, max_terms: usize },
    #[error("evaluation failed on the derivative circle around {re}+{im}i: {source}")]
    SingularityInDisk {
        re: f64,
        im: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("denominator p^(1-s) - 1 vanishes")]
    DenominatorZero,
    #[error("bracket endpoints have the same sign: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no sign change found on ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("function vanishes (|Q| = {modulus:e}) on the contour near {re}+{im}i")]
    ZeroOnBoundary { re: f64, im: f64, modulus: f64 },
    #[error("winding number {value} is not within 0.1 of an integer")]
    NonIntegerWinding { value: f64 },
    #[error("cell at depth {depth} still encloses {count} zeros")]
    UnresolvedCluster { depth: usize, count: i64 },
    #[error("non-finite value produced at {re}+{im}i")]
    NonFinite { re: f64, im: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input lies outside the mathematical domain (poles, bad ranges).
    Domain,
    /// The numerics could not deliver a trustworthy answer.
    Numerical,
    /// Malformed or inconsistent parameters.
    Argument,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PoleAtNonPositiveInteger { .. }
            | Error::PoleAtOne
            | Error::DenominatorZero
            | Error::NoSignChange { .. }
            | Error::BracketFailure { .. } => ErrorKind::Domain,
            Error::TruncationFailure { .. }
            | Error::SingularityInDisk { .. }
            | Error::ZeroOnBoundary { .. }
            | Error::NonIntegerWinding { .. }
            | Error::UnresolvedCluster { .. }
            | Error::NonFinite { .. } => ErrorKind::Numerical,
            Error::InvalidArgument(_) => ErrorKind::Argument,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
