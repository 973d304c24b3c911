use thiserror::Error;

/// Errors produced by the library.
///
/// `Hypothesis` signals that an input does not satisfy the preconditions of
/// an algorithm (the caller's fault); `Invariant` signals that a property
/// guaranteed by the mathematics failed to hold at runtime, which points at
/// a bug or at an input that slipped past validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("field of order {p}^{k} is too large")]
    FieldTooLarge { p: u64, k: usize },
    #[error("no embedding of GF({p}^{from}) into GF({p}^{to})")]
    NoEmbedding { p: u64, from: usize, to: usize },
    #[error("the prime field F_{0} has no element outside F_{0}")]
    PrimeFieldOnly(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("not diagonalizable over GF({p}^{k})")]
    NotDiagonalizable { p: u64, k: usize },
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("degree collision: {0}")]
    DegreeCollision(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invariant broken: {0}")]
    Invariant(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("algebra hash mismatch: derivation was made for {expected}, algebra hashes to {found}")]
    HashMismatch { expected: String, found: String },
}

pub type Result<T> = std::result::Result<T, Error>;
