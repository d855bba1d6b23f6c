use thiserror::Error;

/// Errors raised by the analysis modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(usize),
    #[error("letter {letter} is out of range for alphabet size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
    #[error("cycle of an eventually periodic word must be nonempty")]
    EmptyCycle,
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not a contraction (norm {norm})")]
    NotContraction { norm: f64 },
    #[error("vector is not normalized (sum of squared moduli {norm_sq})")]
    Unnormalized { norm_sq: f64 },
    #[error("exponent set is not invariant: {image} (image of {source_exponent} under letter {letter}) is missing")]
    NotInvariant { source_exponent: i64, letter: usize, image: i64 },
    #[error("size mismatch: |B| = {b}, |L| = {l}")]
    SizeMismatch { b: usize, l: usize },
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("{lambda} is not encodable: no digit matches at step {step}")]
    NotEncodable { lambda: i64, step: usize },
    #[error("extreme cycle contains the non-integer point {0}")]
    NonIntegerCycle(String),
    #[error("matrix is not unitary (max deviation {deviation})")]
    NotUnitary { deviation: f64 },
    #[error("first row is not constant 1/sqrt(N)")]
    FirstRowNotConstant,
    #[error("value is not representable in the exact field: {0}")]
    NotRepresentable(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
