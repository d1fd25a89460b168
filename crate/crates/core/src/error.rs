use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus (primes up to 31)")]
    UnsupportedModulus(u32),
    #[error("not a multiplicative subgroup of GF({p})^*: {elements:?}")]
    NotASubgroup { p: u8, elements: Vec<u8> },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u8, u8),
    #[error("column labels differ")]
    LabelMismatch,
    #[error("entry {value} out of range for GF({p})")]
    EntryOutOfRange { p: u8, value: i64 },
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error("matrix is singular")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ground set has {size} elements; the exhaustive scan is capped at {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
