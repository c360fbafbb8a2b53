use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("no built-in modulus for q = {0}; supply one")]
    NoDefaultModulus(u64),
    #[error("element {0} out of range for F_{1}")]
    ElementOutOfRange(u64, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires odd characteristic")]
    CharacteristicTwo,
    #[error("fields differ")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("code is not M-LCD for this structure matrix (singular Gram matrix)")]
    NotMLcd,
    #[error("degenerate structure matrix: {0}")]
    DegenerateForm(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
