use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible in this domain")]
    NotInvertible(String),
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("parts {parts:?} do not sum to {top}")]
    InvalidPartition { top: u64, parts: Vec<u64> },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable x{index} is outside x1..x{nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("polynomial has {terms} terms, above the composition cap of {cap}")]
    TooManyTerms { terms: usize, cap: usize },
    #[error("basis of size {size} exceeds the cap of {cap} monomials; raise the cap, or use the certificate method for obstruction checks")]
    ResourceCap { size: u128, cap: usize },
    #[error("coefficient domain is not a field")]
    NotAField,
    #[error("operation requires a frame without extra generators")]
    UnsupportedFrame,
    #[error("bound {bound} of x{var} exceeds p = {p}")]
    BoundExceedsP { var: usize, bound: u32, p: u64 },
    #[error("invalid assignment for x{var}: {msg}")]
    InvalidAssignment { var: usize, msg: String },
    #[error("element has a nonzero constant term")]
    NotInIdeal,
    #[error("generator {index} has a term of degree < 2")]
    NotInSquareOfMaximalIdeal { index: usize },
    #[error("no divided power structure exists on this frame (generator {index} fails)")]
    NoStructure { index: usize },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("certificate method inapplicable: {0}")]
    CertificateInapplicable(String),
    #[error("direct-system index must be at least 1")]
    DegenerateIndex,
    #[error("invalid lifting context: {0}")]
    InvalidContext(String),
    #[error("instance line {line}: {msg}")]
    Instance { line: usize, msg: String },
    #[error("{0}")]
    Mismatch(String),
}
