use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands live over different rings")]
    RingMismatch,

    #[error("modulus {0} is not a supported prime")]
    BadPrime(u32),

    #[error("presentation is not Artinian: variable x{var} has no pure-power generator")]
    NonArtinian { var: usize },

    #[error("ring has k-dimension {dim}, above the supported cap of {cap}")]
    RingTooLarge { dim: usize, cap: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not a complex: the composite of the differentials into degree {degree} is nonzero")]
    NotAComplex { degree: usize },

    #[error("invalid degree range: {0}")]
    InvalidRange(String),

    #[error("characteristic mismatch: {0}")]
    Characteristic(String),

    #[error("free basis extraction failed in degree {degree}: {msg}")]
    BasisExtraction { degree: usize, msg: String },

    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),

    #[error("out of computable fragment: {0}")]
    OutOfFragment(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("random construction gave up after {attempts} attempts: {msg}")]
    Exhausted { attempts: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
