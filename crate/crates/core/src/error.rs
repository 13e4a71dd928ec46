use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("matrix is not of finite order")]
    NotFiniteOrder,

    #[error("zero value not allowed: {0}")]
    ZeroValue(&'static str),

    #[error("map is not locally finite")]
    NotLocallyFinite,

    #[error("operation is undefined for the zero endomorphism")]
    ZeroEndo,

    #[error("exponent arithmetic overflowed a machine integer")]
    ExponentOverflow,

    #[error("lattice generators are linearly dependent")]
    DependentGenerators,

    #[error("orbit exceeded the cap of {0} elements")]
    OrbitOverflow(usize),

    #[error("map is not periodic at power {s} on the given support")]
    NotPeriodic { s: u64 },

    #[error("empty point set")]
    EmptyPoints,

    #[error("negative entry where nonnegative data is required: {0}")]
    NegativeEntry(&'static str),

    #[error("variable index {index} out of range 1..={nvars}")]
    VarOutOfRange { index: usize, nvars: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
