use thiserror::Error;

/// Errors produced by construction and verification routines.
///
/// Failures that the callers are expected to treat as *data* (a standard-pair
/// search that finds nothing, an orientation search that exhausts) are not
/// errors; they are encoded in the return values of the operations concerned.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field GF({p}^{m}): not in the built-in modulus table")]
    UnsupportedField { p: u64, m: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("root element requires i != j")]
    RootIndicesEqual,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field too small: |k| = {q} but at least 4 elements are required")]
    FieldTooSmall { q: u64 },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("diagram parse error at line {line}: {msg}")]
    DiagramParse { line: usize, msg: String },

    #[error("diagram is not admissible: {0}")]
    NotAdmissible(String),

    #[error("pointing parse error at line {line}: {msg}")]
    PointingParse { line: usize, msg: String },

    #[error("unknown vertex label '{0}'")]
    UnknownVertex(String),

    #[error("vertices {0} and {1} are not connected")]
    Disconnected(String, String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("presentation parse error at line {line}: {msg}")]
    PresentationParse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
