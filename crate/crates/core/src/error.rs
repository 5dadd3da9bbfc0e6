use thiserror::Error;

/// Errors raised by the clustering, embedding and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },

    #[error("matrix is not symmetric at ({i}, {j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("non-finite value at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("non-finite shift value")]
    NonFiniteShift,

    #[error("empty input")]
    EmptyInput,

    #[error("cluster count {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("linkage values cannot serve as a level function for this dendrogram: {0}")]
    InvalidLevelKind(String),

    #[error("Gram matrix is not positive semidefinite: eigenvalue {min} below tolerance (largest {max})")]
    NotPsd { min: f64, max: f64 },

    #[error("requested {dims} dimensions but only {n} are available")]
    DimsTooLarge { dims: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("input of size {n} exceeds the enumeration limit {max}")]
    TooLarge { n: usize, max: usize },

    #[error("entry ({i}, {j}) = {value} is not +1 or -1")]
    NotSigned { i: usize, j: usize, value: f64 },

    #[error("matrix is not an ultrametric: {0}")]
    NotUltrametric(String),

    #[error("invalid dendrogram: {0}")]
    InvalidDendrogram(String),

    #[error("noise parameter {0} is outside [0, 1]")]
    InvalidEta(f64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
