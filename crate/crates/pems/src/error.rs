use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("target column '{0}' not found in header")]
    MissingTarget(String),

    #[error("column '{column}' row {row}: cannot parse '{value}' as a number")]
    NonNumericCell {
        column: String,
        row: usize,
        value: String,
    },

    #[error("no usable rows after dropping non-finite values")]
    NoUsableRows,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("feature schema mismatch: expected {expected:?}, got {got:?}")]
    SchemaMismatch {
        expected: Vec<String>,
        got: Vec<String>,
    },

    #[error("invalid split ratios: {0}")]
    InvalidSplit(String),

    #[error("split '{0}' would be empty")]
    EmptySplit(&'static str),

    #[error("window length {window} exceeds row count {rows}")]
    WindowTooLong { window: usize, rows: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),

    #[error("all samples excluded from MAPE (every |actual| < threshold)")]
    AllExcluded,

    #[error("degenerate normalizer: y_max == y_min")]
    DegenerateNormalizer,

    #[error("training failed: {0}")]
    Train(String),

    #[error("model serialization: {0}")]
    Serialization(String),

    #[error("k = {k} exceeds number of points {n}")]
    KTooLarge { k: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
