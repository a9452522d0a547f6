use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("exponent {value} at ({row}, {col}) is outside [0, {max}]")]
    ExponentOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        max: u32,
    },

    #[error("position ({row}, {col}) is outside a {rows}x{cols} matrix")]
    PositionOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("duplicate position ({row}, {col})")]
    DuplicatePosition { row: usize, col: usize },

    #[error("block ({block_row}, {block_col}) is neither a circulant permutation nor zero")]
    NotCirculantPermutation { block_row: usize, block_col: usize },

    #[error("not a Latin square: {0}")]
    InvalidLatinSquare(String),

    #[error("not a mask partition: {0}")]
    InvalidMaskSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
