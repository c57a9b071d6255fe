use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis vector {index} of the smaller space is not contained in the larger one")]
    NotASubspace { index: usize },
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("matrix has non-integer entry at ({row}, {col})")]
    NotIntegral { row: usize, col: usize },
}
