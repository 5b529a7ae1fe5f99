use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: u32, n: u32 },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid code: {0}")]
    InvalidSequence(String),

    #[error("invalid node set: {0}")]
    InvalidNodeSet(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("path endpoints coincide: u = v = {0}")]
    DegeneratePath(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: {actual} exceeds the supported cap {limit}")]
    CapExceeded {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    #[error("rectangle covers a 0-entry at row {row}, column {col}")]
    RectangleOnZero { row: usize, col: usize },

    #[error("1-entry at row {row}, column {col} is not covered")]
    Uncovered { row: usize, col: usize },

    #[error("bad matrix data: {0}")]
    BadMatrixData(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
