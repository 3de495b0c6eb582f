use thiserror::Error;

use crate::point::Shape;

/// Errors reported by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: Shape, actual: Shape },

    #[error("data length {len} does not match shape {shape}")]
    LengthMismatch { shape: Shape, len: usize },

    #[error("point contains a non-finite entry")]
    NonFinite,

    #[error("a product point needs at least two blocks, got {0}")]
    TooFewBlocks(usize),

    #[error("cannot apply {sets} sets to {blocks} blocks")]
    BlockCountMismatch { sets: usize, blocks: usize },

    #[error("a cyclic composition needs at least two sets, got {0}")]
    TooFewSets(usize),

    #[error("empty index selection")]
    EmptySelection,

    #[error("invalid index selection: {0}")]
    InvalidSelection(String),

    #[error("slice of length {len} cannot be matched to a multiset of size {expected}")]
    SliceLength { expected: usize, len: usize },

    #[error("invalid multiset: {0}")]
    InvalidMultiset(String),

    #[error("invalid stop rule: {0}")]
    InvalidStopRule(String),

    #[error("no magic square of order 2 exists")]
    InfeasibleOrder,

    #[error("invalid prefill: {0}")]
    InvalidPrefill(String),

    #[error("invalid puzzle: {0}")]
    InvalidPuzzle(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid is incomplete")]
    IncompleteGrid,

    #[error("cannot parse grid: {0}")]
    GridParse(String),

    #[error("no records to summarize")]
    EmptyRecords,
}
