use std::io;

use thiserror::Error;

use crate::relation::MAX_CARD;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe cardinality {0} outside 1..={MAX_CARD}")]
    Cardinality(usize),
    #[error("element index {index} out of range for a universe of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {0} appears more than once in the restriction subset")]
    DuplicateIndex(usize),
    #[error("restriction subset is empty")]
    EmptySubset,
    #[error("malformed relation text: {0}")]
    RelationText(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("property {0} is both required and forbidden")]
    ConflictingLiteral(&'static str),
    #[error("malformed census: {0}")]
    Census(String),
    #[error("property vector {0:#x} does not fit the mining width")]
    VectorWidth(u32),
    #[error("mining level {0} outside 1..=24")]
    Level(usize),
    #[error("malformed law: {0}")]
    LawText(String),
    #[error("exhaustive search supports at most {max} elements, got {got}")]
    ExhaustiveLimit { got: usize, max: usize },
    #[error("{got} labels given for a universe of {n} elements")]
    LabelCount { got: usize, n: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
