//! Dense matrices over exact rings, determinants and minors, transvections
//! and formal group words.

mod det;
mod matrix;
mod word;

use thiserror::Error;

use crate::rings::RingError;

pub use det::{det, mat_inverse, minor};
pub use matrix::Matrix;
pub use word::{
    chevalley_commutator, hall_witt_check, tw, word_evaluate, word_evaluate_in, ChevalleyResult,
    Letter, LinLetter, MatrixLetter, Transvection, Word,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("not invertible over this ring")]
    NotInvertible,
    #[error("transvection t_{{{0},{0}}} has equal indices")]
    DiagonalTransvection(usize),
    #[error("empty word has no size")]
    EmptyWord,
    #[error("bad matrix JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
