//! Exterior powers `∧^m: GL_n → GL_N`, `N = C(n, m)`: weight indices, the
//! Binet–Cauchy map, the factorization of `∧^m t_{i,j}(ξ)` and commutators
//! of `t_{I,J}(ξ)` with images of elementary generators.

mod classify;
mod power;
mod weight;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::rings::RingError;

pub use classify::{classify_commutator, commutator_word, CommutatorClass};
pub use power::{
    ext_evaluate, ext_transvection_decomposition, ext_transvection_factors, exterior_power,
    factor_sign, height, pword, tword, weight_sign, ExtLetter, ExtTransvection,
};
pub use weight::{binomial, subsets, ExteriorContext, WeightIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("invalid exterior context n={0}, m={1}: need 1 <= m <= n")]
    InvalidContext(usize, usize),
    #[error("bad weight index: {0}")]
    BadIndex(String),
    #[error("indices {0} and {1} must lie outside L")]
    Overlap(usize, usize),
    #[error("indices must differ, got {0} twice")]
    EqualIndices(usize),
    #[error("t_{{I,J}} needs I != J, got I = J = {0}")]
    DiagonalTransvection(String),
    #[error("expected a {0}x{0} matrix, got {1}x{2}")]
    SizeMismatch(usize, usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
