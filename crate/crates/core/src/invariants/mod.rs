//! Polynomials in the weight coordinates, the invariants cut out by
//! ∧^m GL_n, and membership tests for their stabilizers.

mod poly;
mod stab;
mod systems;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::linalg::LinalgError;
use crate::rings::RingError;

pub use poly::{substitute_linear, WeightPoly};
pub use stab::{
    canonical_targets, congruence_membership, span_membership, stabilizer_check, StabTarget,
    StabilizerReport,
};
pub use systems::{build_form, build_partition_ideal, build_pluecker, Provenance, QuadricSystem};

#[derive(Debug, Error)]
pub enum InvariantsError {
    #[error("m = {1} does not divide n = {0}")]
    NotDivisible(usize, usize),
    #[error("m = {1} divides n = {0}; use the form")]
    Divisible(usize, usize),
    #[error("Plücker relations need m < n, got n = {0}, m = {1}")]
    BadPower(usize, usize),
    #[error("size mismatch: got {0}, expected {1}")]
    SizeMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("the single form f_{{{0},{1}}} only certifies similitude membership; use the Plücker system")]
    FormRefused(usize, usize),
    #[error("quotient by {0} is not representable")]
    QuotientNotRepresentable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
