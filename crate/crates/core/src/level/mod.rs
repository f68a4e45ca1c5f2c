//! Levels of overgroups of ∧^m E(n,R) and derivations witnessing the
//! inclusions between the sets `A_{I,J}`.

mod derivation;
mod perfect;
mod witness;
mod zfactor;

use thiserror::Error;

use crate::exterior::{ExtTransvection, ExteriorContext, ExteriorError};
use crate::linalg::LinalgError;
use crate::rings::{ideal_generate, Ideal, Ring, RingError};

pub use derivation::{
    validate_derivation, Derivation, DerivationBuilder, Step, StepKind, ValidationReport,
};
pub use perfect::{perfectness_witness, PerfectTarget, PerfectWitness};
pub use witness::{
    equalize_witness, equalize_witness_with, lower_height_witness, raise_height_witness,
    raise_height_witness_with, RaiseIndices, RaiseOptions, RaiseVariant,
};
pub use zfactor::{
    factorization_word, relative_generator_factorization, FactorPiece, RelativeGenerator,
};

/// The hypothesis `t_{I,J}(ξ) ∈ H`.
pub type LevelGenerator = ExtTransvection;

#[derive(Debug, Error)]
pub enum LevelError {
    #[error("level not single-ideal; net of ideals out of scope (n = {n} < 3m = {})", 3 * m)]
    NetOfIdeals { n: usize, m: usize },
    #[error("2 not invertible")]
    TwoNotInvertible,
    #[error("heights differ: {0} and {1}")]
    HeightMismatch(usize, usize),
    #[error("source height {0} must exceed target height {1}")]
    NotDescending(usize, usize),
    #[error("height {0} outside 0..=m-2 for m = {1}")]
    BadHeight(usize, usize),
    #[error("raising needs n >= {need}, got n = {n}")]
    RaiseNeedsIndices { n: usize, need: usize },
    #[error(
        "fresh indices for raising must be |F| = m-k-1 distinct unused indices plus c outside F"
    )]
    BadRaiseIndices,
    #[error("not enough free indices among 1..={0}")]
    InsufficientIndices(usize),
    #[error("position ({0}) lies on the diagonal")]
    DiagonalPosition(String),
    #[error("{0} is not in the declared ideal")]
    NotInIdeal(String),
    #[error("level computation over {0} is not supported")]
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

/// The level of any overgroup containing the given transvections and
/// ∧^m E(n,R): the ideal generated by their arguments.
pub fn compute_level(
    ctx: &ExteriorContext,
    ring: &Ring,
    gens: &[LevelGenerator],
) -> Result<Ideal, LevelError> {
    if ctx.n() < 3 * ctx.m() {
        return Err(LevelError::NetOfIdeals {
            n: ctx.n(),
            m: ctx.m(),
        });
    }
    if ring.is_polynomial() {
        return Err(LevelError::Unsupported(ring.to_string()));
    }
    let xis = gens
        .iter()
        .map(|g| {
            if g.ctx() != ctx {
                return Err(LevelError::Exterior(ExteriorError::InvalidContext(
                    g.ctx().n(),
                    g.ctx().m(),
                )));
            }
            Ok(ring.coerce(g.arg())?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ideal_generate(ring, &xis)?)
}
