//! Homomorphisms, subalgebras, isomorphism and retracts.

mod hom;
mod retract;
mod search;
mod subalgebra;

use crate::algebra::AlgebraError;
use crate::congruence::CongruenceError;

pub use hom::{check, HomError, Homomorphism};
pub use retract::{is_retract, RetractWitness};
pub use search::{generating_set, homs, isomorphic, HomMode, HomSearch, HomSearchResult};
pub use subalgebra::{minimal_subalgebras, subalgebra, subalgebra_closure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("{0:?} is not closed under the operations")]
    NotSubuniverse(Vec<usize>),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
