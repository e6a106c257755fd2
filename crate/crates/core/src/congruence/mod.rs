//! Filters, congruences, quotients, products and factor congruences.
//!
//! Every class handled here is WS5 with compatible operations, so congruences
//! are in bijection with □-closed h-filters: `a ≡ b` iff `a ↔ b` lies in the
//! filter, and the filter is the block of the top.

mod construct;
mod factor;
mod partition;

use serde::Serialize;

use crate::algebra::{AlgebraError, ElemSet, FiniteAlgebra, Operation};
use crate::morphism::HomError;

pub use construct::{product, product_with_coords, quotient, trivial_algebra, Product};
pub use factor::{boolean_projection, decompose_simples, factor_complement, is_simple, FactorPair};
pub use partition::Congruence;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("{0:?} is not an h-filter")]
    NotHFilter(ElemSet),
    #[error("{0:?} is not closed under box")]
    NotBoxClosed(ElemSet),
    #[error("partition is not compatible with `{}` at {witness:?}", op.name())]
    NotCompatible { op: Operation, witness: Vec<usize> },
    #[error("partition covers {got} elements, algebra has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<HomError> for CongruenceError {
    fn from(e: HomError) -> Self {
        CongruenceError::Internal(format!("constructed map is not a homomorphism: {e}"))
    }
}

/// An upward-closed, meet-closed set containing the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HFilter(ElemSet);

/// An h-filter closed under □.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceFilter(ElemSet);

fn is_hfilter(a: &FiniteAlgebra, s: ElemSet) -> bool {
    s.contains(a.top())
        && s.iter().all(|x| {
            a.elements().all(|y| !a.leq(x, y) || s.contains(y))
                && s.iter().all(|y| s.contains(a.meet(x, y)))
        })
}

impl HFilter {
    pub fn new(a: &FiniteAlgebra, carrier: ElemSet) -> Result<Self, CongruenceError> {
        if is_hfilter(a, carrier) {
            Ok(HFilter(carrier))
        } else {
            Err(CongruenceError::NotHFilter(carrier))
        }
    }

    pub fn carrier(&self) -> ElemSet {
        self.0
    }
}

impl CongruenceFilter {
    pub fn new(a: &FiniteAlgebra, carrier: ElemSet) -> Result<Self, CongruenceError> {
        let f = HFilter::new(a, carrier)?;
        if carrier.iter().all(|x| carrier.contains(a.nec(x))) {
            Ok(CongruenceFilter(f.0))
        } else {
            Err(CongruenceError::NotBoxClosed(carrier))
        }
    }

    pub fn carrier(&self) -> ElemSet {
        self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.to_vec()
    }
}

impl Ord for CongruenceFilter {
    /// Ascending size, then lexicographic carrier.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), self.0.to_vec()).cmp(&(other.0.len(), other.0.to_vec()))
    }
}

impl PartialOrd for CongruenceFilter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for CongruenceFilter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.to_vec().serialize(s)
    }
}

/// Least h-filter containing `s`: the up-set of `⋀s` (just `{1}` for empty `s`).
pub fn generated_hfilter(a: &FiniteAlgebra, s: ElemSet) -> HFilter {
    HFilter(a.up_set(a.meet_all(s)))
}

/// Least congruence filter containing `s`, as
/// `{x : □b₀ ∧ … ∧ □b_{k-1} ≤ x, bᵢ ∈ s}`. On a finite algebra the meet over
/// all of `s` is the smallest such bound.
pub fn generated_congfilter(a: &FiniteAlgebra, s: ElemSet) -> CongruenceFilter {
    let bound = s.iter().fold(a.top(), |acc, b| a.meet(acc, a.nec(b)));
    CongruenceFilter(a.up_set(bound))
}

/// Element `b ∈ F` with `F = {x : □b ≤ x}`; `b` is the meet of `F`.
pub fn principal_generator(a: &FiniteAlgebra, f: &CongruenceFilter) -> Result<usize, CongruenceError> {
    let b = a.meet_all(f.0);
    if f.0.contains(b) && a.up_set(a.nec(b)) == f.0 {
        Ok(b)
    } else {
        Err(CongruenceError::Internal(format!(
            "filter {:?} is not generated by its meet {b}",
            f.0
        )))
    }
}

/// All congruence filters, ascending by size then carrier. Each one is the
/// filter generated by its meet, so generating from single elements finds all.
pub fn congruence_filters(a: &FiniteAlgebra) -> Vec<CongruenceFilter> {
    let mut out: Vec<CongruenceFilter> = a
        .elements()
        .map(|x| generated_congfilter(a, ElemSet::singleton(x)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `a ≡ b` iff `(a → b) ∧ (b → a) ∈ F`; checked against every operation.
pub fn to_congruence(a: &FiniteAlgebra, f: &CongruenceFilter) -> Result<Congruence, CongruenceError> {
    let mut labels = vec![usize::MAX; a.size()];
    for x in a.elements() {
        if labels[x] != usize::MAX {
            continue;
        }
        for y in x..a.size() {
            if f.contains(a.iff(x, y)) {
                labels[y] = x;
            }
        }
    }
    let theta = Congruence::from_labels(&labels);
    match theta.incompatibility(a) {
        Some((op, witness)) => Err(CongruenceError::NotCompatible { op, witness }),
        None => Ok(theta),
    }
}

/// The block of the top, provided the partition is a congruence.
pub fn to_filter(a: &FiniteAlgebra, theta: &Congruence) -> Result<CongruenceFilter, CongruenceError> {
    if theta.host_size() != a.size() {
        return Err(CongruenceError::SizeMismatch {
            expected: a.size(),
            got: theta.host_size(),
        });
    }
    if let Some((op, witness)) = theta.incompatibility(a) {
        return Err(CongruenceError::NotCompatible { op, witness });
    }
    let top_block = theta.block_of(a.top());
    let carrier: ElemSet = a.elements().filter(|&x| theta.block_of(x) == top_block).collect();
    let f = CongruenceFilter::new(a, carrier)?;
    if to_congruence(a, &f)? != *theta {
        return Err(CongruenceError::Internal(
            "congruence is not determined by its top block".into(),
        ));
    }
    Ok(f)
}

/// Least congruence identifying `x` and `y`, via the congruence filter of
/// `x ↔ y`; cross-checked against the partition closure.
pub fn principal_congruence(a: &FiniteAlgebra, x: usize, y: usize) -> Result<Congruence, CongruenceError> {
    let f = generated_congfilter(a, ElemSet::singleton(a.iff(x, y)));
    let theta = to_congruence(a, &f)?;
    let closure = Congruence::generated_by(a, &[(x, y)]);
    if theta != closure {
        return Err(CongruenceError::Internal(format!(
            "principal congruence of ({x},{y}) differs from partition closure"
        )));
    }
    Ok(theta)
}
