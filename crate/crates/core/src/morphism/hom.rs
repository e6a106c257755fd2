use serde::Serialize;

use crate::algebra::{FiniteAlgebra, Operation};

/// Why a map fails to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("map has {got} entries but the domain has {expected} elements")]
    Length { expected: usize, got: usize },
    #[error("image {0} is outside the codomain")]
    OutOfRange(usize),
    #[error("classes differ: {0} vs {1}")]
    ClassMismatch(String, String),
    #[error("constant {0} not preserved")]
    Constant(&'static str),
    #[error("operation `{}` not preserved at {args:?}", op.name())]
    NotPreserved { op: Operation, args: Vec<usize> },
}

/// A verified homomorphism between finite algebras, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    map: Vec<usize>,
    #[serde(skip)]
    cod_size: usize,
    onto: bool,
    injective: bool,
}

impl Homomorphism {
    /// Verifies every operation table and builds the homomorphism.
    pub fn new(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: Vec<usize>) -> Result<Self, HomError> {
        check(dom, cod, &map)?;
        Ok(Self::trusted(cod.size(), map))
    }

    /// For maps produced by a search that already checked every table entry.
    pub(crate) fn trusted(cod_size: usize, map: Vec<usize>) -> Self {
        let mut seen = vec![false; cod_size];
        let mut injective = true;
        for &b in &map {
            if std::mem::replace(&mut seen[b], true) {
                injective = false;
            }
        }
        Homomorphism {
            onto: seen.iter().all(|&s| s),
            injective,
            cod_size,
            map,
        }
    }

    pub fn identity(a: &FiniteAlgebra) -> Self {
        Self::trusted(a.size(), a.elements().collect())
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_onto(&self) -> bool {
        self.onto
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_bijective(&self) -> bool {
        self.onto && self.injective
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    /// `then ∘ self`
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        Self::trusted(then.cod_size, self.map.iter().map(|&a| then.map[a]).collect())
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(Self::trusted(self.map.len(), inv))
    }
}

/// Full table-preservation check of `map: dom → cod`.
pub fn check(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize]) -> Result<(), HomError> {
    if !dom.class().same_kind(&cod.class()) {
        return Err(HomError::ClassMismatch(dom.class().to_string(), cod.class().to_string()));
    }
    if map.len() != dom.size() {
        return Err(HomError::Length {
            expected: dom.size(),
            got: map.len(),
        });
    }
    if let Some(&b) = map.iter().find(|&&b| b >= cod.size()) {
        return Err(HomError::OutOfRange(b));
    }
    if map[dom.bottom()] != cod.bottom() {
        return Err(HomError::Constant("0"));
    }
    if map[dom.top()] != cod.top() {
        return Err(HomError::Constant("1"));
    }
    for op in dom.operations() {
        if op.arity() == 1 {
            for a in dom.elements() {
                if map[dom.apply(op, a, 0)] != cod.apply(op, map[a], 0) {
                    return Err(HomError::NotPreserved { op, args: vec![a] });
                }
            }
        } else {
            for a in dom.elements() {
                for b in dom.elements() {
                    if map[dom.apply(op, a, b)] != cod.apply(op, map[a], map[b]) {
                        return Err(HomError::NotPreserved { op, args: vec![a, b] });
                    }
                }
            }
        }
    }
    Ok(())
}
