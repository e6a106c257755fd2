use serde::Serialize;

use super::{AlgebraError, ElemSet, FiniteAlgebra};
use crate::congruence::congruence_filters;

/// Element classification of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementProfile {
    /// `□a = a`
    pub open: Vec<usize>,
    /// `¬a = 0`
    pub dense: Vec<usize>,
    /// `¬¬a = a`
    pub regular: Vec<usize>,
    pub boolean_h_reduct: bool,
    /// Exactly two congruence filters.
    pub simple: bool,
}

pub fn element_profile(a: &FiniteAlgebra) -> ElementProfile {
    let collect = |p: &dyn Fn(usize) -> bool| a.elements().filter(|&x| p(x)).collect::<ElemSet>().to_vec();
    ElementProfile {
        open: a.open_elements().to_vec(),
        dense: collect(&|x| a.neg(x) == a.bottom()),
        regular: collect(&|x| a.neg(a.neg(x)) == x),
        boolean_h_reduct: a.has_boolean_reduct(),
        simple: congruence_filters(a).len() == 2,
    }
}

/// `t(x, y, z) = (□(x↔y) ∧ z) ∨ (¬□(x↔y) ∧ x)`
pub fn discriminator_eval(a: &FiniteAlgebra, x: usize, y: usize, z: usize) -> Result<usize, AlgebraError> {
    if !a.class().has_box() {
        return Err(AlgebraError::NoBox(a.class()));
    }
    let test = a.nec(a.iff(x, y));
    Ok(a.join(a.meet(test, z), a.meet(a.neg(test), x)))
}
