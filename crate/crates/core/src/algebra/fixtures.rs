//! Small named algebras used throughout the tests and examples.
//!
//! B4 elements are labelled `0, a = 1, b = 2, 1 = 3`; C3 is `0 < m = 1 < 1 = 2`.

use super::lattice::{heyting_from_order, with_class};
use super::{AlgebraTables, FiniteAlgebra, VarietyClass};

fn chain_leq(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
}

fn b4_leq() -> Vec<Vec<bool>> {
    (0..4)
        .map(|a| (0..4).map(|b| a == b || a == 0 || b == 3).collect())
        .collect()
}

fn build(
    name: &str,
    leq: Vec<Vec<bool>>,
    class: VarietyClass,
    boxes: Option<Vec<usize>>,
    invol: Option<Vec<usize>>,
) -> FiniteAlgebra {
    let t = heyting_from_order(name, &leq).expect("fixture order is a lattice");
    FiniteAlgebra::new(with_class(t, class, boxes, invol)).expect("fixture is valid")
}

/// The two-element WS5 algebra, □ = identity.
pub fn two_ws5() -> FiniteAlgebra {
    build("TwoWS5", chain_leq(2), VarietyClass::Ws5, Some(vec![0, 1]), None)
}

/// 3-chain with □m = 0.
pub fn c3_simple() -> FiniteAlgebra {
    build("C3simple", chain_leq(3), VarietyClass::Ws5, Some(vec![0, 0, 2]), None)
}

/// 3-chain with ∼ swapping 0 and 1 and fixing m.
pub fn c3_hri() -> FiniteAlgebra {
    build("C3-HRI", chain_leq(3), VarietyClass::Hri, None, Some(vec![2, 1, 0]))
}

/// 3-chain with its dual pseudocomplement, level 1.
pub fn c3_hdp() -> FiniteAlgebra {
    build("C3-HDP", chain_leq(3), VarietyClass::Hdp(1), None, None)
}

/// Four-element Boolean lattice, □x = 0 for x ≠ 1.
pub fn b4_disc() -> FiniteAlgebra {
    build("B4disc", b4_leq(), VarietyClass::Ws5, Some(vec![0, 0, 0, 3]), None)
}

/// Four-element Boolean lattice, □ = identity (≅ 2 × 2).
pub fn b4_prod() -> FiniteAlgebra {
    build("B4prod", b4_leq(), VarietyClass::Ws5, Some(vec![0, 1, 2, 3]), None)
}

/// Four-element Boolean lattice with ∼ = Boolean complement.
pub fn b4_hri() -> FiniteAlgebra {
    build("B4-HRI", b4_leq(), VarietyClass::Hri, None, Some(vec![3, 2, 1, 0]))
}

/// The `n`-chain in `class`: simple □ for WS5, order reversal for HRI,
/// forced operations otherwise.
pub fn chain(n: usize, class: VarietyClass) -> FiniteAlgebra {
    let boxes = (0..n).map(|a| if a + 1 == n { a } else { 0 }).collect();
    let invol = (0..n).rev().collect();
    build(&format!("C{n}"), chain_leq(n), class, Some(boxes), Some(invol))
}

/// The 3-chain with □ = identity; fails the WS5 axioms.
pub fn c3_identity_box_tables() -> AlgebraTables {
    let t = heyting_from_order("C3id", &chain_leq(3)).unwrap();
    with_class(t, VarietyClass::Ws5, Some(vec![0, 1, 2]), None)
}

/// Every named fixture.
pub fn all() -> Vec<FiniteAlgebra> {
    vec![
        two_ws5(),
        c3_simple(),
        c3_hri(),
        c3_hdp(),
        b4_disc(),
        b4_prod(),
        b4_hri(),
        chain(4, VarietyClass::Dht(1)),
        chain(4, VarietyClass::Heyting),
    ]
}
