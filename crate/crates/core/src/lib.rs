//! Finite Heyting algebras with a box operator: validation, congruences,
//! homomorphisms, and decision procedures for projectivity and primitivity
//! in discriminator varieties of WS5 algebras and their relatives.

pub mod algebra;
pub mod catalog;
pub mod congruence;
pub mod decision;
pub mod morphism;
pub mod term;

pub use algebra::{FiniteAlgebra, VarietyClass};
