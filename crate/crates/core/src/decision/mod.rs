//! Decision procedures: mh-fullness, projectivity of finitely presented and
//! finite algebras, primitivity via ρ, and the first-order sentence α.

mod formula;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{heyting_from_order, with_class, AlgebraError, FiniteAlgebra, VarietyClass};
use crate::morphism::{homs, HomError, HomMode, Homomorphism};
use crate::term::{check_quasiidentity, rho, satisfy_atoms, DefiningPair, EvalError, QuasiResult};

pub use formula::{
    diagram_alpha, diagram_formula, discriminator_term, eval_alpha, eval_formula, FirstOrderFormula,
    FormulaError, Matrix, Quantifier,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecisionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("{0} is trivial")]
    Trivial(String),
    #[error("algebras of different classes: {0} and {1}")]
    ClassMismatch(VarietyClass, VarietyClass),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

/// The two-element algebra of a class: □ = identity, ∼ = ⌐ = ¬,
/// `a ⨪ b = a ∧ ¬b`.
pub fn two_algebra(class: VarietyClass) -> FiniteAlgebra {
    let leq = vec![vec![true, true], vec![false, true]];
    let t = heyting_from_order("Two", &leq).expect("2-chain is a lattice");
    FiniteAlgebra::new(with_class(t, class, Some(vec![0, 1]), Some(vec![1, 0])))
        .expect("two-element algebra is valid")
}

fn require_box(a: &FiniteAlgebra) -> Result<(), DecisionError> {
    if a.class().has_box() {
        Ok(())
    } else {
        Err(AlgebraError::NoBox(a.class()).into())
    }
}

fn require_nontrivial(a: &FiniteAlgebra) -> Result<(), DecisionError> {
    if a.is_trivial() {
        Err(DecisionError::Trivial(a.name().to_string()))
    } else {
        Ok(())
    }
}

/// Least `a` with `□a = □¬a`. Any such element has `□a = □¬a = 0`, which is
/// re-checked.
pub fn element_criterion(a: &FiniteAlgebra) -> Result<Option<usize>, DecisionError> {
    require_box(a)?;
    require_nontrivial(a)?;
    let witness = a.elements().find(|&x| a.nec(x) == a.nec(a.neg(x)));
    if let Some(x) = witness {
        if a.nec(x) != a.bottom() {
            return Err(DecisionError::TheoremViolation(format!(
                "□{x} = □¬{x} but is not 0 in {}",
                a.name()
            )));
        }
    }
    Ok(witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MhVerdict {
    pub mh_full: bool,
    /// Onto homomorphism to the two-element algebra.
    pub witness: Option<Homomorphism>,
}

/// Whether `a` maps onto every minimal algebra of its class; the two-element
/// algebra is the only one.
pub fn mh_full(a: &FiniteAlgebra) -> Result<MhVerdict, DecisionError> {
    require_nontrivial(a)?;
    let two = two_algebra(a.class());
    let witness = homs(a, &two, HomMode::AnyOnto, None)?.homs.into_iter().next();
    Ok(MhVerdict {
        mh_full: witness.is_some(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationVerdict {
    pub projective: bool,
    /// Assignment into the two-element algebra satisfying every relation; it
    /// defines an onto homomorphism from the presented algebra to 2.
    pub certificate: Option<BTreeMap<String, usize>>,
    pub note: &'static str,
}

/// Projectivity of the algebra presented by `d`: the relations must be
/// satisfiable in the two-element algebra.
pub fn decide_projective_fp(class: VarietyClass, d: &DefiningPair) -> Result<PresentationVerdict, DecisionError> {
    let certificate = satisfy_atoms(&two_algebra(class), d)?;
    let note = if certificate.is_some() {
        "the presented algebra maps onto 2, so it is nontrivial and projective"
    } else {
        "the relations are unsatisfiable in 2: the presented algebra is not projective or is trivial"
    };
    Ok(PresentationVerdict {
        projective: certificate.is_some(),
        certificate,
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Criteria {
    pub hom_onto_two: bool,
    /// No element with `□a = □¬a`.
    pub element_criterion: bool,
    pub rho: bool,
    pub alpha: bool,
}

impl Criteria {
    pub fn agree(&self) -> bool {
        self.hom_onto_two == self.element_criterion && self.element_criterion == self.rho && self.rho == self.alpha
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectivityVerdict {
    pub projective: bool,
    pub criteria: Criteria,
    pub hom: Option<Homomorphism>,
    pub element: Option<usize>,
    pub rho_witness: Option<BTreeMap<String, usize>>,
    pub note: &'static str,
}

/// Evaluates the four equivalent criteria and fails loudly if they differ.
pub fn decide_projective_finite(a: &FiniteAlgebra) -> Result<ProjectivityVerdict, DecisionError> {
    require_box(a)?;
    let mh = mh_full(a)?;
    let element = element_criterion(a)?;
    let rho_witness = match check_quasiidentity(a, &rho())? {
        QuasiResult::Holds => None,
        QuasiResult::Fails { witness } => Some(witness),
    };
    let alpha = eval_alpha(a, &diagram_alpha(&two_algebra(a.class())))?;
    let criteria = Criteria {
        hom_onto_two: mh.mh_full,
        element_criterion: element.is_none(),
        rho: rho_witness.is_none(),
        alpha,
    };
    if !criteria.agree() {
        return Err(DecisionError::TheoremViolation(format!(
            "projectivity criteria disagree on {}: {criteria:?}",
            a.name()
        )));
    }
    Ok(ProjectivityVerdict {
        projective: criteria.hom_onto_two,
        criteria,
        hom: mh.witness,
        element,
        rho_witness,
        note: "per the mh-fullness criterion",
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoRecord {
    pub algebra: String,
    pub rho_holds: bool,
    pub witness: Option<BTreeMap<String, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveReport {
    pub algebras: Vec<RhoRecord>,
    /// The quasivariety generated by the algebras is primitive.
    pub primitive: bool,
}

/// ρ in each algebra; the generated quasivariety is primitive iff ρ holds in all.
pub fn primitive_report(algebras: &[FiniteAlgebra]) -> Result<PrimitiveReport, DecisionError> {
    if let Some(first) = algebras.first() {
        if let Some(other) = algebras.iter().find(|b| !b.class().same_kind(&first.class())) {
            return Err(DecisionError::ClassMismatch(first.class(), other.class()));
        }
    }
    let mut records = Vec::new();
    for a in algebras {
        require_box(a)?;
        let result = check_quasiidentity(a, &rho())?;
        records.push(RhoRecord {
            algebra: a.name().to_string(),
            rho_holds: result.holds(),
            witness: match result {
                QuasiResult::Holds => None,
                QuasiResult::Fails { witness } => Some(witness),
            },
        });
    }
    Ok(PrimitiveReport {
        primitive: records.iter().all(|r| r.rho_holds),
        algebras: records,
    })
}
