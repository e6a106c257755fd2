use serde::Serialize;

use crate::algebra::{ElemSet, FiniteAlgebra};
use crate::congruence::{congruence_filters, factor_complement, quotient, to_congruence};

use super::search::{isomorphic, HomSearch};
use super::{HomError, Homomorphism, MorphismError};

/// `retraction ∘ injection` is the identity on the retract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractWitness {
    pub retraction: Homomorphism,
    pub injection: Homomorphism,
    pub composite_is_identity: bool,
}

impl RetractWitness {
    fn verified(p: &FiniteAlgebra, b: &FiniteAlgebra, retraction: Vec<usize>, injection: Vec<usize>) -> Result<Self, MorphismError> {
        let retraction = Homomorphism::new(p, b, retraction)?;
        let injection = Homomorphism::new(b, p, injection)?;
        let composite_is_identity = injection.then(&retraction) == Homomorphism::identity(b);
        if !composite_is_identity || !retraction.is_onto() {
            return Err(MorphismError::TheoremViolation(
                "constructed retraction does not split".into(),
            ));
        }
        Ok(RetractWitness {
            retraction,
            injection,
            composite_is_identity,
        })
    }
}

/// Whether `b` is a retract of `p`, with a witness.
///
/// Two independent routes are taken. The direct route searches, for each onto
/// `φ: P → B` in lexicographic order, a section `ψ` with `ψ(x) ∈ φ⁻¹(x)`.
/// The product route looks for a factor pair `P ≅ P/θ × P/θ′` with `P/θ ≅ B`,
/// where `b` is a retract iff some `χ: B → P/θ′` exists and then
/// `ψ(x) = (x, χ(x))`. The routes must agree whenever the second applies.
pub fn is_retract(p: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<RetractWitness>, MorphismError> {
    if !p.class().same_kind(&b.class()) {
        return Err(HomError::ClassMismatch(p.class().to_string(), b.class().to_string()).into());
    }
    if b.size() > p.size() {
        return Ok(None);
    }
    if b.size() == p.size() {
        return match isomorphic(p, b)? {
            Some(iso) => {
                let inv = iso.inverse().expect("isomorphism is bijective");
                RetractWitness::verified(p, b, iso.into_map(), inv.into_map()).map(Some)
            }
            None => Ok(None),
        };
    }
    let direct = section_search(p, b)?;
    if let Some(by_product) = product_route(p, b)? {
        if by_product.is_some() != direct.is_some() {
            return Err(MorphismError::TheoremViolation(format!(
                "retract search on {} and {} disagrees with the product construction",
                p.name(),
                b.name()
            )));
        }
    }
    Ok(direct)
}

fn section_search(p: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<RetractWitness>, MorphismError> {
    let (ontos, _) = HomSearch::new(p, b).onto(true).all()?;
    for phi in ontos {
        let mut fibres = vec![ElemSet::empty(); b.size()];
        for x in p.elements() {
            fibres[phi.apply(x)].insert(x);
        }
        if let Some(psi) = HomSearch::new(b, p).allowed(fibres).first()? {
            return RetractWitness::verified(p, b, phi.into_map(), psi.into_map()).map(Some);
        }
    }
    Ok(None)
}

/// `None` when `p` has no factor pair with a factor isomorphic to `b`;
/// otherwise the witness built from the first such pair, or `Some(None)` if
/// no hom into the complementary factor exists.
fn product_route(
    p: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<Option<Option<RetractWitness>>, MorphismError> {
    for f in congruence_filters(p) {
        let theta = to_congruence(p, &f)?;
        let (left, _) = quotient(p, &theta)?;
        let Some(sigma) = isomorphic(b, &left)? else {
            continue;
        };
        let Some(pair) = factor_complement(p, &theta)? else {
            continue;
        };
        let sigma_inv = sigma.inverse().expect("isomorphism is bijective");
        let Some(chi) = HomSearch::new(&pair.left, &pair.right).first()? else {
            return Ok(Some(None));
        };
        let iso_inv = pair.iso.inverse().expect("factor map is bijective");
        let injection: Vec<usize> = b
            .elements()
            .map(|x| {
                let l = sigma.apply(x);
                iso_inv.apply(pair.product.index_of(l, chi.apply(l)))
            })
            .collect();
        let retraction: Vec<usize> = p
            .elements()
            .map(|x| sigma_inv.apply(pair.product.coords[pair.iso.apply(x)].0))
            .collect();
        return RetractWitness::verified(p, b, retraction, injection).map(|w| Some(Some(w)));
    }
    Ok(None)
}
