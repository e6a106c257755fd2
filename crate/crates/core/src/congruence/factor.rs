use crate::algebra::{canonical_form, ElemSet, FiniteAlgebra};
use crate::catalog::sort_key;
use crate::morphism::Homomorphism;

use super::{
    congruence_filters, generated_congfilter, product, product_with_coords, quotient, to_congruence,
    to_filter, Congruence, CongruenceError, Product,
};

/// A pair of factor congruences with the witnessing isomorphism
/// `A → A/θ × A/θ′`, `a ↦ (a/θ, a/θ′)`.
#[derive(Debug, Clone)]
pub struct FactorPair {
    pub theta: Congruence,
    pub theta_prime: Congruence,
    pub left: FiniteAlgebra,
    pub right: FiniteAlgebra,
    pub product: Product,
    pub iso: Homomorphism,
}

/// A simple algebra has exactly two congruence filters.
pub fn is_simple(a: &FiniteAlgebra) -> bool {
    congruence_filters(a).len() == 2
}

/// Searches the congruence filters (ascending size, then carrier) for a
/// complement θ′ of θ: θ ∩ θ′ = ε, θ ∨ θ′ = τ, θ ∘ θ′ = θ′ ∘ θ. The first one
/// whose witness map verifies as an isomorphism is returned.
pub fn factor_complement(
    a: &FiniteAlgebra,
    theta: &Congruence,
) -> Result<Option<FactorPair>, CongruenceError> {
    to_filter(a, theta)?;
    let (left, p1) = quotient(a, theta)?;
    for f in congruence_filters(a) {
        let theta_prime = to_congruence(a, &f)?;
        if !theta.intersection(&theta_prime).is_identity()
            || !theta.join(&theta_prime).is_total()
            || !theta.permutes_with(&theta_prime)
        {
            continue;
        }
        let (right, p2) = quotient(a, &theta_prime)?;
        let prod = product_with_coords(&left, &right)?;
        let map: Vec<usize> = a
            .elements()
            .map(|x| prod.index_of(p1.apply(x), p2.apply(x)))
            .collect();
        let Ok(iso) = Homomorphism::new(a, &prod.algebra, map) else {
            continue;
        };
        if !iso.is_bijective() {
            continue;
        }
        return Ok(Some(FactorPair {
            theta: theta.clone(),
            theta_prime,
            left,
            right,
            product: prod,
            iso,
        }));
    }
    Ok(None)
}

/// Splits `a` into simple factors (canonical forms, sorted by size then
/// tables) and checks that their product is isomorphic to `a`. The trivial
/// algebra is the empty product.
pub fn decompose_simples(a: &FiniteAlgebra) -> Result<Vec<FiniteAlgebra>, CongruenceError> {
    let mut factors = Vec::new();
    split(a, &mut factors)?;
    factors.sort_by_cached_key(sort_key);

    let mut acc = super::trivial_algebra(a.class());
    for f in &factors {
        acc = product(&acc, f)?;
    }
    if canonical_form(&acc) != canonical_form(a) {
        return Err(CongruenceError::Internal(format!(
            "product of simple factors of {} is not isomorphic to it",
            a.name()
        )));
    }
    Ok(factors)
}

fn split(a: &FiniteAlgebra, out: &mut Vec<FiniteAlgebra>) -> Result<(), CongruenceError> {
    if a.is_trivial() {
        return Ok(());
    }
    let filters = congruence_filters(a);
    if filters.len() == 2 {
        out.push(canonical_form(a));
        return Ok(());
    }
    // Smallest proper nontrivial congruence filter.
    let f = filters
        .iter()
        .find(|f| f.len() > 1 && f.len() < a.size())
        .expect("non-simple algebra has a proper congruence filter");
    let theta = to_congruence(a, f)?;
    let pair = factor_complement(a, &theta)?.ok_or_else(|| {
        CongruenceError::Internal(format!("congruence {:?} of {} has no complement", theta.blocks(), a.name()))
    })?;
    split(&pair.left, out)?;
    split(&pair.right, out)
}

/// Quotient by the congruence filter generated by the dense elements.
///
/// The result has a Boolean h-reduct; for algebras of at most eight elements
/// it is also checked that every quotient with Boolean h-reduct factors
/// through it.
pub fn boolean_projection(a: &FiniteAlgebra) -> Result<(FiniteAlgebra, Homomorphism), CongruenceError> {
    let dense: ElemSet = a.elements().filter(|&x| a.neg(x) == a.bottom()).collect();
    let f = generated_congfilter(a, dense);
    let theta = to_congruence(a, &f)?;
    let (q, proj) = quotient(a, &theta)?;
    if !q.has_boolean_reduct() {
        return Err(CongruenceError::Internal("Boolean projection is not Boolean".into()));
    }
    if a.size() <= 8 {
        for g in congruence_filters(a) {
            let boolean = quotient(a, &to_congruence(a, &g)?)?.0.has_boolean_reduct();
            if boolean != f.carrier().is_subset(g.carrier()) {
                return Err(CongruenceError::Internal(format!(
                    "quotient by {:?} contradicts the dense-element characterisation",
                    g.to_vec()
                )));
            }
        }
    }
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::super::principal_congruence;
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn b4prod_coordinate_complement() {
        let b4 = fixtures::b4_prod();
        let theta = principal_congruence(&b4, 1, 3).unwrap();
        let pair = factor_complement(&b4, &theta).unwrap().unwrap();
        assert_eq!(pair.theta_prime, principal_congruence(&b4, 2, 3).unwrap());
        assert!(pair.iso.is_bijective());
        assert_eq!(pair.product.algebra, canonical_form(&b4));
    }

    #[test]
    fn identity_has_total_complement() {
        for a in fixtures::all() {
            let pair = factor_complement(&a, &Congruence::identity(a.size())).unwrap().unwrap();
            assert!(pair.theta_prime.is_total(), "{}", a.name());
            assert!(pair.right.is_trivial());
        }
    }

    #[test]
    fn c3_only_complement_of_identity_is_total() {
        let c3 = fixtures::c3_simple();
        assert!(is_simple(&c3));
        let pair = factor_complement(&c3, &Congruence::identity(3)).unwrap().unwrap();
        assert!(pair.theta_prime.is_total());
    }

    #[test]
    fn decompositions() {
        let two = fixtures::two_ws5();
        assert_eq!(decompose_simples(&fixtures::b4_prod()).unwrap(), vec![two.clone(), two.clone()]);
        assert_eq!(
            decompose_simples(&fixtures::b4_disc()).unwrap(),
            vec![canonical_form(&fixtures::b4_disc())]
        );
        let p = product(&two, &fixtures::c3_simple()).unwrap();
        assert_eq!(
            decompose_simples(&p).unwrap(),
            vec![two, canonical_form(&fixtures::c3_simple())]
        );
    }

    #[test]
    fn boolean_projection_examples() {
        let disc = fixtures::b4_disc();
        assert_eq!(boolean_projection(&disc).unwrap().0, canonical_form(&disc));
        assert!(boolean_projection(&fixtures::c3_simple()).unwrap().0.is_trivial());
        let prod = fixtures::b4_prod();
        assert_eq!(boolean_projection(&prod).unwrap().0, canonical_form(&prod));
    }
}
