use crate::algebra::{canonical_form, AlgebraTables, ElemSet, FiniteAlgebra};

use super::{Homomorphism, MorphismError};

/// Least subuniverse containing `s`, the constants, and closed under every
/// operation of the class.
pub fn subalgebra_closure(a: &FiniteAlgebra, s: ElemSet) -> ElemSet {
    let mut set = s;
    set.insert(a.bottom());
    set.insert(a.top());
    let ops = a.operations();
    loop {
        let mut next = set;
        for &op in &ops {
            for x in set.iter() {
                if op.arity() == 1 {
                    next.insert(a.apply(op, x, 0));
                } else {
                    for y in set.iter() {
                        next.insert(a.apply(op, x, y));
                    }
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// The subalgebra on a closed set, keeping the host's index order, with its
/// inclusion map.
pub fn subalgebra(a: &FiniteAlgebra, s: ElemSet) -> Result<(FiniteAlgebra, Homomorphism), MorphismError> {
    if subalgebra_closure(a, s) != s {
        return Err(MorphismError::NotSubuniverse(s.to_vec()));
    }
    let elems = s.to_vec();
    let pos = |x: usize| elems.binary_search(&x).expect("closed set");
    let tables = AlgebraTables::build(format!("Sg({})", a.name()), a.class(), elems.len(), |op, x, y| {
        pos(a.apply(op, elems[x], elems[y]))
    });
    let sub = FiniteAlgebra::new(tables)?;
    let incl = Homomorphism::new(&sub, a, elems)?;
    Ok((sub, incl))
}

/// Minimal subalgebras: the subalgebra generated by the constants, after
/// checking that no subalgebra generated by a single element is smaller and
/// that it has no proper nontrivial subalgebra.
pub fn minimal_subalgebras(a: &FiniteAlgebra) -> Result<Vec<FiniteAlgebra>, MorphismError> {
    if a.is_trivial() {
        return Ok(Vec::new());
    }
    let base = subalgebra_closure(a, ElemSet::empty());
    for x in a.elements() {
        let gen = subalgebra_closure(a, ElemSet::singleton(x));
        if gen.len() < base.len() || !base.is_subset(gen) {
            return Err(MorphismError::TheoremViolation(format!(
                "Sg({x}) is smaller than the constant subalgebra"
            )));
        }
    }
    let (sub, _) = subalgebra(a, base)?;
    for x in sub.elements() {
        if subalgebra_closure(&sub, ElemSet::singleton(x)).len() != sub.size() {
            return Err(MorphismError::TheoremViolation(
                "constant subalgebra has a proper subalgebra".into(),
            ));
        }
    }
    let two = crate::decision::two_algebra(a.class());
    if canonical_form(&sub) != two {
        return Err(MorphismError::TheoremViolation(format!(
            "minimal subalgebra of {} is not the two-element algebra",
            a.name()
        )));
    }
    Ok(vec![sub])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn closures() {
        let b4 = fixtures::b4_prod();
        assert_eq!(subalgebra_closure(&b4, ElemSet::empty()).to_vec(), vec![0, 3]);
        assert_eq!(subalgebra_closure(&b4, ElemSet::singleton(1)), b4.universe());
        let c3 = fixtures::c3_simple();
        assert_eq!(subalgebra_closure(&c3, ElemSet::singleton(1)), c3.universe());
    }

    #[test]
    fn minimal_is_two() {
        let two = fixtures::two_ws5();
        for a in [fixtures::b4_disc(), fixtures::c3_simple(), fixtures::two_ws5()] {
            assert_eq!(minimal_subalgebras(&a).unwrap(), vec![two.clone()]);
        }
        for a in fixtures::all() {
            assert_eq!(minimal_subalgebras(&a).unwrap()[0].size(), 2);
        }
    }

    #[test]
    fn subalgebra_requires_closed_set() {
        let b4 = fixtures::b4_prod();
        assert!(matches!(
            subalgebra(&b4, [0, 1, 3].into_iter().collect()),
            Err(MorphismError::NotSubuniverse(_))
        ));
        let (sub, incl) = subalgebra(&fixtures::b4_disc(), [0, 3].into_iter().collect()).unwrap();
        assert_eq!(sub.size(), 2);
        assert!(incl.is_injective());
    }
}
