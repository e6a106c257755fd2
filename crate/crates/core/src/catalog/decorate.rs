use std::collections::HashSet;

use crate::algebra::{canonical_form, inferred_level, with_class, ElemSet, FiniteAlgebra, VarietyClass};

use super::sort_key;

/// Subsets containing 0 and 1, closed under ∧ and ∨, in which every element
/// has a complement.
fn boolean_sublattices(l: &FiniteAlgebra) -> Vec<ElemSet> {
    let n = l.size();
    let inner = n.saturating_sub(2);
    let mut out = Vec::new();
    for bits in 0..1u64 << inner {
        let mut s = ElemSet::from_bits(bits << 1);
        s.insert(l.bottom());
        s.insert(l.top());
        let closed = s
            .iter()
            .all(|a| s.iter().all(|b| s.contains(l.meet(a, b)) && s.contains(l.join(a, b))));
        let complemented = s.iter().all(|a| {
            s.iter()
                .any(|b| l.meet(a, b) == l.bottom() && l.join(a, b) == l.top())
        });
        if closed && complemented {
            out.push(s);
        }
    }
    out
}

/// `□a` = greatest element of `open` below `a`.
fn interior(l: &FiniteAlgebra, open: ElemSet) -> Vec<usize> {
    l.elements()
        .map(|a| {
            open.iter()
                .filter(|&o| l.leq(o, a))
                .fold(l.bottom(), |acc, o| l.join(acc, o))
        })
        .collect()
}

/// Order-reversing involutions `∼` of `l` with `∼¬a = ¬¬a`.
fn involutions(l: &FiniteAlgebra) -> Vec<Vec<usize>> {
    fn extend(l: &FiniteAlgebra, f: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = f.iter().position(Option::is_none) else {
            out.push(f.iter().map(|x| x.expect("complete")).collect());
            return;
        };
        for b in l.elements() {
            if f[b].is_some() && f[b] != Some(a) {
                continue;
            }
            if f.contains(&Some(b)) {
                continue;
            }
            f[a] = Some(b);
            f[b] = Some(a);
            let antitone = l.elements().all(|x| {
                l.elements().all(|y| match (f[x], f[y]) {
                    (Some(fx), Some(fy)) => !l.leq(x, y) || l.leq(fy, fx),
                    _ => true,
                })
            });
            if antitone {
                extend(l, f, out);
            }
            f[a] = None;
            f[b] = None;
        }
    }
    let mut out = Vec::new();
    extend(l, &mut vec![None; l.size()], &mut out);
    out.retain(|inv| l.elements().all(|a| inv[l.neg(a)] == l.neg(l.neg(a))));
    out
}

/// All algebras of `class` whose Heyting reduct is `l`, deduplicated up to
/// isomorphism and in canonical form. For HDP(n)/DHt(n) the forced ⌐ or ⨪ is
/// kept when the algebra has level at most `n` and its derived □ is a WS5 box.
pub fn decorate(class: VarietyClass, l: &FiniteAlgebra) -> Vec<FiniteAlgebra> {
    let base = l.tables();
    let candidates: Vec<FiniteAlgebra> = match class {
        VarietyClass::Heyting => vec![l.clone()],
        VarietyClass::Ws5 => boolean_sublattices(l)
            .into_iter()
            .filter_map(|open| FiniteAlgebra::new(with_class(base.clone(), class, Some(interior(l, open)), None)).ok())
            .collect(),
        VarietyClass::Hri => involutions(l)
            .into_iter()
            .filter_map(|inv| FiniteAlgebra::new(with_class(base.clone(), class, None, Some(inv))).ok())
            .collect(),
        VarietyClass::Hdp(n) | VarietyClass::Dht(n) => {
            // Declare the largest level first so the level identity does not
            // reject the algebra, then keep it if its actual level fits.
            let probe = class.with_level(u32::MAX);
            FiniteAlgebra::new(with_class(base.clone(), probe, None, None))
                .ok()
                .filter(|a| inferred_level(a).is_some_and(|k| k <= n))
                .and_then(|_| FiniteAlgebra::new(with_class(base.clone(), class, None, None)).ok())
                .into_iter()
                .collect()
        }
    };
    let mut seen = HashSet::new();
    let mut out: Vec<FiniteAlgebra> = candidates
        .into_iter()
        .map(|a| canonical_form(&a))
        .filter(|a| seen.insert(a.clone()))
        .collect();
    out.sort_by_cached_key(sort_key);
    out
}
