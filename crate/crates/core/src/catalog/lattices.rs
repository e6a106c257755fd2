use std::collections::HashSet;

use crate::algebra::{canonical_form, heyting_from_order, FiniteAlgebra};

use super::{sort_key, CatalogError};

/// Largest lattice size `enum_distributive_lattices` accepts.
pub const MAX_LATTICE_SIZE: usize = 12;

/// Posets given by the strict down-set of each element as a bitmask over
/// earlier elements, so index order is a linear extension.
type Poset = Vec<u32>;

fn downsets(p: &Poset) -> Vec<u32> {
    let mut out = vec![0u32];
    for (i, &below) in p.iter().enumerate() {
        // A down-set may contain i once it contains everything below i.
        let with: Vec<u32> = out.iter().filter(|&&d| d & below == below).map(|&d| d | 1 << i).collect();
        out.extend(with);
    }
    out
}

fn is_downset_of(p: &Poset, set: u32) -> bool {
    (0..p.len()).all(|i| set & 1 << i == 0 || set & p[i] == p[i])
}

/// Naturally labelled posets whose down-set lattice has at most `n` elements.
fn posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let mut stack: Vec<Poset> = vec![Vec::new()];
    while let Some(p) = stack.pop() {
        let k = p.len();
        if downsets(&p).len() > n {
            continue;
        }
        out.push(p.clone());
        if k + 1 >= n {
            continue;
        }
        for below in 0..1u32 << k {
            if is_downset_of(&p, below) {
                let mut q = p.clone();
                q.push(below);
                stack.push(q);
            }
        }
    }
    out
}

/// The lattice of down-sets of `p`, as a Heyting algebra with down-sets
/// indexed by size then bitmask.
fn downset_lattice(p: &Poset) -> FiniteAlgebra {
    let mut ds = downsets(p);
    ds.sort_by_key(|d| (d.count_ones(), *d));
    let leq: Vec<Vec<bool>> = ds
        .iter()
        .map(|&a| ds.iter().map(|&b| a & b == a).collect())
        .collect();
    let tables = heyting_from_order("L", &leq).expect("down-sets form a lattice");
    FiniteAlgebra::new(tables).expect("down-set lattices are distributive")
}

/// Every distributive lattice of size `n` up to isomorphism, as Heyting
/// algebras in canonical form, from the posets of their join-irreducibles.
pub fn enum_distributive_lattices(n: usize) -> Result<Vec<FiniteAlgebra>, CatalogError> {
    if n == 0 || n > MAX_LATTICE_SIZE {
        return Err(CatalogError::SizeBound {
            size: n,
            max: MAX_LATTICE_SIZE,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in posets(n) {
        if downsets(&p).len() != n {
            continue;
        }
        let l = canonical_form(&downset_lattice(&p));
        if seen.insert(l.clone()) {
            out.push(l);
        }
    }
    out.sort_by_cached_key(sort_key);
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.with_name(format!("heyting-{n}-{i}")))
        .collect())
}
