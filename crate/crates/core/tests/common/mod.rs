#![allow(dead_code)]

use std::collections::HashSet;

use hdisc::algebra::{linear_extensions, FiniteAlgebra, VarietyClass};
use hdisc::catalog::catalog;

/// The classes with a box operation, at the lowest and a saturating level.
pub fn box_classes() -> Vec<VarietyClass> {
    vec![
        VarietyClass::Ws5,
        VarietyClass::Hri,
        VarietyClass::Hdp(1),
        VarietyClass::Hdp(8),
        VarietyClass::Dht(1),
        VarietyClass::Dht(8),
    ]
}

pub fn all_classes() -> Vec<VarietyClass> {
    let mut out = vec![VarietyClass::Heyting];
    out.extend(box_classes());
    out
}

pub fn algebras(class: VarietyClass, max_size: usize) -> Vec<FiniteAlgebra> {
    catalog(class, max_size).expect("catalog size is in range")
}

/// Copy of `a` with element `x` renamed `perm[x]`; `perm` must keep the
/// index order a linear extension.
pub fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let mut inv = vec![0; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    FiniteAlgebra::from_fn(a.name(), a.class(), a.size(), |op, x, y| perm[a.apply(op, inv[x], inv[y])])
        .expect("relabelling preserves validity")
}

/// Relabellings given by every linear extension, up to `limit`.
pub fn relabellings(a: &FiniteAlgebra, limit: usize) -> Vec<FiniteAlgebra> {
    linear_extensions(a)
        .into_iter()
        .take(limit)
        .map(|ext| {
            // `ext[i]` is the old element placed at position i.
            let mut perm = vec![0; ext.len()];
            for (pos, &old) in ext.iter().enumerate() {
                perm[old] = pos;
            }
            relabel(a, &perm)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Number of order ideals of the poset `below` (`below[i][j]`: j < i), by
/// checking every subset.
fn count_downsets(below: &[Vec<bool>]) -> usize {
    let k = below.len();
    (0..1u32 << k)
        .filter(|&s| {
            (0..k).all(|i| s & 1 << i == 0 || (0..k).all(|j| !below[i][j] || s & 1 << j != 0))
        })
        .count()
}

/// Smallest relation bit string over all relabellings of the points.
fn poset_key(below: &[Vec<bool>], perms: &[Vec<usize>]) -> Vec<bool> {
    perms
        .iter()
        .map(|p| {
            let mut key = vec![false; below.len() * below.len()];
            for i in 0..below.len() {
                for j in 0..below.len() {
                    key[p[i] * below.len() + p[j]] = below[i][j];
                }
            }
            key
        })
        .min()
        .unwrap_or_default()
}

/// Distributive lattices with `n` elements, counted as non-isomorphic
/// posets of join-irreducibles with exactly `n` order ideals. Posets are
/// grown one maximal-so-far point at a time; since adding a point never
/// loses ideals, branches past `n` ideals are cut.
pub fn oracle_lattice_count(n: usize) -> usize {
    let mut keys: HashSet<Vec<bool>> = HashSet::new();
    let mut stack: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
    let mut perm_cache: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(p) = stack.pop() {
        let ideals = count_downsets(&p);
        if ideals > n {
            continue;
        }
        let k = p.len();
        if ideals == n {
            while perm_cache.len() <= k {
                perm_cache.push(permutations(perm_cache.len()));
            }
            keys.insert(poset_key(&p, &perm_cache[k]));
        }
        for mask in 0..1u32 << k {
            let new_below: Vec<bool> = (0..k).map(|j| mask & 1 << j != 0).collect();
            // Transitively closed: everything below a chosen point is chosen.
            let closed = (0..k).all(|j| !new_below[j] || (0..k).all(|i| !p[j][i] || new_below[i]));
            if !closed {
                continue;
            }
            let mut q: Vec<Vec<bool>> = p.iter().map(|row| {
                let mut r = row.clone();
                r.push(false);
                r
            }).collect();
            let mut last = new_below;
            last.push(false);
            q.push(last);
            stack.push(q);
        }
    }
    keys.len()
}

/// Lattice automorphisms of `l`, by brute force over all permutations.
pub fn automorphisms(l: &FiniteAlgebra) -> Vec<Vec<usize>> {
    permutations(l.size())
        .into_iter()
        .filter(|p| {
            l.elements()
                .all(|a| l.elements().all(|b| p[l.meet(a, b)] == l.meet(p[a], p[b])))
        })
        .collect()
}

/// Every map `{0..n-1} → {0..n-1}` satisfying `keep`, in lexicographic order.
pub fn unary_maps(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        if keep(&f) {
            out.push(f.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Number of orbits of the unary tables under conjugation by the automorphisms.
pub fn orbit_count(maps: &[Vec<usize>], autos: &[Vec<usize>]) -> usize {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut orbits = 0;
    for f in maps {
        if seen.contains(f) {
            continue;
        }
        orbits += 1;
        for s in autos {
            let mut g = vec![0; f.len()];
            for x in 0..f.len() {
                g[s[x]] = s[f[x]];
            }
            seen.insert(g);
        }
    }
    orbits
}

/// WS5 box axioms on the Heyting reduct of `l`, checked directly.
pub fn is_ws5_box(l: &FiniteAlgebra, b: &[usize]) -> bool {
    let top = l.top();
    let interior = b[top] == top
        && l.elements().all(|a| {
            l.leq(b[a], a)
                && b[b[a]] == b[a]
                && l.elements().all(|c| b[l.meet(a, c)] == l.meet(b[a], b[c]))
        });
    let open: Vec<usize> = l.elements().filter(|&a| b[a] == a).collect();
    let open_boolean = open.iter().all(|&a| {
        open.iter().all(|&c| open.contains(&l.join(a, c)))
            && open.iter().any(|&c| l.meet(a, c) == l.bottom() && l.join(a, c) == top)
    });
    interior && open_boolean
}

/// Regular involution axioms on the Heyting reduct of `l`.
pub fn is_regular_involution(l: &FiniteAlgebra, inv: &[usize]) -> bool {
    l.elements().all(|a| {
        inv[inv[a]] == a
            && inv[l.neg(a)] == l.neg(l.neg(a))
            && l.elements().all(|b| inv[l.join(a, b)] == l.meet(inv[a], inv[b]))
    })
}

/// Least `b` with `a ∨ b = 1`.
pub fn dual_pseudocomplement(l: &FiniteAlgebra, a: usize) -> usize {
    let candidates: Vec<usize> = l.elements().filter(|&b| l.join(a, b) == l.top()).collect();
    *candidates
        .iter()
        .find(|&&b| candidates.iter().all(|&c| l.leq(b, c)))
        .expect("finite distributive lattices have dual pseudocomplements")
}

/// Level and derived box of the dual pseudocomplemented reduct of `l`, when
/// the derived box is a WS5 box.
pub fn oracle_dualneg_level(l: &FiniteAlgebra) -> Option<u32> {
    let boxdot: Vec<usize> = l.elements().map(|a| l.neg(dual_pseudocomplement(l, a))).collect();
    let mut powers = vec![l.elements().collect::<Vec<_>>()];
    loop {
        let last = powers.last().expect("nonempty");
        let next: Vec<usize> = last.iter().map(|&x| boxdot[x]).collect();
        if &next == last {
            break;
        }
        powers.push(next);
    }
    let level = (powers.len() - 1).max(1) as u32;
    let b: Vec<usize> = l
        .elements()
        .map(|a| powers.iter().fold(l.top(), |acc, p| l.meet(acc, p[a])))
        .collect();
    is_ws5_box(l, &b).then_some(level)
}
