use super::FiniteAlgebra;

/// All linear extensions of the lattice order, as sequences of old element
/// indices, in lexicographic order. The first entry is always 0 and the last
/// the top.
pub fn linear_extensions(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let below: Vec<u64> = (0..n)
        .map(|x| {
            a.elements()
                .filter(|&y| y != x && a.leq(y, x))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let mut out = Vec::new();
    let mut order = Vec::with_capacity(n);
    extend(&below, 0, &mut order, &mut out);
    out
}

fn extend(below: &[u64], placed: u64, order: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if order.len() == below.len() {
        out.push(order.clone());
        return;
    }
    for x in 0..below.len() {
        if placed >> x & 1 == 0 && below[x] & !placed == 0 {
            order.push(x);
            extend(below, placed | 1 << x, order, out);
            order.pop();
        }
    }
}

/// What a labelling reveals about the element placed at position `i`: which
/// earlier positions lie below it, where its □ sits (□x ≤ x is already
/// placed), and which placed positions its ∼ pairs it with. The order, □ and
/// ∼ determine every other operation, so equal keys give equal tables.
type Entry = (u64, usize, u64);

fn entry(a: &FiniteAlgebra, order: &[usize], pos: &[Option<usize>], x: usize) -> Entry {
    let i = order.len();
    let below = order
        .iter()
        .enumerate()
        .filter(|&(_, &y)| a.leq(y, x))
        .fold(0u64, |m, (j, _)| m | 1 << j);
    let nec = a.nec(x);
    let box_pos = if nec == x { i } else { pos[nec].expect("□x ≤ x is placed first") };
    let invol = match a.invol(x) {
        Some(y) if y == x => 1u64 << i,
        Some(y) => pos[y].map_or(0, |j| 1u64 << j),
        None => 0,
    };
    (below, box_pos, invol)
}

/// The linear extension with the least sequence of entries. Prefixes are
/// extended level by level, keeping only those whose entries so far are
/// least, so ties come only from partial automorphisms.
pub fn canonical_relabeling(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    let below: Vec<u64> = (0..n)
        .map(|x| {
            a.elements()
                .filter(|&y| y != x && a.leq(y, x))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let mut frontier: Vec<(Vec<usize>, u64)> = vec![(Vec::with_capacity(n), 0)];
    for _ in 0..n {
        let mut best: Option<Entry> = None;
        let mut next = Vec::new();
        for (order, placed) in &frontier {
            let mut pos = vec![None; n];
            for (j, &y) in order.iter().enumerate() {
                pos[y] = Some(j);
            }
            for x in 0..n {
                if placed >> x & 1 == 1 || below[x] & !placed != 0 {
                    continue;
                }
                let e = entry(a, order, &pos, x);
                if best.is_none_or(|b| e < b) {
                    best = Some(e);
                    next.clear();
                }
                if best == Some(e) {
                    let mut o = order.clone();
                    o.push(x);
                    next.push((o, placed | 1 << x));
                }
            }
        }
        frontier = next;
    }
    frontier.swap_remove(0).0
}

/// Canonical representative of the isomorphism class of `a`.
pub fn canonical_form(a: &FiniteAlgebra) -> FiniteAlgebra {
    a.relabel(&canonical_relabeling(a))
}
