use super::{AlgebraTables, VarietyClass};

/// Heyting-class tables of the lattice with order `leq` (indices must already
/// put the bottom at 0 and follow a linear extension). Returns `None` if the
/// order is not a lattice.
pub fn heyting_from_order(name: &str, leq: &[Vec<bool>]) -> Option<AlgebraTables> {
    let n = leq.len();
    let lower: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect::<Vec<_>>())
            .map(|lb| greatest(&lb, leq))
            .collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let upper: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect::<Vec<_>>())
            .map(|ub| least(&ub, leq))
            .collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    // a → b = greatest c with c ∧ a ≤ b
    let imp: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let cs: Vec<usize> = (0..n).filter(|&c| leq[lower[c][a]][b]).collect();
                    greatest(&cs, leq)
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    Some(AlgebraTables {
        name: name.to_string(),
        class: VarietyClass::Heyting,
        size: n,
        meet: lower,
        join: upper,
        imp,
        boxes: None,
        invol: None,
        dualneg: None,
        dimpl: None,
    })
}

/// Whether `leq` (with 0 bottom, indices a linear extension) is a
/// distributive lattice order.
pub fn is_distributive_lattice_order(leq: &[Vec<bool>]) -> bool {
    match heyting_from_order("", leq) {
        Some(t) => super::validate(&t).map(|r| r.valid).unwrap_or(false),
        None => false,
    }
}

fn greatest(set: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    set.iter().copied().find(|&g| set.iter().all(|&c| leq[c][g]))
}

fn least(set: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    set.iter().copied().find(|&l| set.iter().all(|&c| leq[l][c]))
}

fn meet_of(t: &AlgebraTables, set: impl Iterator<Item = usize>) -> usize {
    set.fold(t.size - 1, |acc, b| t.meet[acc][b])
}

/// Dual pseudocomplement: least `b` with `a ∨ b = 1`.
pub(crate) fn dual_pseudocomplement(t: &AlgebraTables) -> Vec<usize> {
    let top = t.size - 1;
    (0..t.size)
        .map(|a| meet_of(t, (0..t.size).filter(|&b| t.join[a][b] == top)))
        .collect()
}

/// Dual relative pseudocomplement, row = left argument:
/// `c ⨪ a` = least `b` with `c ≤ a ∨ b`.
pub(crate) fn dual_implication(t: &AlgebraTables) -> Vec<Vec<usize>> {
    let n = t.size;
    (0..n)
        .map(|c| {
            (0..n)
                .map(|a| meet_of(t, (0..n).filter(|&b| t.meet[c][t.join[a][b]] == c)))
                .collect()
        })
        .collect()
}

/// Adds the class-specific tables to Heyting tables. ⌐ and ⨪ are computed;
/// □ (WS5) and ∼ (HRI) must be supplied.
pub(crate) fn with_class(
    mut t: AlgebraTables,
    class: VarietyClass,
    boxes: Option<Vec<usize>>,
    invol: Option<Vec<usize>>,
) -> AlgebraTables {
    t.class = class;
    t.boxes = None;
    t.invol = None;
    t.dualneg = None;
    t.dimpl = None;
    match class {
        VarietyClass::Heyting => {}
        VarietyClass::Ws5 => t.boxes = boxes,
        VarietyClass::Hri => t.invol = invol,
        VarietyClass::Hdp(_) => t.dualneg = Some(dual_pseudocomplement(&t)),
        VarietyClass::Dht(_) => t.dimpl = Some(dual_implication(&t)),
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_leq(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
    }

    #[test]
    fn chain_heyting_tables() {
        let t = heyting_from_order("c3", &chain_leq(3)).unwrap();
        assert_eq!(t.imp, vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 1, 2]]);
        assert!(is_distributive_lattice_order(&chain_leq(5)));
    }

    #[test]
    fn two_element_dimpl() {
        let t = heyting_from_order("2", &chain_leq(2)).unwrap();
        assert_eq!(dual_implication(&t), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(dual_pseudocomplement(&t), vec![1, 0]);
    }

    #[test]
    fn non_lattice_order() {
        // 0 < 1, 2 < 3 < ... with two maximal elements: no top.
        let leq = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        assert!(heyting_from_order("v", &leq).is_none());
    }
}
