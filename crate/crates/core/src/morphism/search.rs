use serde::Serialize;

use crate::algebra::{ElemSet, FiniteAlgebra, Operation};

use super::subalgebra::subalgebra_closure;
use super::{HomError, Homomorphism};

const UNSET: usize = usize::MAX;

/// What `homs` should report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomMode {
    /// First homomorphism found.
    Any,
    /// First onto homomorphism found.
    AnyOnto,
    /// Every homomorphism, sorted lexicographically.
    All,
    /// Number of homomorphisms.
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSearchResult {
    pub homs: Vec<Homomorphism>,
    pub count: usize,
    /// Set when the cap stopped the search before it was exhausted.
    pub truncated: bool,
}

/// Greedy generating set: starting from the constants, repeatedly add the
/// element whose closure grows the most (ties to the smaller index).
pub fn generating_set(a: &FiniteAlgebra) -> Vec<usize> {
    let mut current = subalgebra_closure(a, ElemSet::empty());
    let mut gens = Vec::new();
    while current != a.universe() {
        let (best, closure) = a
            .elements()
            .filter(|&x| !current.contains(x))
            .map(|x| {
                let mut s = current;
                s.insert(x);
                (x, subalgebra_closure(a, s))
            })
            .max_by(|(x1, c1), (x2, c2)| c1.len().cmp(&c2.len()).then(x2.cmp(x1)))
            .expect("closure is not everything");
        gens.push(best);
        current = closure;
    }
    gens
}

/// Backtracking homomorphism search over a generating set of the domain,
/// propagating every forced image through the operation tables.
pub struct HomSearch<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    onto: bool,
    injective: bool,
    allowed: Option<Vec<ElemSet>>,
    cap: Option<usize>,
}

struct State<'s> {
    dom: &'s FiniteAlgebra,
    cod: &'s FiniteAlgebra,
    ops: Vec<Operation>,
    allowed: Option<&'s [ElemSet]>,
    injective: bool,
}

impl State<'_> {
    fn assign(&self, map: &mut [usize], used: &mut [bool], x: usize, v: usize) -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            if map[x] != UNSET {
                if map[x] != v {
                    return false;
                }
                continue;
            }
            if let Some(allowed) = self.allowed {
                if !allowed[x].contains(v) {
                    return false;
                }
            }
            if self.injective {
                if used[v] {
                    return false;
                }
                used[v] = true;
            }
            map[x] = v;
            for &op in &self.ops {
                if op.arity() == 1 {
                    queue.push((self.dom.apply(op, x, 0), self.cod.apply(op, v, 0)));
                } else {
                    for z in self.dom.elements() {
                        let w = map[z];
                        if w == UNSET {
                            continue;
                        }
                        queue.push((self.dom.apply(op, x, z), self.cod.apply(op, v, w)));
                        queue.push((self.dom.apply(op, z, x), self.cod.apply(op, w, v)));
                    }
                }
            }
        }
        true
    }
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a FiniteAlgebra, cod: &'a FiniteAlgebra) -> Self {
        HomSearch {
            dom,
            cod,
            onto: false,
            injective: false,
            allowed: None,
            cap: None,
        }
    }

    pub fn onto(mut self, yes: bool) -> Self {
        self.onto = yes;
        self
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    /// Restricts the image of each domain element.
    pub fn allowed(mut self, allowed: Vec<ElemSet>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn cap(mut self, cap: Option<usize>) -> Self {
        self.cap = cap;
        self
    }

    /// Visits complete homomorphisms in search order until `visit` returns false.
    fn run(&self, visit: &mut dyn FnMut(Vec<usize>) -> bool) -> Result<(), HomError> {
        let (dom, cod) = (self.dom, self.cod);
        if !dom.class().same_kind(&cod.class()) {
            return Err(HomError::ClassMismatch(dom.class().to_string(), cod.class().to_string()));
        }
        if self.onto && cod.size() > dom.size() || self.injective && dom.size() > cod.size() {
            return Ok(());
        }
        let state = State {
            dom,
            cod,
            ops: dom.operations(),
            allowed: self.allowed.as_deref(),
            injective: self.injective,
        };
        let mut map = vec![UNSET; dom.size()];
        let mut used = vec![false; cod.size()];
        if !state.assign(&mut map, &mut used, dom.bottom(), cod.bottom())
            || !state.assign(&mut map, &mut used, dom.top(), cod.top())
        {
            return Ok(());
        }
        let gens = generating_set(dom);
        let mut stop = false;
        self.descend(&state, &gens, map, used, visit, &mut stop);
        Ok(())
    }

    fn descend(
        &self,
        state: &State,
        gens: &[usize],
        map: Vec<usize>,
        used: Vec<bool>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
        stop: &mut bool,
    ) {
        let Some((&g, rest)) = gens.split_first() else {
            debug_assert!(!map.contains(&UNSET), "generators generate");
            if self.onto {
                let mut hit = vec![false; self.cod.size()];
                map.iter().for_each(|&v| hit[v] = true);
                if hit.contains(&false) {
                    return;
                }
            }
            if !visit(map) {
                *stop = true;
            }
            return;
        };
        if map[g] != UNSET {
            return self.descend(state, rest, map, used, visit, stop);
        }
        for v in self.cod.elements() {
            let mut m = map.clone();
            let mut u = used.clone();
            if state.assign(&mut m, &mut u, g, v) {
                self.descend(state, rest, m, u, visit, stop);
                if *stop {
                    return;
                }
            }
        }
    }

    pub fn first(&self) -> Result<Option<Homomorphism>, HomError> {
        let mut found = None;
        self.run(&mut |m| {
            found = Some(m);
            false
        })?;
        Ok(found.map(|m| Homomorphism::trusted(self.cod.size(), m)))
    }

    /// All matches sorted; the flag reports truncation by the cap.
    pub fn all(&self) -> Result<(Vec<Homomorphism>, bool), HomError> {
        let mut out = Vec::new();
        let mut truncated = false;
        let cap = self.cap;
        self.run(&mut |m| {
            if cap.is_some_and(|c| out.len() >= c) {
                truncated = true;
                return false;
            }
            out.push(m);
            true
        })?;
        let mut homs: Vec<Homomorphism> = out
            .into_iter()
            .map(|m| Homomorphism::trusted(self.cod.size(), m))
            .collect();
        homs.sort();
        Ok((homs, truncated))
    }

    pub fn count(&self) -> Result<(usize, bool), HomError> {
        let mut count = 0usize;
        let mut truncated = false;
        let cap = self.cap;
        self.run(&mut |_| {
            if cap.is_some_and(|c| count >= c) {
                truncated = true;
                return false;
            }
            count += 1;
            true
        })?;
        Ok((count, truncated))
    }
}

/// Homomorphisms `a → b` per `mode`. `cap` bounds `All` and `Count`; hitting
/// it sets `truncated`.
pub fn homs(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    mode: HomMode,
    cap: Option<usize>,
) -> Result<HomSearchResult, HomError> {
    let search = HomSearch::new(a, b).cap(cap);
    Ok(match mode {
        HomMode::Any | HomMode::AnyOnto => {
            let homs: Vec<_> = search.onto(mode == HomMode::AnyOnto).first()?.into_iter().collect();
            HomSearchResult {
                count: homs.len(),
                homs,
                truncated: false,
            }
        }
        HomMode::All => {
            let (homs, truncated) = search.all()?;
            HomSearchResult {
                count: homs.len(),
                homs,
                truncated,
            }
        }
        HomMode::Count => {
            let (count, truncated) = search.count()?;
            HomSearchResult {
                homs: Vec::new(),
                count,
                truncated,
            }
        }
    })
}

/// An isomorphism `a → b`, if one exists. Algebras whose open, dense or
/// regular element counts differ are rejected without search.
pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Homomorphism>, HomError> {
    if !a.class().same_kind(&b.class()) {
        return Err(HomError::ClassMismatch(a.class().to_string(), b.class().to_string()));
    }
    let profile = |x: &FiniteAlgebra| {
        let dense = x.elements().filter(|&e| x.neg(e) == 0).count();
        let regular = x.elements().filter(|&e| x.neg(x.neg(e)) == e).count();
        (x.size(), x.open_elements().len(), dense, regular)
    };
    if profile(a) != profile(b) {
        return Ok(None);
    }
    HomSearch::new(a, b).onto(true).injective(true).first()
}
