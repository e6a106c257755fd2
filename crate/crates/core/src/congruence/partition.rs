use serde::Serialize;

use crate::algebra::{FiniteAlgebra, Operation};

/// A partition of `{0..n-1}`, stored as a block label per element with blocks
/// numbered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Normalizes any labelling into the canonical block numbering.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename = std::collections::HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = rename.len();
                *rename.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { labels }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &a in block {
                if a >= n || labels[a] != usize::MAX {
                    return None;
                }
                labels[a] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return None;
        }
        Some(Self::from_labels(&labels))
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    pub fn host_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks sorted by their least element, each block ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (a, &l) in self.labels.iter().enumerate() {
            blocks[l].push(a);
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.labels.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn intersection(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        let mut ids = std::collections::HashMap::new();
        let labels: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let next = ids.len();
                *ids.entry(*p).or_insert(next)
            })
            .collect();
        Self::from_labels(&labels)
    }

    /// Least equivalence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if self.related(a, b) || other.related(a, b) {
                    uf.union(a, b);
                }
            }
        }
        uf.into_congruence()
    }

    /// Whether `self ∘ other = other ∘ self` as relations.
    pub fn permutes_with(&self, other: &Congruence) -> bool {
        let n = self.labels.len();
        let compose = |r: &Congruence, s: &Congruence, a: usize, c: usize| {
            (0..n).any(|b| r.related(a, b) && s.related(b, c))
        };
        (0..n).all(|a| (0..n).all(|c| compose(self, other, a, c) == compose(other, self, a, c)))
    }

    /// First operation entry that breaks compatibility, if any.
    pub fn incompatibility(&self, alg: &FiniteAlgebra) -> Option<(Operation, Vec<usize>)> {
        let blocks = self.blocks();
        for op in alg.operations() {
            if op.arity() == 1 {
                for block in &blocks {
                    let img = self.labels[alg.apply(op, block[0], 0)];
                    if let Some(&a) = block.iter().find(|&&a| self.labels[alg.apply(op, a, 0)] != img) {
                        return Some((op, vec![block[0], a]));
                    }
                }
            } else {
                // Compatible iff each argument position respects the partition.
                for a in alg.elements() {
                    for b in alg.elements() {
                        let v = self.labels[alg.apply(op, a, b)];
                        for &a2 in &blocks[self.labels[a]] {
                            if self.labels[alg.apply(op, a2, b)] != v {
                                return Some((op, vec![a, a2, b]));
                            }
                        }
                        for &b2 in &blocks[self.labels[b]] {
                            if self.labels[alg.apply(op, a, b2)] != v {
                                return Some((op, vec![a, b, b2]));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Least congruence of `alg` containing the given pairs, by closing the
    /// partition under every operation until nothing changes.
    pub fn generated_by(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
        let n = alg.size();
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            let current = uf.clone().into_congruence();
            for op in alg.operations() {
                for a in 0..n {
                    for a2 in 0..n {
                        if !current.related(a, a2) || a == a2 {
                            continue;
                        }
                        if op.arity() == 1 {
                            changed |= uf.union(alg.apply(op, a, 0), alg.apply(op, a2, 0));
                        } else {
                            for b in 0..n {
                                changed |= uf.union(alg.apply(op, a, b), alg.apply(op, a2, b));
                                changed |= uf.union(alg.apply(op, b, a), alg.apply(op, b, a2));
                            }
                        }
                    }
                }
            }
            if !changed {
                return uf.into_congruence();
            }
        }
    }
}

impl Serialize for Congruence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = a;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|a| self.find(a)).collect();
        Congruence::from_labels(&labels)
    }
}
